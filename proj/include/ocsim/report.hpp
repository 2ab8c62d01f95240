// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "ocsim/experiment.hpp"

namespace ocsim {

/// Writes the per-step record of a run as UTF-8 CSV with LF line endings and
/// 17 significant digits (lossless double round trip). Columns:
///   t,p_t,loss_online,loss_reference,cum_online,cum_reference,
///   regret_to_t,normalized_regret_to_t
void emit_csv(const RunResult& r, const std::string& path);

/// One labeled polyline of a chart.
struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

/// Renders a static SVG line chart (x = horizon, y = normalized regret, one
/// legend entry per series). Pure rendering; no computation on the data.
void emit_plot(const std::vector<PlotSeries>& series, const std::string& path);

/// Convenience overload: each group of runs becomes one series of
/// (horizon, normalized regret) points, labeled with the group's p_max.
void emit_plot(const std::vector<std::vector<RunResult>>& grouped_by_p_max,
               const std::string& path);

/// Writes all sweep artifacts into a directory: one per-cell run CSV
/// (run_pmax<P>_seed<S>.csv), the per-cell curve table (sweep_cells.csv),
/// the seed-averaged curves (sweep_mean.csv) and the chart (sweep.svg).
void write_sweep_outputs(const SweepResult& sweep, const std::string& dir);

/// Writes a complex matrix as CSV rows `row,col,re,im`.
void emit_matrix_csv(const Matrix& m, const std::string& path);

}  // namespace ocsim
