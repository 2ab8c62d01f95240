// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocsim/megd.hpp"
#include "ocsim/schedule.hpp"

namespace ocsim {

/// One online experiment: an adversarial dephasing schedule simulated on the
/// GTP, optimized with a fixed learning rate or the rate from the worst-case
/// bound.
struct ExperimentConfig {
  ScheduleSpec schedule;
  LossKind loss = LossKind::TraceDistance;
  double eta = 0.01;
  bool eta_theoretical = false;  // derive eta from horizon and grad bound
  std::optional<double> grad_bound;  // override for the bound's L constant
  double d_const = 2.0;
  int reference_iters = 120;
  double reference_eta_base = 0.01;  // hindsight solver rate = base / T
  std::string output_path;
};

void validate(const ExperimentConfig& cfg);

struct StepRecord {
  int t = 0;  // 1-based
  double p_t = 0.0;
  double loss_online = 0.0;
  double loss_reference = 0.0;
  double cum_online = 0.0;
  double cum_reference = 0.0;
};

struct RunResult {
  std::vector<StepRecord> steps;
  double regret = 0.0;
  double normalized_regret = 0.0;
  // Metadata.
  ExperimentConfig config;        // echo, with schedule as realized
  double eta_used = 0.0;
  double grad_bound_used = 0.0;   // L constant recorded for the run
  double max_grad_norm = 0.0;     // max_t ||g_t||_spectral
  double sum_sq_grad_norm = 0.0;  // sum_t ||g_t||_spectral^2
  Matrix reference_program;       // hindsight program the regret is against
  double wall_seconds = 0.0;
};

/// Runs the online loop: commit the program, reveal the channel, pay the
/// loss, absorb the subgradient. The hindsight reference program is solved
/// afterwards on the realized schedule and the regret accounted per step.
RunResult run_online(const ExperimentConfig& cfg);

/// Best fixed program in hindsight for the realized targets, obtained by
/// batch mirror descent on the summed loss: reference_iters iterations at
/// rate reference_eta_base / T starting from the maximally mixed program.
DensityMatrix solve_reference(const std::vector<ChoiMatrix>& targets,
                              const ExperimentConfig& cfg);

/// Cumulative online loss minus cumulative loss of the fixed reference,
/// and the same divided by the horizon.
std::pair<double, double> compute_regret(
    const std::vector<double>& online_losses,
    const std::vector<double>& reference_losses);

/// Grid experiment over p_max values and seeds, evaluating the normalized
/// regret as a function of the horizon. Cells run in parallel; every cell
/// derives its own seed from the master seed, so results do not depend on
/// thread scheduling.
struct SweepConfig {
  std::vector<double> p_max_values = {0.2, 0.4, 0.6, 0.8};
  double p_min = 0.2;
  int horizon = 150;
  int t_stride = 1;  // horizons t_stride, 2 t_stride, ... up to horizon
  int num_seeds = 5;
  std::uint64_t master_seed = 0;
  LossKind loss = LossKind::TraceDistance;
  double eta = 0.01;
  double d_const = 2.0;
  int reference_iters = 120;
  double reference_eta_base = 0.01;
  int threads = 0;  // 0 = hardware concurrency
};

struct SweepCell {
  double p_max = 0.0;
  int seed_index = 0;
  std::uint64_t schedule_seed = 0;
  std::vector<int> horizons;
  std::vector<double> normalized_regret;  // one value per horizon
  RunResult full_run;                     // run at the full horizon
};

struct SweepCurve {
  double p_max = 0.0;
  std::vector<int> horizons;
  std::vector<double> mean_normalized_regret;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepCell> cells;    // ordered by (p_max index, seed index)
  std::vector<SweepCurve> curves;  // seed-averaged, one per p_max
};

SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace ocsim
