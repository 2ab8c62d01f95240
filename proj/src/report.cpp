// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace ocsim {

namespace {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

void emit_csv(const RunResult& r, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "t,p_t,loss_online,loss_reference,cum_online,cum_reference,"
         "regret_to_t,normalized_regret_to_t\n";
  for (const StepRecord& s : r.steps) {
    const double regret_to_t = s.cum_online - s.cum_reference;
    out << s.t << ',' << fmt_g17(s.p_t) << ',' << fmt_g17(s.loss_online)
        << ',' << fmt_g17(s.loss_reference) << ',' << fmt_g17(s.cum_online)
        << ',' << fmt_g17(s.cum_reference) << ',' << fmt_g17(regret_to_t)
        << ',' << fmt_g17(regret_to_t / s.t) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void emit_plot(const std::vector<PlotSeries>& series,
               const std::string& path) {
  if (series.empty()) throw InvalidInput("emit_plot: no series");
  for (const PlotSeries& s : series)
    if (s.points.empty())
      throw InvalidInput("emit_plot: series without points: " + s.label);

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min, y_min = x_min, y_max = -x_min;
  for (const PlotSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double width = 800, height = 520;
  const double ml = 80, mr = 160, mt = 30, mb = 60;
  const double pw = width - ml - mr, ph = height - mt - mb;
  const auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  const auto sy = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  const int n_ticks = 5;
  for (int i = 0; i <= n_ticks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / n_ticks;
    const double fy = y_min + (y_max - y_min) * i / n_ticks;
    svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << mt + ph << "\" x2=\""
        << sx(fx) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(fx) << "\" y=\"" << mt + ph + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt_g6(fx)
        << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << ml
        << "\" y2=\"" << sy(fy) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << sy(fy) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt_g6(fy)
        << "</text>\n";
  }
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 15
      << "\" font-size=\"14\" text-anchor=\"middle\">horizon T</text>\n";
  svg << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << mt + ph / 2 << ")\">normalized regret</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[i].points)
      svg << fmt_g6(sx(x)) << ',' << fmt_g6(sy(y)) << ' ';
    svg << "\"/>\n";
    const double ly = mt + 16 + 18 * static_cast<double>(i);
    svg << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw + 36 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << ml + pw + 42 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << series[i].label << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out = open_out(path);
  out << svg.str();
  if (!out) throw IoError("write failed: " + path);
}

void emit_plot(const std::vector<std::vector<RunResult>>& grouped_by_p_max,
               const std::string& path) {
  if (grouped_by_p_max.empty()) throw InvalidInput("emit_plot: no groups");
  std::vector<PlotSeries> series;
  for (const auto& group : grouped_by_p_max) {
    if (group.empty()) throw InvalidInput("emit_plot: empty group");
    PlotSeries s;
    s.label = "p_max=" + fmt_g6(group.front().config.schedule.p_max);
    for (const RunResult& r : group)
      s.points.emplace_back(static_cast<double>(r.steps.size()),
                            r.normalized_regret);
    series.push_back(std::move(s));
  }
  emit_plot(series, path);
}

void write_sweep_outputs(const SweepResult& sweep, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory: " + dir);
  const std::filesystem::path base(dir);

  for (const SweepCell& cell : sweep.cells) {
    std::ostringstream name;
    name << "run_pmax" << fmt_g6(cell.p_max) << "_seed" << cell.seed_index
         << ".csv";
    emit_csv(cell.full_run, (base / name.str()).string());
  }

  {
    std::ofstream out = open_out((base / "sweep_cells.csv").string());
    out << "p_max,seed,T,normalized_regret\n";
    for (const SweepCell& cell : sweep.cells)
      for (std::size_t k = 0; k < cell.horizons.size(); ++k)
        out << fmt_g17(cell.p_max) << ',' << cell.seed_index << ','
            << cell.horizons[k] << ',' << fmt_g17(cell.normalized_regret[k])
            << '\n';
    if (!out) throw IoError("write failed: sweep_cells.csv");
  }

  {
    std::ofstream out = open_out((base / "sweep_mean.csv").string());
    out << "p_max,T,normalized_regret_mean\n";
    for (const SweepCurve& curve : sweep.curves)
      for (std::size_t k = 0; k < curve.horizons.size(); ++k)
        out << fmt_g17(curve.p_max) << ',' << curve.horizons[k] << ','
            << fmt_g17(curve.mean_normalized_regret[k]) << '\n';
    if (!out) throw IoError("write failed: sweep_mean.csv");
  }

  std::vector<PlotSeries> series;
  for (const SweepCurve& curve : sweep.curves) {
    PlotSeries s;
    s.label = "p_max=" + fmt_g6(curve.p_max);
    for (std::size_t k = 0; k < curve.horizons.size(); ++k)
      s.points.emplace_back(curve.horizons[k],
                            curve.mean_normalized_regret[k]);
    series.push_back(std::move(s));
  }
  emit_plot(series, (base / "sweep.svg").string());
}

void emit_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << i << ',' << j << ',' << fmt_g17(m(i, j).real()) << ','
          << fmt_g17(m(i, j).imag()) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace ocsim
