// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace ocsim {

namespace {

std::vector<ChoiMatrix> dephasing_targets(const std::vector<double>& ps) {
  std::vector<ChoiMatrix> targets;
  targets.reserve(ps.size());
  for (double p : ps) targets.push_back(choi_of_channel(dephasing_channel(p)));
  return targets;
}

struct LoopTrace {
  std::vector<double> losses;
  double max_grad_norm = 0.0;
  double sum_sq_grad_norm = 0.0;
};

// Algorithm loop: the program is committed before the step's channel is
// revealed, then the loss is paid and the subgradient absorbed.
LoopTrace online_loop(const std::vector<ChoiMatrix>& targets, LossKind kind,
                      double eta, double d_const) {
  const GtpProcessor proc;
  MegdState state(proc.program_qubits(), eta, d_const);
  LoopTrace trace;
  trace.losses.reserve(targets.size());
  for (const ChoiMatrix& target : targets) {
    const DensityMatrix pi = state.current_program();
    const LossEvaluation ev = evaluate_loss(kind, target, proc, pi);
    trace.losses.push_back(ev.value);
    const double gn = spectral_norm(ev.hermitian_subgradient);
    trace.max_grad_norm = std::max(trace.max_grad_norm, gn);
    trace.sum_sq_grad_norm += gn * gn;
    state = state.step(ev);
  }
  return trace;
}

std::vector<double> reference_losses(const std::vector<ChoiMatrix>& targets,
                                     LossKind kind,
                                     const Matrix& reference_choi) {
  std::vector<double> out;
  out.reserve(targets.size());
  for (const ChoiMatrix& target : targets)
    out.push_back(detail::loss_value(kind, target.matrix(), reference_choi));
  return out;
}

int hardware_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (!cfg.eta_theoretical && !(cfg.eta > 0.0))
    throw InvalidRate("ExperimentConfig: eta must be positive");
  if (cfg.reference_iters < 1)
    throw InvalidInput("ExperimentConfig: reference_iters must be >= 1");
  if (!(cfg.reference_eta_base > 0.0))
    throw InvalidRate("ExperimentConfig: reference_eta_base must be positive");
  if (cfg.grad_bound && !(*cfg.grad_bound > 0.0))
    throw InvalidInput("ExperimentConfig: grad_bound must be positive");
}

RunResult run_online(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> ps = gen_schedule(cfg.schedule);
  const int horizon = static_cast<int>(ps.size());
  const std::vector<ChoiMatrix> targets = dephasing_targets(ps);

  // The L constant: derived bound for the trace loss, estimated from a
  // calibration pass for the infidelity loss (no closed form is available).
  double grad_bound = 1.0;
  if (cfg.grad_bound) {
    grad_bound = *cfg.grad_bound;
  } else if (cfg.loss == LossKind::Infidelity) {
    const LoopTrace calib =
        online_loop(targets, cfg.loss, 0.01, cfg.d_const);
    grad_bound = std::max(calib.max_grad_norm, 1e-12);
  }
  const double eta_used =
      cfg.eta_theoretical
          ? theoretical_eta({horizon, grad_bound, 2})
          : cfg.eta;

  const LoopTrace trace = online_loop(targets, cfg.loss, eta_used, cfg.d_const);
  const DensityMatrix reference = solve_reference(targets, cfg);
  const Matrix reference_choi = GtpProcessor().forward(reference.matrix());
  const std::vector<double> ref_losses =
      reference_losses(targets, cfg.loss, reference_choi);
  const auto [regret, normalized] = compute_regret(trace.losses, ref_losses);

  RunResult result;
  result.steps.resize(static_cast<std::size_t>(horizon));
  double cum_online = 0.0;
  double cum_reference = 0.0;
  for (int t = 0; t < horizon; ++t) {
    cum_online += trace.losses[static_cast<std::size_t>(t)];
    cum_reference += ref_losses[static_cast<std::size_t>(t)];
    StepRecord& rec = result.steps[static_cast<std::size_t>(t)];
    rec.t = t + 1;
    rec.p_t = ps[static_cast<std::size_t>(t)];
    rec.loss_online = trace.losses[static_cast<std::size_t>(t)];
    rec.loss_reference = ref_losses[static_cast<std::size_t>(t)];
    rec.cum_online = cum_online;
    rec.cum_reference = cum_reference;
  }
  result.regret = regret;
  result.normalized_regret = normalized;
  result.config = cfg;
  result.eta_used = eta_used;
  result.grad_bound_used = grad_bound;
  result.max_grad_norm = trace.max_grad_norm;
  result.sum_sq_grad_norm = trace.sum_sq_grad_norm;
  result.reference_program = reference.matrix();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

DensityMatrix solve_reference(const std::vector<ChoiMatrix>& targets,
                              const ExperimentConfig& cfg) {
  if (targets.empty())
    throw LengthMismatch("solve_reference: empty target list");
  const int horizon = static_cast<int>(targets.size());
  const GtpProcessor proc;
  // Batch mirror descent on the summed loss; the rate base/T on the summed
  // subgradient equals rate base on the mean subgradient.
  MegdState state(proc.program_qubits(), cfg.reference_eta_base / horizon,
                  cfg.d_const);
  const Eigen::Index d = state.dim();
  for (int iter = 0; iter < cfg.reference_iters; ++iter) {
    const DensityMatrix pi = state.current_program();
    Matrix summed = Matrix::Zero(d, d);
    for (const ChoiMatrix& target : targets)
      summed += evaluate_loss(cfg.loss, target, proc, pi).hermitian_subgradient;
    state = state.step(summed);
  }
  return state.current_program();
}

std::pair<double, double> compute_regret(
    const std::vector<double>& online_losses,
    const std::vector<double>& reference_losses) {
  if (online_losses.size() != reference_losses.size())
    throw LengthMismatch("compute_regret: loss column length mismatch");
  if (online_losses.empty())
    throw LengthMismatch("compute_regret: empty loss columns");
  double cum_online = 0.0;
  double cum_reference = 0.0;
  for (std::size_t i = 0; i < online_losses.size(); ++i) {
    cum_online += online_losses[i];
    cum_reference += reference_losses[i];
  }
  const double regret = cum_online - cum_reference;
  return {regret, regret / static_cast<double>(online_losses.size())};
}

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.horizon < 1) throw InvalidRange("run_sweep: horizon must be >= 1");
  if (cfg.t_stride < 1) throw InvalidRange("run_sweep: t_stride must be >= 1");
  if (cfg.num_seeds < 1) throw InvalidRange("run_sweep: num_seeds must be >= 1");
  if (cfg.p_max_values.empty())
    throw InvalidRange("run_sweep: no p_max values");

  std::vector<int> horizons;
  for (int h = cfg.t_stride; h <= cfg.horizon; h += cfg.t_stride)
    horizons.push_back(h);
  if (horizons.empty() || horizons.back() != cfg.horizon)
    horizons.push_back(cfg.horizon);

  const std::size_t n_cells =
      cfg.p_max_values.size() * static_cast<std::size_t>(cfg.num_seeds);
  std::vector<SweepCell> cells(n_cells);

  const auto compute_cell = [&](std::size_t idx) {
    const std::size_t i_p = idx / static_cast<std::size_t>(cfg.num_seeds);
    const int i_s = static_cast<int>(idx % static_cast<std::size_t>(cfg.num_seeds));
    SweepCell& cell = cells[idx];
    cell.p_max = cfg.p_max_values[i_p];
    cell.seed_index = i_s;
    cell.schedule_seed = SplitMix64::split(cfg.master_seed, idx);
    cell.horizons = horizons;

    ExperimentConfig run_cfg;
    run_cfg.schedule = {ScheduleKind::UniformIid, cfg.p_min, cell.p_max,
                        cfg.horizon, cell.schedule_seed, {}};
    run_cfg.loss = cfg.loss;
    run_cfg.eta = cfg.eta;
    run_cfg.d_const = cfg.d_const;
    run_cfg.reference_iters = cfg.reference_iters;
    run_cfg.reference_eta_base = cfg.reference_eta_base;
    cell.full_run = run_online(run_cfg);

    // Hindsight reference per window length: each horizon h gets its own
    // reference program solved on the first h targets.
    const std::vector<double> ps = gen_schedule(run_cfg.schedule);
    const std::vector<ChoiMatrix> targets = dephasing_targets(ps);
    cell.normalized_regret.reserve(horizons.size());
    for (int h : horizons) {
      const std::vector<ChoiMatrix> window(targets.begin(),
                                           targets.begin() + h);
      const DensityMatrix ref = solve_reference(window, run_cfg);
      const Matrix ref_choi = GtpProcessor().forward(ref.matrix());
      double ref_sum = 0.0;
      for (const ChoiMatrix& target : window)
        ref_sum += detail::loss_value(cfg.loss, target.matrix(), ref_choi);
      const double cum_online =
          cell.full_run.steps[static_cast<std::size_t>(h - 1)].cum_online;
      cell.normalized_regret.push_back((cum_online - ref_sum) / h);
    }
  };

  const int n_threads =
      std::min<int>(hardware_threads(cfg.threads), static_cast<int>(n_cells));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n_cells; ++i) compute_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n_cells;
             i = next.fetch_add(1))
          compute_cell(i);
      });
    }
    for (std::thread& w : workers) w.join();
  }

  SweepResult result;
  result.config = cfg;
  result.cells = std::move(cells);
  for (std::size_t i_p = 0; i_p < cfg.p_max_values.size(); ++i_p) {
    SweepCurve curve;
    curve.p_max = cfg.p_max_values[i_p];
    curve.horizons = horizons;
    curve.mean_normalized_regret.assign(horizons.size(), 0.0);
    for (int i_s = 0; i_s < cfg.num_seeds; ++i_s) {
      const SweepCell& cell =
          result.cells[i_p * static_cast<std::size_t>(cfg.num_seeds) +
                       static_cast<std::size_t>(i_s)];
      for (std::size_t k = 0; k < horizons.size(); ++k)
        curve.mean_normalized_regret[k] += cell.normalized_regret[k];
    }
    for (double& v : curve.mean_normalized_regret) v /= cfg.num_seeds;
    result.curves.push_back(std::move(curve));
  }
  return result;
}

}  // namespace ocsim
