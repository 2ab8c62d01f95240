// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ocsim/report.hpp"

namespace ocsim {

namespace {

struct CommonOpts {
  std::string loss = "trace";
  double p_max = 0.2;
  double p_min = 0.2;
  int horizon = 150;
  std::string eta = "0.01";
  std::uint64_t seed = 0;
  double d_const = 2.0;
  int ref_iters = 120;
  std::string out;
  std::string config_path;
};

// Flat `key = value` config support. The file is expanded into trailing
// `--key value` tokens before parsing, skipping keys already given on the
// command line, so explicit flags always win. Lines starting with '#' are
// comments; values are split on whitespace.
std::vector<std::string> expand_config_args(int argc,
                                            const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw IoError("cannot read config file: " + config_path);

  std::set<std::string> given;
  for (const std::string& a : args)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("config line without '=': " + line);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InvalidInput("config line without key: " + line);
    if (given.count("--" + key) > 0) continue;
    args.push_back("--" + key);
    std::istringstream parts(value);
    std::string token;
    while (parts >> token) args.push_back(token);
  }
  return args;
}

LossKind parse_loss(const std::string& s) {
  if (s == "trace") return LossKind::TraceDistance;
  if (s == "fidelity") return LossKind::Infidelity;
  throw InvalidInput("loss must be 'trace' or 'fidelity'");
}

void apply_eta(const std::string& s, ExperimentConfig& cfg) {
  if (s == "theoretical") {
    cfg.eta_theoretical = true;
    return;
  }
  try {
    std::size_t pos = 0;
    cfg.eta = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw InvalidInput("eta must be a number or 'theoretical'");
  }
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--loss", o.loss, "loss function: trace or fidelity");
  cmd->add_option("--p-max", o.p_max, "upper end of the dephasing interval");
  cmd->add_option("--p-min", o.p_min, "lower end of the dephasing interval");
  cmd->add_option("--horizon", o.horizon, "number of online steps T");
  cmd->add_option("--eta", o.eta, "learning rate, or 'theoretical'");
  cmd->add_option("--seed", o.seed, "schedule seed");
  cmd->add_option("--d-const", o.d_const, "stabilizing constant in the update");
  cmd->add_option("--ref-iters", o.ref_iters,
                  "iterations of the hindsight reference solver");
  cmd->add_option("--out", o.out, "output path");
  cmd->add_option("--config", o.config_path,
                  "flat key=value config file; explicit flags take precedence");
}

ExperimentConfig to_config(const CommonOpts& o) {
  ExperimentConfig cfg;
  cfg.schedule = {ScheduleKind::UniformIid, o.p_min, o.p_max, o.horizon,
                  o.seed, {}};
  cfg.loss = parse_loss(o.loss);
  apply_eta(o.eta, cfg);
  cfg.d_const = o.d_const;
  cfg.reference_iters = o.ref_iters;
  return cfg;
}

int cmd_run(const CommonOpts& o) {
  ExperimentConfig cfg = to_config(o);
  cfg.output_path = o.out;
  const RunResult r = run_online(cfg);
  std::printf("horizon=%zu loss=%s eta=%.17g seed=%llu\n", r.steps.size(),
              o.loss.c_str(), r.eta_used,
              static_cast<unsigned long long>(o.seed));
  std::printf("regret=%.17g normalized_regret=%.17g\n", r.regret,
              r.normalized_regret);
  std::printf("grad_bound=%.17g max_grad_norm=%.17g wall=%.3fs\n",
              r.grad_bound_used, r.max_grad_norm, r.wall_seconds);
  if (!o.out.empty()) {
    emit_csv(r, o.out);
    std::printf("wrote %s\n", o.out.c_str());
  }
  return 0;
}

int cmd_reference(const CommonOpts& o) {
  ExperimentConfig cfg = to_config(o);
  const std::vector<double> ps = gen_schedule(cfg.schedule);
  std::vector<ChoiMatrix> targets;
  targets.reserve(ps.size());
  for (double p : ps) targets.push_back(choi_of_channel(dephasing_channel(p)));
  const DensityMatrix ref = solve_reference(targets, cfg);
  const Matrix ref_choi = GtpProcessor().forward(ref.matrix());
  double sum = 0.0;
  for (const ChoiMatrix& t : targets)
    sum += detail::loss_value(cfg.loss, t.matrix(), ref_choi);
  std::printf("reference mean loss over %zu steps: %.17g\n", targets.size(),
              sum / static_cast<double>(targets.size()));
  if (!o.out.empty()) {
    emit_matrix_csv(ref.matrix(), o.out);
    std::printf("wrote %s\n", o.out.c_str());
  }
  return 0;
}

struct SweepOpts {
  CommonOpts common;
  std::vector<double> p_max_values;
  int num_seeds = 5;
  int t_stride = 1;
  int threads = 0;
};

int cmd_sweep(const SweepOpts& o) {
  SweepConfig cfg;
  if (!o.p_max_values.empty()) cfg.p_max_values = o.p_max_values;
  cfg.p_min = o.common.p_min;
  cfg.horizon = o.common.horizon;
  cfg.t_stride = o.t_stride;
  cfg.num_seeds = o.num_seeds;
  cfg.master_seed = o.common.seed;
  cfg.loss = parse_loss(o.common.loss);
  {
    ExperimentConfig tmp;
    apply_eta(o.common.eta, tmp);
    if (tmp.eta_theoretical)
      throw InvalidInput("sweep requires a numeric eta");
    cfg.eta = tmp.eta;
  }
  cfg.d_const = o.common.d_const;
  cfg.reference_iters = o.common.ref_iters;
  cfg.threads = o.threads;
  const std::string dir = o.common.out.empty() ? "sweep_out" : o.common.out;
  const SweepResult sweep = run_sweep(cfg);
  write_sweep_outputs(sweep, dir);
  for (const SweepCurve& c : sweep.curves)
    std::printf("p_max=%.17g normalized_regret(T=%d)=%.17g\n", c.p_max,
                c.horizons.back(), c.mean_normalized_regret.back());
  std::printf("wrote sweep outputs to %s\n", dir.c_str());
  return 0;
}

struct CertifyOpts {
  std::vector<int> horizons = {10, 50, 150};
  std::vector<double> p_max_values = {0.2, 0.4, 0.6, 0.8};
  int num_seeds = 10;
  int ref_iters = 120;
  double d_const = 2.0;
};

bool report(const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name,
              detail.empty() ? "" : ": ", detail.c_str());
  return ok;
}

int cmd_certify(const CertifyOpts& o) {
  bool all_ok = true;
  char buf[160];

  // Structural checks on the processor maps.
  {
    SplitMix64 rng(11);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Matrix pi = random_density(4, rng);
      const Matrix x = random_hermitian(4, rng);
      const double lhs = (gtp_lambda_dual(pi) * x).trace().real();
      const double rhs = (pi * gtp_lambda_dual(x)).trace().real();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    std::snprintf(buf, sizeof(buf), "max deviation %.3g", worst);
    all_ok &= report("processor duality", worst <= 1e-10, buf);
  }
  {
    SplitMix64 rng(12);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const DensityMatrix pi(2, random_density(4, rng));
      worst = std::max(worst, trace_loss(gtp_lambda(pi), choi_of_simulated(pi)));
    }
    std::snprintf(buf, sizeof(buf), "max trace distance %.3g", worst);
    all_ok &= report("circuit/twirl agreement", worst <= 1e-10, buf);
  }
  {
    // The stabilizing constant must not leak into the program.
    SplitMix64 rng(13);
    double worst = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      MegdState a(2, 0.05, 0.0), b(2, 0.05, 2.0), c(2, 0.05, 10.0);
      for (int t = 0; t < 20; ++t) {
        const Matrix g = random_hermitian(4, rng);
        a = a.step(g);
        b = b.step(g);
        c = c.step(g);
      }
      const Matrix pa = a.current_program().matrix();
      worst = std::max(worst,
                       (pa - b.current_program().matrix()).cwiseAbs().maxCoeff());
      worst = std::max(worst,
                       (pa - c.current_program().matrix()).cwiseAbs().maxCoeff());
    }
    std::snprintf(buf, sizeof(buf), "max deviation %.3g", worst);
    all_ok &= report("stabilizer invariance", worst <= 1e-12, buf);
  }

  // Worst-case bound at the tuned rate, and the rate-free chain bound.
  {
    double worst_margin = -1e300;
    double worst_chain = -1e300;
    bool bound_ok = true, chain_ok = true;
    for (int horizon : o.horizons) {
      const double bound = regret_bound({horizon, 1.0, 2});
      for (double p_max : o.p_max_values) {
        for (int seed = 0; seed < o.num_seeds; ++seed) {
          ExperimentConfig cfg;
          cfg.schedule = {ScheduleKind::UniformIid, 0.2, p_max, horizon,
                          static_cast<std::uint64_t>(seed), {}};
          cfg.eta_theoretical = true;
          cfg.d_const = o.d_const;
          cfg.reference_iters = o.ref_iters;
          const RunResult r = run_online(cfg);
          bound_ok &= r.regret <= bound + 1e-9;
          worst_margin = std::max(worst_margin, r.regret - bound);

          ExperimentConfig cfg2 = cfg;
          cfg2.eta_theoretical = false;
          cfg2.eta = 0.01;
          const RunResult r2 = run_online(cfg2);
          const double chain = 2.0 * std::numbers::ln2 / cfg2.eta +
                               0.5 * cfg2.eta * r2.sum_sq_grad_norm;
          chain_ok &= r2.regret <= chain + 1e-9;
          worst_chain = std::max(worst_chain, r2.regret - chain);
        }
      }
    }
    std::snprintf(buf, sizeof(buf), "worst regret-bound margin %.3g",
                  worst_margin);
    all_ok &= report("worst-case regret bound", bound_ok, buf);
    std::snprintf(buf, sizeof(buf), "worst chain-bound margin %.3g",
                  worst_chain);
    all_ok &= report("regret chain bound (eta=0.01)", chain_ok, buf);
  }

  std::printf("%s\n", all_ok ? "certification passed" : "certification FAILED");
  return all_ok ? 0 : 2;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"online simulation of time-varying quantum channels on a "
               "programmable teleportation processor"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run_cmd =
      app.add_subcommand("run", "run one online experiment and write its CSV");
  add_common(run_cmd, run_opts);

  SweepOpts sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "grid over p_max and seeds; writes CSVs and an SVG chart");
  add_common(sweep_cmd, sweep_opts.common);
  sweep_cmd->add_option("--p-max-grid", sweep_opts.p_max_values,
                        "p_max grid (default 0.2 0.4 0.6 0.8)");
  sweep_cmd->add_option("--seeds", sweep_opts.num_seeds,
                        "number of seeds per cell");
  sweep_cmd->add_option("--t-stride", sweep_opts.t_stride,
                        "stride of the horizon grid");
  sweep_cmd->add_option("--threads", sweep_opts.threads,
                        "worker threads (0 = all cores)");

  CertifyOpts certify_opts;
  CLI::App* certify_cmd = app.add_subcommand(
      "certify", "run the invariant and regret-bound certification suite");
  certify_cmd->add_option("--horizons", certify_opts.horizons,
                          "horizons to certify");
  certify_cmd->add_option("--p-max-grid", certify_opts.p_max_values,
                          "p_max grid");
  certify_cmd->add_option("--seeds", certify_opts.num_seeds,
                          "seeds per grid point");
  certify_cmd->add_option("--ref-iters", certify_opts.ref_iters,
                          "reference solver iterations");
  std::string certify_config;
  certify_cmd->add_option("--config", certify_config,
                          "flat key=value config file");

  CommonOpts ref_opts;
  CLI::App* ref_cmd = app.add_subcommand(
      "reference", "solve the hindsight-optimal program only");
  add_common(ref_cmd, ref_opts);

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes back to front
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_opts);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts);
    if (certify_cmd->parsed()) return cmd_certify(certify_opts);
    if (ref_cmd->parsed()) return cmd_reference(ref_opts);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace ocsim
