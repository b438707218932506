#include "fmb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

#include "fmb/csv.hpp"
#include "fmb/errors.hpp"
#include "fmb/plot.hpp"
#include "fmb/random.hpp"

#ifndef FMB_VERSION
#define FMB_VERSION "0.0.0"
#endif

namespace fmb {

namespace {

LqgModel nominal_model(const SweepConfig& config) {
  return double_integrator(config.dt, config.sigma_w,
                           Eigen::Matrix<double, 1, 1>::Constant(config.sigma_v), config.q,
                           Eigen::Matrix<double, 1, 1>::Constant(config.r),
                           GaussianBelief(config.prior_mean, config.prior_cov), config.gamma);
}

int worker_count(const SweepConfig& config) {
  int jobs = config.jobs;
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<long>(jobs, config.seeds));
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
}

void write_echo(const SweepConfig& config, const std::filesystem::path& out_dir) {
  write_text(out_dir / "config.echo.txt",
             std::string("# fmb ") + version_string() + "\n" + config.echo());
}

std::string optional_number(bool present, double value) {
  return present ? format_double(value) : std::string();
}

void write_figures(const SweepReport& report, const std::filesystem::path& out_dir) {
  {
    PlotSpec spec{"Belief mismatch vs memory length", "memory length H",
                  "sup_t mean W2 (log scale)", false, true, {}};
    PlotSeries eps{"eps_hat +/- SE", {}, {}, {}, {}, true, true};
    for (const auto& row : report.rows) {
      eps.x.push_back(static_cast<double>(row.H));
      eps.y.push_back(row.eps_mean);
      eps.lower.push_back(row.eps_mean - row.eps_stderr);
      eps.upper.push_back(row.eps_mean + row.eps_stderr);
    }
    spec.series.push_back(std::move(eps));
    if (report.decay) {
      PlotSeries fit{"log-linear fit", {}, {}, {}, {}, false, true};
      for (const long h : report.decay->used) {
        fit.x.push_back(static_cast<double>(h));
        fit.y.push_back(std::exp(report.decay->log_intercept +
                                 report.decay->slope * static_cast<double>(h)));
      }
      spec.series.push_back(std::move(fit));
    }
    auto out = open_output(out_dir / "fig1_eps_vs_H.svg");
    write_svg(out, spec);
  }
  {
    PlotSpec spec{"Cost gap vs belief mismatch", "eps_hat (log scale)", "|J - J_H| (log scale)",
                  true, true, {}};
    PlotSeries pts{"per-H estimate", {}, {}, {}, {}, true, false};
    for (const auto& row : report.rows) {
      pts.x.push_back(row.eps_mean);
      pts.y.push_back(row.gap);
    }
    spec.series.push_back(pts);
    if (report.scaling) {
      PlotSeries fit{"log-log fit", {}, {}, {}, {}, false, true};
      std::vector<double> xs;
      for (const double x : pts.x) {
        if (x > 1e-12) xs.push_back(x);
      }
      std::sort(xs.begin(), xs.end());
      for (const double x : xs) {
        fit.x.push_back(x);
        fit.y.push_back(std::exp(report.scaling->intercept + report.scaling->slope * std::log(x)));
      }
      spec.series.push_back(std::move(fit));
    }
    auto out = open_output(out_dir / "fig2_gap_vs_eps.svg");
    write_svg(out, spec);
  }
  {
    PlotSpec spec{"Mismatch over time", "time step t", "mean W2 +/- SE", false, false, {}};
    for (const auto& est : report.estimates) {
      if (est.memory == 0 || est.epsilon_hat <= 0.0) continue;
      PlotSeries s{"H = " + std::to_string(est.memory), {}, {}, {}, {}, false, true};
      for (std::size_t t = 0; t < est.per_time_mean.size(); ++t) {
        s.x.push_back(static_cast<double>(t));
        s.y.push_back(est.per_time_mean[t]);
        s.lower.push_back(est.per_time_mean[t] - est.per_time_stderr[t]);
        s.upper.push_back(est.per_time_mean[t] + est.per_time_stderr[t]);
      }
      spec.series.push_back(std::move(s));
    }
    auto out = open_output(out_dir / "fig3_w2_time.svg");
    write_svg(out, spec);
  }
}

}  // namespace

const char* version_string() { return FMB_VERSION; }

LqgModel build_model(const SweepConfig& config) {
  LqgModel model = nominal_model(config);
  model.B *= config.input_scale;
  return make_model(std::move(model));
}

LqrGain build_gain(const SweepConfig& config) {
  const LqgModel nominal = nominal_model(config);
  return config.gain_mode == GainMode::kLqr ? lqr_gain(nominal) : zero_gain(nominal);
}

std::vector<TrajectoryRecord> run_rollouts(const SweepConfig& config, bool obs_only) {
  config.validate();
  const LqgModel model = build_model(config);
  const LqrGain gain = build_gain(config);
  const auto count = static_cast<std::size_t>(config.seeds);

  std::vector<TrajectoryRecord> records(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const RolloutOptions options{obs_only};
  const auto work = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        records[k] = rollout(model, gain, config.memory_lengths, config.horizon,
                             derive_seed(config.root_seed, k), options);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  const int workers = worker_count(config);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

SweepReport summarize_sweep(const SweepConfig& config, const LqgModel& model,
                            const std::vector<TrajectoryRecord>& records) {
  SweepReport report;
  report.config_echo = config.echo();
  report.version = version_string();
  report.costs = cost_report(model, records, config.memory_lengths, config.horizon);

  std::vector<std::pair<long, double>> decay_points;
  std::vector<std::pair<double, double>> scaling_points;
  for (const long h : config.memory_lengths) {
    MismatchEstimate est = estimate_epsilon(records, h, config.burn_in);
    SweepRow row;
    row.H = h;
    row.eps_mean = est.epsilon_hat;
    row.eps_stderr = est.epsilon_stderr;
    row.J_true = report.costs.J;
    row.J_fm = report.costs.J_hat.at(h);
    row.gap = report.costs.gap.at(h);
    report.rows.push_back(row);
    report.estimates.push_back(std::move(est));
    decay_points.emplace_back(h, row.eps_mean);
    scaling_points.emplace_back(row.eps_mean, row.gap);
  }

  try {
    report.decay = fit_exponential_decay(decay_points);
  } catch (const InsufficientDataError& e) {
    report.decay_error = e.what();
  }
  try {
    report.scaling = fit_gap_scaling(scaling_points);
  } catch (const InsufficientDataError& e) {
    report.scaling_error = e.what();
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "H,eps_mean,eps_stderr,J_true,J_fm,gap\n";
  for (const auto& r : report.rows) {
    out << r.H << ',' << format_double(r.eps_mean) << ',' << format_double(r.eps_stderr) << ','
        << format_double(r.J_true) << ',' << format_double(r.J_fm) << ','
        << format_double(r.gap) << '\n';
  }
}

void write_timeprofile_csv(std::ostream& out, const SweepReport& report) {
  out << 't';
  for (const auto& est : report.estimates) out << ",w2_H" << est.memory;
  out << '\n';
  const std::size_t steps =
      report.estimates.empty() ? 0 : report.estimates.front().per_time_mean.size();
  for (std::size_t t = 0; t < steps; ++t) {
    out << t;
    for (const auto& est : report.estimates) out << ',' << format_double(est.per_time_mean[t]);
    out << '\n';
  }
}

void write_fits_csv(std::ostream& out, const SweepReport& report) {
  out << "fit,slope,intercept,rho_hat,r_squared\n";
  const bool d = report.decay.has_value();
  const DecayFit decay = report.decay.value_or(DecayFit{});
  out << "decay," << optional_number(d, decay.slope) << ','
      << optional_number(d, decay.log_intercept) << ',' << optional_number(d, decay.rho_hat)
      << ',' << optional_number(d, decay.r_squared) << '\n';
  const bool s = report.scaling.has_value();
  const ScalingFit scaling = report.scaling.value_or(ScalingFit{});
  out << "gap_scaling," << optional_number(s, scaling.slope) << ','
      << optional_number(s, scaling.intercept) << ",," << optional_number(s, scaling.r_squared)
      << '\n';
}

void write_prop1_csv(std::ostream& out, const std::vector<PairedComparison>& rows) {
  out << "H,io_mean,obs_only_mean,diff_mean,diff_stderr\n";
  for (const auto& r : rows) {
    out << r.memory << ',' << format_double(r.io_mean) << ',' << format_double(r.obs_only_mean)
        << ',' << format_double(r.diff_mean) << ',' << format_double(r.diff_stderr) << '\n';
  }
}

SweepReport run_sweep(const SweepConfig& config, const std::filesystem::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  std::filesystem::create_directories(out_dir);

  const std::vector<TrajectoryRecord> records = run_rollouts(config, false);
  SweepReport report = summarize_sweep(config, build_model(config), records);

  {
    auto out = open_output(out_dir / "sweep.csv");
    write_sweep_csv(out, report);
  }
  {
    auto out = open_output(out_dir / "timeprofile.csv");
    write_timeprofile_csv(out, report);
  }
  {
    auto out = open_output(out_dir / "fits.csv");
    write_fits_csv(out, report);
  }
  write_echo(config, out_dir);
  if (config.plots) write_figures(report, out_dir);

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<PairedComparison> run_prop1_demo(const SweepConfig& config,
                                             const std::filesystem::path& out_dir) {
  config.validate();
  std::filesystem::create_directories(out_dir);
  const std::vector<TrajectoryRecord> records = run_rollouts(config, true);
  std::vector<PairedComparison> rows;
  for (const long h : config.memory_lengths) {
    rows.push_back(compare_input_necessity(records, h));
  }
  auto out = open_output(out_dir / "prop1.csv");
  write_prop1_csv(out, rows);
  write_echo(config, out_dir);
  return rows;
}

std::vector<std::filesystem::path> run_rollout_dump(const SweepConfig& config,
                                                    const std::filesystem::path& out_dir) {
  config.validate();
  std::filesystem::create_directories(out_dir);
  const std::vector<TrajectoryRecord> records = run_rollouts(config, false);
  std::vector<std::filesystem::path> paths;
  for (std::size_t k = 0; k < records.size(); ++k) {
    paths.push_back(out_dir / ("rollout_" + std::to_string(k) + ".csv"));
    auto out = open_output(paths.back());
    write_trajectory_csv(out, records[k]);
  }
  write_echo(config, out_dir);
  return paths;
}

}  // namespace fmb
