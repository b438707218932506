#include "fmb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fmb/errors.hpp"
#include "fmb/gaussian.hpp"

namespace fmb {

namespace {

constexpr double kLogFloor = 1e-12;

double mean_of(std::span<const double> values) {
  CompensatedSum sum;
  for (const double v : values) sum.add(v);
  return sum.value() / static_cast<double>(values.size());
}

std::vector<double> time_profile(const std::vector<GaussianBelief>& reference,
                                 const std::vector<GaussianBelief>& approx) {
  std::vector<double> out(reference.size());
  for (std::size_t t = 0; t < reference.size(); ++t) out[t] = w2_gaussian(reference[t], approx[t]);
  return out;
}

void require_records(std::size_t count, const char* what) {
  if (count < 2) {
    throw UsageError(std::string(what) + ": need at least 2 records, got " +
                     std::to_string(count));
  }
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

SampleStats summarize(std::span<const double> values) {
  SampleStats s;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = mean_of(values);
  if (values.size() < 2) return s;
  CompensatedSum sq;
  for (const double v : values) sq.add((v - s.mean) * (v - s.mean));
  const double n = static_cast<double>(values.size());
  s.std_error = std::sqrt(sq.value() / (n - 1.0)) / std::sqrt(n);
  return s;
}

std::vector<double> mismatch_profile(const TrajectoryRecord& record, long memory) {
  return time_profile(record.true_beliefs, record.fm(memory));
}

std::vector<double> obs_only_mismatch_profile(const TrajectoryRecord& record, long memory) {
  return time_profile(record.true_beliefs, record.obs_only(memory));
}

MismatchEstimate estimate_epsilon(std::span<const TrajectoryRecord> records, long memory,
                                  long burn_in) {
  require_records(records.size(), "estimate_epsilon");
  std::vector<std::vector<double>> profiles;
  profiles.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.horizon != records.front().horizon) {
      throw UsageError("estimate_epsilon: records have different horizons");
    }
    profiles.push_back(mismatch_profile(rec, memory));
  }
  return estimate_epsilon(profiles, memory, burn_in);
}

MismatchEstimate estimate_epsilon(const std::vector<std::vector<double>>& profiles, long memory,
                                  long burn_in) {
  require_records(profiles.size(), "estimate_epsilon");
  const std::size_t steps = profiles.front().size();
  for (const auto& p : profiles) {
    if (p.size() != steps) throw UsageError("estimate_epsilon: profiles differ in length");
  }
  if (burn_in < 0 || static_cast<std::size_t>(burn_in) >= steps) {
    throw UsageError("estimate_epsilon: burn_in out of range");
  }

  MismatchEstimate est;
  est.memory = memory;
  est.burn_in = burn_in;
  est.per_time_mean.resize(steps);
  est.per_time_stderr.resize(steps);
  std::vector<double> column(profiles.size());
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t r = 0; r < profiles.size(); ++r) column[r] = profiles[r][t];
    const SampleStats s = summarize(column);
    est.per_time_mean[t] = s.mean;
    est.per_time_stderr[t] = s.std_error;
  }
  const auto first = est.per_time_mean.begin() + burn_in;
  const auto best = std::max_element(first, est.per_time_mean.end());
  est.argmax_time = static_cast<long>(best - est.per_time_mean.begin());
  est.epsilon_hat = *best;
  est.epsilon_stderr = est.per_time_stderr[static_cast<std::size_t>(est.argmax_time)];
  return est;
}

double discounted_cost(const LqgModel& model, const TrajectoryRecord& record,
                       BeliefSource source, double gamma, long horizon) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("discounted_cost: gamma must lie in (0, 1)");
  }
  if (horizon < 0 || horizon > record.horizon) {
    throw UsageError("discounted_cost: horizon exceeds the record");
  }
  const std::vector<GaussianBelief>& beliefs = source.kind == BeliefSource::Kind::kTrue
                                                   ? record.true_beliefs
                                                   : record.fm(source.memory);
  CompensatedSum sum;
  double weight = 1.0;
  for (long t = 0; t <= horizon; ++t) {
    sum.add(weight * belief_stage_cost(model, beliefs[static_cast<std::size_t>(t)],
                                       record.policy_input(t)));
    weight *= gamma;
  }
  return sum.value();
}

CostReport cost_report(const LqgModel& model, std::span<const TrajectoryRecord> records,
                       const std::vector<long>& memory_lengths, long horizon) {
  if (records.empty()) throw UsageError("cost_report: no records");
  CostReport report;
  report.horizon = horizon;
  report.gamma = model.gamma;

  std::vector<double> per_record(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    per_record[r] =
        discounted_cost(model, records[r], BeliefSource::true_belief(), model.gamma, horizon);
  }
  report.J = mean_of(per_record);
  for (const long h : memory_lengths) {
    for (std::size_t r = 0; r < records.size(); ++r) {
      per_record[r] =
          discounted_cost(model, records[r], BeliefSource::finite_memory(h), model.gamma, horizon);
    }
    report.J_hat[h] = mean_of(per_record);
    report.gap[h] = std::abs(report.J - report.J_hat[h]);
  }

  double max_stage = 0.0;
  for (const auto& rec : records) {
    for (long t = 0; t <= horizon; ++t) {
      const auto k = static_cast<std::size_t>(t);
      const Eigen::VectorXd& u = rec.policy_input(t);
      max_stage = std::max(max_stage, belief_stage_cost(model, rec.true_beliefs[k], u));
      for (const long h : memory_lengths) {
        max_stage = std::max(max_stage, belief_stage_cost(model, rec.fm(h)[k], u));
      }
    }
  }
  report.truncation_tail_bound =
      std::pow(model.gamma, static_cast<double>(horizon + 1)) / (1.0 - model.gamma) * max_stage;
  return report;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientDataError("least_squares: need at least 2 paired points");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
    syy.add((y[i] - my) * (y[i] - my));
  }
  if (sxx.value() == 0.0) throw InsufficientDataError("least_squares: x values are all equal");

  LinearFit fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  CompensatedSum ss_res;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res.add(r * r);
  }
  if (syy.value() == 0.0) {
    fit.r_squared = ss_res.value() == 0.0 ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - ss_res.value() / syy.value(), 0.0, 1.0);
  }
  return fit;
}

DecayFit fit_exponential_decay(std::span<const std::pair<long, double>> points) {
  DecayFit out;
  std::vector<double> xs, ys;
  for (const auto& [h, eps] : points) {
    if (eps > kLogFloor) {
      xs.push_back(static_cast<double>(h));
      ys.push_back(std::log(eps));
      out.used.push_back(h);
    } else {
      out.dropped.push_back(h);
    }
  }
  if (xs.size() < 3) {
    throw InsufficientDataError("fit_exponential_decay: need at least 3 positive points, got " +
                                std::to_string(xs.size()));
  }
  const LinearFit fit = least_squares(xs, ys);
  out.slope = fit.slope;
  out.log_intercept = fit.intercept;
  out.rho_hat = std::exp(fit.slope);
  out.r_squared = fit.r_squared;
  return out;
}

ScalingFit fit_gap_scaling(std::span<const std::pair<double, double>> points) {
  ScalingFit out;
  std::vector<double> xs, ys;
  for (const auto& [eps, gap] : points) {
    if (eps > kLogFloor && gap > kLogFloor) {
      xs.push_back(std::log(eps));
      ys.push_back(std::log(gap));
    } else {
      ++out.dropped;
    }
  }
  if (xs.size() < 3) {
    throw InsufficientDataError("fit_gap_scaling: need at least 3 positive points, got " +
                                std::to_string(xs.size()));
  }
  const LinearFit fit = least_squares(xs, ys);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.r_squared = fit.r_squared;
  out.used = xs.size();
  return out;
}

Envelope fit_envelope(std::span<const std::pair<double, double>> points) {
  if (points.empty()) throw InsufficientDataError("fit_envelope: no points");
  const auto top = std::max_element(points.begin(), points.end(),
                                    [](const auto& a, const auto& b) { return a.first < b.first; });
  if (!(top->first > 0.0)) throw InsufficientDataError("fit_envelope: all eps are zero");
  Envelope env;
  env.constant = top->second / top->first;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double bound = env.constant * points[i].first;
    if (points[i].second > bound * (1.0 + 1e-12) + 1e-15) env.violations.push_back(i);
  }
  return env;
}

std::vector<std::size_t> monotonicity_violations(std::span<const MismatchEstimate> estimates,
                                                 double z) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < estimates.size(); ++i) {
    const auto& a = estimates[i];
    const auto& b = estimates[i + 1];
    const double pooled = std::hypot(a.epsilon_stderr, b.epsilon_stderr);
    if (b.epsilon_hat - a.epsilon_hat > z * pooled) out.push_back(i);
  }
  return out;
}

double max_second_moment(std::span<const TrajectoryRecord> records) {
  double best = 0.0;
  for (const auto& rec : records) {
    for (const auto& b : rec.true_beliefs) best = std::max(best, b.second_moment());
    for (const auto& [h, beliefs] : rec.fm_beliefs) {
      for (const auto& b : beliefs) best = std::max(best, b.second_moment());
    }
  }
  return best;
}

TransientSummary transient_vs_tail(const std::vector<std::vector<double>>& profiles,
                                   long memory) {
  require_records(profiles.size(), "transient_vs_tail");
  if (memory < 1) throw UsageError("transient_vs_tail: memory must be >= 1");
  const MismatchEstimate est = estimate_epsilon(profiles, memory, 0);
  const std::size_t steps = est.per_time_mean.size();

  TransientSummary out;
  const std::size_t early_end = std::min(steps, static_cast<std::size_t>(5 * memory));
  const auto peak =
      std::max_element(est.per_time_mean.begin(), est.per_time_mean.begin() + early_end);
  out.peak_time = static_cast<long>(peak - est.per_time_mean.begin());
  out.peak_mean = *peak;
  out.peak_stderr = est.per_time_stderr[static_cast<std::size_t>(out.peak_time)];

  const std::size_t tail_begin = (3 * steps) / 4;
  std::vector<double> tail(profiles.size());
  for (std::size_t r = 0; r < profiles.size(); ++r) {
    tail[r] = mean_of(std::span<const double>(profiles[r]).subspan(tail_begin));
  }
  const SampleStats s = summarize(tail);
  out.tail_mean = s.mean;
  out.tail_stderr = s.std_error;
  const double pooled = std::hypot(out.peak_stderr, out.tail_stderr);
  const double diff = out.peak_mean - out.tail_mean;
  if (pooled > 0.0) {
    out.z = diff / pooled;
  } else {
    constexpr double inf = std::numeric_limits<double>::infinity();
    out.z = diff > 0.0 ? inf : (diff < 0.0 ? -inf : 0.0);
  }
  return out;
}

PairedComparison compare_input_necessity(std::span<const TrajectoryRecord> records,
                                         long memory) {
  require_records(records.size(), "compare_input_necessity");
  std::vector<double> io(records.size()), blind(records.size()), diff(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    io[r] = mean_of(mismatch_profile(records[r], memory));
    blind[r] = mean_of(obs_only_mismatch_profile(records[r], memory));
    diff[r] = blind[r] - io[r];
  }
  PairedComparison out;
  out.memory = memory;
  out.io_mean = mean_of(io);
  out.obs_only_mean = mean_of(blind);
  const SampleStats s = summarize(diff);
  out.diff_mean = s.mean;
  out.diff_stderr = s.std_error;
  return out;
}

}  // namespace fmb
