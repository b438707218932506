#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fmb/lqg_model.hpp"
#include "fmb/simulation.hpp"

namespace fmb {

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct SampleStats {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n); 0 for n < 2
  std::size_t count = 0;
};

SampleStats summarize(std::span<const double> values);

/// W2(b_t, b_hat_t^{(H)}) for t = 0..T along one record.
std::vector<double> mismatch_profile(const TrajectoryRecord& record, long memory);

/// Same against the input-blind variant.
std::vector<double> obs_only_mismatch_profile(const TrajectoryRecord& record, long memory);

/// Monte-Carlo estimate of sup_t E[W2(b_t, b_hat_t^{(H)})]: the across-record
/// mean at each t, then the max over t >= burn_in (mean-then-max).
struct MismatchEstimate {
  long memory = 0;
  long burn_in = 0;
  std::vector<double> per_time_mean;
  std::vector<double> per_time_stderr;
  double epsilon_hat = 0.0;
  long argmax_time = 0;
  double epsilon_stderr = 0.0;  // per_time_stderr at argmax_time
};

MismatchEstimate estimate_epsilon(std::span<const TrajectoryRecord> records, long memory,
                                  long burn_in = 0);

/// Variant over precomputed per-record profiles (all of equal length).
MismatchEstimate estimate_epsilon(const std::vector<std::vector<double>>& profiles, long memory,
                                  long burn_in = 0);

struct BeliefSource {
  enum class Kind { kTrue, kFiniteMemory };
  Kind kind = Kind::kTrue;
  long memory = 0;

  static BeliefSource true_belief() { return {}; }
  static BeliefSource finite_memory(long h) { return {Kind::kFiniteMemory, h}; }
};

/// sum_{t=0}^{T} gamma^t * cbar(belief_t, u_t) along one record.
double discounted_cost(const LqgModel& model, const TrajectoryRecord& record,
                       BeliefSource source, double gamma, long horizon);

struct CostReport {
  double J = 0.0;
  std::map<long, double> J_hat;
  std::map<long, double> gap;  // |J - J_hat[H]|
  long horizon = 0;
  double gamma = 0.0;
  double truncation_tail_bound = 0.0;  // gamma^{T+1} / (1 - gamma) * max stage cost seen
};

/// Across-record averages of the true-belief and finite-memory cost functionals.
CostReport cost_report(const LqgModel& model, std::span<const TrajectoryRecord> records,
                       const std::vector<long>& memory_lengths, long horizon);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y ~ slope * x + intercept. R^2 is 1 for an exact fit
/// (including flat data).
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Log-linear fit ln(eps_H) ~ ln(C) + H ln(rho).
struct DecayFit {
  double log_intercept = 0.0;
  double slope = 0.0;
  double rho_hat = 0.0;
  double r_squared = 0.0;
  std::vector<long> used;     // H values entering the fit
  std::vector<long> dropped;  // H values with eps <= 1e-12
};

/// points: (H, eps_H). Zero or tiny eps are dropped; needs >= 3 remaining.
DecayFit fit_exponential_decay(std::span<const std::pair<long, double>> points);

/// Log-log fit ln(gap) ~ slope * ln(eps) + intercept.
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;
};

/// points: (eps_H, gap_H); only points with both coordinates > 1e-12 are used.
ScalingFit fit_gap_scaling(std::span<const std::pair<double, double>> points);

/// Linear envelope gap <= c * eps with c fitted on the largest-eps point.
struct Envelope {
  double constant = 0.0;
  std::vector<std::size_t> violations;  // indices with gap > c * eps (relative slack 1e-12)
};

Envelope fit_envelope(std::span<const std::pair<double, double>> points);

/// Indices i such that eps[i+1] exceeds eps[i] by more than z pooled standard
/// errors. Estimates must be ordered by increasing H.
std::vector<std::size_t> monotonicity_violations(std::span<const MismatchEstimate> estimates,
                                                 double z = 2.0);

/// max over records, t and belief families (true and each H) of ||m||^2 + Tr(P).
double max_second_moment(std::span<const TrajectoryRecord> records);

/// Peak of the per-time mean over t < 5H against the mean over the final
/// quartile of the horizon, both with standard errors across records.
struct TransientSummary {
  double peak_mean = 0.0;
  double peak_stderr = 0.0;
  long peak_time = 0;
  double tail_mean = 0.0;
  double tail_stderr = 0.0;
  double z = 0.0;  // (peak - tail) / sqrt(peak_se^2 + tail_se^2)
};

TransientSummary transient_vs_tail(const std::vector<std::vector<double>>& profiles, long memory);

/// Paired comparison of input-blind against IO-window mismatch. The per-record
/// statistic is the time average of W2 to the true belief over t = 0..T.
struct PairedComparison {
  long memory = 0;
  double io_mean = 0.0;
  double obs_only_mean = 0.0;
  double diff_mean = 0.0;  // obs_only - io
  double diff_stderr = 0.0;
};

PairedComparison compare_input_necessity(std::span<const TrajectoryRecord> records, long memory);

}  // namespace fmb
