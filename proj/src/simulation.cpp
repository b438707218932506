#include "fmb/simulation.hpp"

#include <algorithm>
#include <ostream>
#include <span>
#include <string>

#include "fmb/csv.hpp"
#include "fmb/errors.hpp"
#include "fmb/random.hpp"

namespace fmb {

namespace {

constexpr double kDivergenceThreshold = 1e12;

void validate_memory_lengths(const std::vector<long>& memory_lengths) {
  if (memory_lengths.empty()) throw UsageError("rollout: memory length list is empty");
  for (std::size_t i = 0; i < memory_lengths.size(); ++i) {
    if (memory_lengths[i] < 0) throw UsageError("rollout: memory lengths must be nonnegative");
    if (i > 0 && memory_lengths[i] <= memory_lengths[i - 1]) {
      throw UsageError("rollout: memory lengths must be sorted and distinct");
    }
  }
}

}  // namespace

const Eigen::VectorXd& TrajectoryRecord::policy_input(long t) const {
  if (t < 0 || t > horizon) throw UsageError("policy_input: t out of range");
  return t < horizon ? inputs[static_cast<std::size_t>(t)] : final_input;
}

IoWindow TrajectoryRecord::window(long t, long memory) const {
  if (t < 0 || t > horizon) throw UsageError("window: t out of range");
  const long s = std::max(0L, t - memory);
  IoWindow w;
  w.start = s;
  w.observations.assign(observations.begin() + s, observations.begin() + t + 1);
  w.inputs.assign(inputs.begin() + s, inputs.begin() + t);
  return w;
}

const std::vector<GaussianBelief>& TrajectoryRecord::fm(long memory) const {
  const auto it = fm_beliefs.find(memory);
  if (it == fm_beliefs.end()) {
    throw UsageError("record has no finite-memory beliefs for H=" + std::to_string(memory));
  }
  return it->second;
}

const std::vector<GaussianBelief>& TrajectoryRecord::obs_only(long memory) const {
  const auto it = obs_only_beliefs.find(memory);
  if (it == obs_only_beliefs.end()) {
    throw UsageError("record has no observation-only beliefs for H=" + std::to_string(memory));
  }
  return it->second;
}

TrajectoryRecord rollout(const LqgModel& model, const LqrGain& gain,
                         const std::vector<long>& memory_lengths, long horizon,
                         std::uint64_t seed, const RolloutOptions& options) {
  if (horizon < 1) throw UsageError("rollout: horizon must be >= 1");
  validate_memory_lengths(memory_lengths);
  if (gain.K.rows() != model.input_dim() || gain.K.cols() != model.state_dim()) {
    throw ShapeError("rollout: gain K has the wrong shape for this model");
  }

  RandomStream init_rng(seed, Stream::kInitialState);
  RandomStream process_rng(seed, Stream::kProcessNoise);
  RandomStream obs_rng(seed, Stream::kObservationNoise);
  const Eigen::MatrixXd prior_sqrt = sqrt_psd(model.prior_cov);
  const Eigen::MatrixXd process_sqrt = sqrt_psd(model.process_noise);
  const Eigen::MatrixXd obs_sqrt = sqrt_psd(model.observation_noise);
  const Eigen::VectorXd zero_state = Eigen::VectorXd::Zero(model.state_dim());

  TrajectoryRecord rec;
  rec.seed = seed;
  rec.horizon = horizon;
  rec.memory_lengths = memory_lengths;
  const auto steps = static_cast<std::size_t>(horizon) + 1;
  rec.states.reserve(steps);
  rec.observations.reserve(steps);
  rec.true_beliefs.reserve(steps);
  rec.inputs.reserve(steps - 1);

  Eigen::VectorXd x = init_rng.gaussian(model.prior_mean, prior_sqrt);
  for (long t = 0; t <= horizon; ++t) {
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceThreshold) {
      throw DivergenceError("rollout diverged at step " + std::to_string(t) + " (seed " +
                                std::to_string(seed) + ")",
                            t);
    }
    Eigen::VectorXd y = obs_rng.gaussian(model.C * x, obs_sqrt);
    if (t == 0) {
      rec.true_beliefs.push_back(boundary_belief(model, y));
    } else {
      rec.true_beliefs.push_back(kalman_step(model, rec.true_beliefs.back(), rec.inputs.back(), y));
    }
    Eigen::VectorXd u = -gain.K * rec.true_beliefs.back().mean();
    rec.states.push_back(x);
    rec.observations.push_back(std::move(y));
    if (t < horizon) {
      x = model.A * x + model.B * u + process_rng.gaussian(zero_state, process_sqrt);
      rec.inputs.push_back(std::move(u));
    } else {
      rec.final_input = std::move(u);
    }
  }

  // Passive evaluation: replay each window on the recorded IO sequence.
  const std::span<const Eigen::VectorXd> ys(rec.observations);
  const std::span<const Eigen::VectorXd> us(rec.inputs);
  for (const long memory : memory_lengths) {
    auto& fm = rec.fm_beliefs[memory];
    fm.reserve(steps);
    std::vector<GaussianBelief>* blind = nullptr;
    if (options.obs_only) {
      blind = &rec.obs_only_beliefs[memory];
      blind->reserve(steps);
    }
    for (long t = 0; t <= horizon; ++t) {
      const auto s = static_cast<std::size_t>(std::max(0L, t - memory));
      const auto len = static_cast<std::size_t>(t) - s;
      fm.push_back(finite_memory_belief(model, ys.subspan(s, len + 1), us.subspan(s, len)));
      if (blind) blind->push_back(obs_only_belief(model, ys.subspan(s, len + 1)));
    }
  }
  return rec;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record) {
  const auto n = record.states.front().size();
  const auto p = record.observations.front().size();
  const auto m = record.final_input.size();
  out << "t";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",x_" << i;
  for (Eigen::Index i = 1; i <= p; ++i) out << ",y_" << i;
  for (Eigen::Index i = 1; i <= m; ++i) out << ",u_" << i;
  for (Eigen::Index i = 1; i <= n; ++i) out << ",m_" << i;
  out << ",trP";
  for (const long h : record.memory_lengths) out << ",w2_H" << h;
  out << '\n';

  for (long t = 0; t <= record.horizon; ++t) {
    const auto k = static_cast<std::size_t>(t);
    const GaussianBelief& b = record.true_beliefs[k];
    out << t;
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(record.states[k][i]);
    for (Eigen::Index i = 0; i < p; ++i) out << ',' << format_double(record.observations[k][i]);
    const Eigen::VectorXd& u = record.policy_input(t);
    for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double(u[i]);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(b.mean()[i]);
    out << ',' << format_double(b.cov().trace());
    for (const long h : record.memory_lengths) {
      out << ',' << format_double(w2_gaussian(b, record.fm(h)[k]));
    }
    out << '\n';
  }
}

}  // namespace fmb
