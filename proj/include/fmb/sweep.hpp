#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fmb/config.hpp"
#include "fmb/control.hpp"
#include "fmb/lqg_model.hpp"
#include "fmb/metrics.hpp"
#include "fmb/simulation.hpp"

namespace fmb {

/// The simulated plant: the configured double integrator with B scaled by
/// input_scale.
LqgModel build_model(const SweepConfig& config);

/// The feedback gain: LQR for the unscaled double integrator, or zero.
LqrGain build_gain(const SweepConfig& config);

/// One rollout per seed index k = 0..seeds-1 with seed derive_seed(root_seed, k),
/// run on a pool of `jobs` workers. Results are ordered by k regardless of
/// scheduling. If rollouts fail, the failure with the smallest k is rethrown.
std::vector<TrajectoryRecord> run_rollouts(const SweepConfig& config, bool obs_only);

struct SweepRow {
  long H = 0;
  double eps_mean = 0.0;
  double eps_stderr = 0.0;
  double J_true = 0.0;
  double J_fm = 0.0;
  double gap = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // one per H, in H_list order
  std::optional<DecayFit> decay;
  std::optional<ScalingFit> scaling;
  std::string decay_error;    // why `decay` is empty
  std::string scaling_error;  // why `scaling` is empty
  std::vector<MismatchEstimate> estimates;
  CostReport costs;
  std::string config_echo;
  std::string version;
  double wall_seconds = 0.0;
};

/// Aggregates records into rows and fits. Pure function of its inputs.
SweepReport summarize_sweep(const SweepConfig& config, const LqgModel& model,
                            const std::vector<TrajectoryRecord>& records);

/// Header: H,eps_mean,eps_stderr,J_true,J_fm,gap
void write_sweep_csv(std::ostream& out, const SweepReport& report);
/// Header: t, then w2_H<h> per H (the across-seed mean at each t).
void write_timeprofile_csv(std::ostream& out, const SweepReport& report);
/// Header: fit,slope,intercept,rho_hat,r_squared. Rows "decay" and "gap_scaling";
/// numeric fields are empty when the fit could not be formed.
void write_fits_csv(std::ostream& out, const SweepReport& report);
/// Header: H,io_mean,obs_only_mean,diff_mean,diff_stderr
void write_prop1_csv(std::ostream& out, const std::vector<PairedComparison>& rows);

/// Runs the sweep and writes sweep.csv, timeprofile.csv, fits.csv,
/// config.echo.txt and, if enabled, the three figures into `out_dir`.
SweepReport run_sweep(const SweepConfig& config, const std::filesystem::path& out_dir);

/// Paired comparison of IO-window against input-blind beliefs for every H;
/// writes prop1.csv and config.echo.txt.
std::vector<PairedComparison> run_prop1_demo(const SweepConfig& config,
                                             const std::filesystem::path& out_dir);

/// Writes rollout_<k>.csv for every seed index k. Returns the paths written.
std::vector<std::filesystem::path> run_rollout_dump(const SweepConfig& config,
                                                    const std::filesystem::path& out_dir);

const char* version_string();

}  // namespace fmb
