#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fmb {

/// Invalid configuration. The message starts with the location that set the
/// offending key ("sweep.cfg:12", "--set #2", or "default").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GainMode { kLqr, kZero };

/// Everything a sweep needs. Defaults reproduce the full-scale experiment
/// ("paper" preset); see apply_preset for the scaled-down "desk" profile.
struct SweepConfig {
  // Double-integrator plant and cost.
  double dt = 0.1;
  Eigen::Matrix2d sigma_w = 1e-3 * Eigen::Matrix2d::Identity();
  double sigma_v = 0.1;
  Eigen::Matrix2d q = Eigen::Matrix2d::Identity();
  double r = 0.1;
  Eigen::Vector2d prior_mean = Eigen::Vector2d(10.0, 0.0);
  Eigen::Matrix2d prior_cov = Eigen::Matrix2d::Identity();
  double gamma = 0.99;
  // Multiplies the plant's B; the controller is always designed on the
  // unscaled double integrator.
  double input_scale = 1.0;
  GainMode gain_mode = GainMode::kLqr;

  std::vector<long> memory_lengths{0, 1, 2, 5, 10, 20, 50, 100};
  long horizon = 1000;
  long seeds = 50;
  std::uint64_t root_seed = 1;
  long burn_in = 0;
  int jobs = 0;  // 0 = hardware concurrency

  std::string output_dir = "fmb_out";
  bool plots = true;
  bool obs_only = false;

  // Where each key was last set, for error messages.
  std::map<std::string, std::string> origin;

  /// Sets one key from its text value. Throws ConfigError prefixed by `where`.
  void set(const std::string& key, const std::string& value, const std::string& where);

  /// Checks every invariant; throws ConfigError naming the responsible key's origin.
  void validate() const;

  /// Canonical "key = value" listing in a fixed order.
  std::string echo() const;
};

/// Known preset names: "desk", "paper".
void apply_preset(SweepConfig& config, const std::string& name);

/// Reads `key = value` lines. '#' starts a comment; "[section]" prefixes the
/// following keys with "section.". `source` names the stream in messages.
void load_config(SweepConfig& config, std::istream& in, const std::string& source);
void load_config_file(SweepConfig& config, const std::string& path);

/// Applies a "key=value" override given on the command line.
void apply_override(SweepConfig& config, const std::string& assignment, const std::string& where);

/// Every recognised key, in echo order.
const std::vector<std::string>& config_keys();

}  // namespace fmb
