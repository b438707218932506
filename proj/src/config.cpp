#include "fmb/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fmb/csv.hpp"
#include "fmb/gaussian.hpp"

namespace fmb {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

[[noreturn]] void fail(const std::string& where, const std::string& key, const std::string& msg) {
  throw ConfigError(where + ": " + key + ": " + msg);
}

double parse_real(const std::string& text, const std::string& key, const std::string& where) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) {
    fail(where, key, "expected a finite real number, got '" + s + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(const std::string& text, const std::string& key, const std::string& where) {
  const std::string s = trim(text);
  Int value{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    fail(where, key, "expected an integer, got '" + s + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& key, const std::string& where) {
  std::string s = trim(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(where, key, "expected a boolean, got '" + s + "'");
}

// "s" means s * I; "a, b; c, d" is a full row-major 2x2.
Eigen::Matrix2d parse_matrix2(const std::string& text, const std::string& key,
                              const std::string& where) {
  const auto rows = split(trim(text), ';');
  if (rows.size() == 1 && rows[0].find(',') == std::string::npos) {
    return parse_real(rows[0], key, where) * Eigen::Matrix2d::Identity();
  }
  if (rows.size() != 2) fail(where, key, "expected a scalar or 'a, b; c, d'");
  Eigen::Matrix2d M;
  for (int i = 0; i < 2; ++i) {
    const auto cols = split(rows[static_cast<std::size_t>(i)], ',');
    if (cols.size() != 2) fail(where, key, "expected a scalar or 'a, b; c, d'");
    for (int j = 0; j < 2; ++j) M(i, j) = parse_real(cols[static_cast<std::size_t>(j)], key, where);
  }
  return M;
}

Eigen::Vector2d parse_vector2(const std::string& text, const std::string& key,
                              const std::string& where) {
  const auto parts = split(trim(text), ',');
  if (parts.size() != 2) fail(where, key, "expected 'a, b'");
  return Eigen::Vector2d(parse_real(parts[0], key, where), parse_real(parts[1], key, where));
}

std::vector<long> parse_long_list(const std::string& text, const std::string& key,
                                  const std::string& where) {
  std::vector<long> out;
  for (const auto& part : split(trim(text), ',')) out.push_back(parse_int<long>(part, key, where));
  return out;
}

std::string format_matrix2(const Eigen::Matrix2d& M) {
  return format_double(M(0, 0)) + ", " + format_double(M(0, 1)) + "; " + format_double(M(1, 0)) +
         ", " + format_double(M(1, 1));
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "model.dt",        "model.sigma_w",   "model.sigma_v",  "model.q",
      "model.r",         "model.prior_mean", "model.prior_cov", "model.gamma",
      "model.input_scale", "policy.gain",   "sweep.H_list",   "sweep.T",
      "sweep.seeds",     "sweep.root_seed", "sweep.burn_in",  "sweep.jobs",
      "output.dir",      "output.plots",    "output.obs_only"};
  return keys;
}

void SweepConfig::set(const std::string& raw_key, const std::string& value,
                      const std::string& where) {
  const std::string key = trim(raw_key);
  if (key == "model.dt") {
    dt = parse_real(value, key, where);
  } else if (key == "model.sigma_w") {
    sigma_w = parse_matrix2(value, key, where);
  } else if (key == "model.sigma_v") {
    sigma_v = parse_real(value, key, where);
  } else if (key == "model.q") {
    q = parse_matrix2(value, key, where);
  } else if (key == "model.r") {
    r = parse_real(value, key, where);
  } else if (key == "model.prior_mean") {
    prior_mean = parse_vector2(value, key, where);
  } else if (key == "model.prior_cov") {
    prior_cov = parse_matrix2(value, key, where);
  } else if (key == "model.gamma") {
    gamma = parse_real(value, key, where);
  } else if (key == "model.input_scale") {
    input_scale = parse_real(value, key, where);
  } else if (key == "policy.gain") {
    const std::string v = trim(value);
    if (v == "lqr") {
      gain_mode = GainMode::kLqr;
    } else if (v == "zero") {
      gain_mode = GainMode::kZero;
    } else {
      fail(where, key, "expected 'lqr' or 'zero', got '" + v + "'");
    }
  } else if (key == "sweep.H_list") {
    memory_lengths = parse_long_list(value, key, where);
  } else if (key == "sweep.T") {
    horizon = parse_int<long>(value, key, where);
  } else if (key == "sweep.seeds") {
    seeds = parse_int<long>(value, key, where);
  } else if (key == "sweep.root_seed") {
    root_seed = parse_int<std::uint64_t>(value, key, where);
  } else if (key == "sweep.burn_in") {
    burn_in = parse_int<long>(value, key, where);
  } else if (key == "sweep.jobs") {
    jobs = parse_int<int>(value, key, where);
  } else if (key == "output.dir") {
    output_dir = trim(value);
  } else if (key == "output.plots") {
    plots = parse_bool(value, key, where);
  } else if (key == "output.obs_only") {
    obs_only = parse_bool(value, key, where);
  } else {
    fail(where, key, "unknown key");
  }
  origin[key] = where;
}

void SweepConfig::validate() const {
  const auto where = [this](const std::string& key) {
    const auto it = origin.find(key);
    return it == origin.end() ? std::string("default") : it->second;
  };
  const auto check = [&](bool ok, const std::string& key, const std::string& msg) {
    if (!ok) fail(where(key), key, msg);
  };
  const auto psd = [](const Eigen::Matrix2d& M) {
    try {
      project_psd(M);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };

  check(dt > 0.0, "model.dt", "must be positive");
  check(psd(sigma_w), "model.sigma_w", "must be symmetric positive semidefinite");
  check(sigma_v > 0.0, "model.sigma_v", "must be positive");
  check(psd(q), "model.q", "must be symmetric positive semidefinite");
  check(r > 0.0, "model.r", "must be positive");
  check(psd(prior_cov), "model.prior_cov", "must be symmetric positive semidefinite");
  check(gamma > 0.0 && gamma < 1.0, "model.gamma", "must lie in (0, 1)");
  check(std::isfinite(input_scale), "model.input_scale", "must be finite");

  check(!memory_lengths.empty(), "sweep.H_list", "must not be empty");
  for (std::size_t i = 0; i < memory_lengths.size(); ++i) {
    check(memory_lengths[i] >= 0, "sweep.H_list", "entries must be nonnegative");
    check(i == 0 || memory_lengths[i] > memory_lengths[i - 1], "sweep.H_list",
          "entries must be sorted and distinct");
  }
  check(horizon >= 1, "sweep.T", "must be >= 1");
  check(seeds >= 2, "sweep.seeds", "must be >= 2");
  check(burn_in >= 0 && burn_in <= horizon, "sweep.burn_in", "must lie in [0, T]");
  check(jobs >= 0, "sweep.jobs", "must be >= 0");
}

std::string SweepConfig::echo() const {
  std::ostringstream out;
  std::string list;
  for (std::size_t i = 0; i < memory_lengths.size(); ++i) {
    list += (i ? ", " : "") + std::to_string(memory_lengths[i]);
  }
  out << "model.dt = " << format_double(dt) << '\n'
      << "model.sigma_w = " << format_matrix2(sigma_w) << '\n'
      << "model.sigma_v = " << format_double(sigma_v) << '\n'
      << "model.q = " << format_matrix2(q) << '\n'
      << "model.r = " << format_double(r) << '\n'
      << "model.prior_mean = " << format_double(prior_mean[0]) << ", "
      << format_double(prior_mean[1]) << '\n'
      << "model.prior_cov = " << format_matrix2(prior_cov) << '\n'
      << "model.gamma = " << format_double(gamma) << '\n'
      << "model.input_scale = " << format_double(input_scale) << '\n'
      << "policy.gain = " << (gain_mode == GainMode::kLqr ? "lqr" : "zero") << '\n'
      << "sweep.H_list = " << list << '\n'
      << "sweep.T = " << horizon << '\n'
      << "sweep.seeds = " << seeds << '\n'
      << "sweep.root_seed = " << root_seed << '\n'
      << "sweep.burn_in = " << burn_in << '\n'
      << "output.plots = " << (plots ? "true" : "false") << '\n'
      << "output.obs_only = " << (obs_only ? "true" : "false") << '\n';
  // sweep.jobs and output.dir are left out: they must not change the results.
  return out.str();
}

void apply_preset(SweepConfig& config, const std::string& name) {
  if (name == "desk") {
    config.horizon = 300;
    config.seeds = 20;
    config.memory_lengths = {0, 1, 2, 5, 10, 20};
  } else if (name == "paper") {
    config.horizon = 1000;
    config.seeds = 50;
    config.memory_lengths = {0, 1, 2, 5, 10, 20, 50, 100};
  } else {
    throw ConfigError("--preset: unknown preset '" + name + "' (expected desk or paper)");
  }
  for (const char* key : {"sweep.T", "sweep.seeds", "sweep.H_list"}) {
    config.origin[key] = "--preset " + name;
  }
}

void load_config(SweepConfig& config, std::istream& in, const std::string& source) {
  std::string line;
  std::string section;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto hash = line.find('#');
    const std::string text = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) {
        throw ConfigError(where + ": malformed section header '" + text + "'");
      }
      section = trim(text.substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": missing key before '='");
    config.set(section.empty() ? key : section + "." + key, text.substr(eq + 1), where);
  }
}

void load_config_file(SweepConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  load_config(config, in, path);
}

void apply_override(SweepConfig& config, const std::string& assignment,
                    const std::string& where) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError(where + ": expected key=value, got '" + assignment + "'");
  }
  config.set(assignment.substr(0, eq), assignment.substr(eq + 1), where);
}

}  // namespace fmb
