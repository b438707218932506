#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fmb/errors.hpp"
#include "fmb/random.hpp"
#include "fmb/sweep.hpp"

namespace fmb {
namespace {

namespace fs = std::filesystem;

class SweepTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("fmb_sweep_") + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  static SweepConfig small() {
    SweepConfig c;
    c.memory_lengths = {0, 1, 2, 5};
    c.horizon = 60;
    c.seeds = 6;
    c.jobs = 1;
    return c;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
  }

  fs::path root_;
};

TEST_F(SweepTest, WritesFilesWithStableSchemas) {
  const SweepReport r = run_sweep(small(), root_);
  EXPECT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(first_line(root_ / "sweep.csv"), "H,eps_mean,eps_stderr,J_true,J_fm,gap");
  EXPECT_EQ(first_line(root_ / "timeprofile.csv"), "t,w2_H0,w2_H1,w2_H2,w2_H5");
  EXPECT_EQ(first_line(root_ / "fits.csv"), "fit,slope,intercept,rho_hat,r_squared");
  for (const char* f : {"config.echo.txt", "fig1_eps_vs_H.svg", "fig2_gap_vs_eps.svg", "fig3_w2_time.svg"}) {
    EXPECT_TRUE(fs::exists(root_ / f)) << f;
  }
  EXPECT_EQ(slurp(root_ / "fig1_eps_vs_H.svg").rfind("<svg", 0), 0u);

  std::istringstream tp(slurp(root_ / "timeprofile.csv"));
  std::string line;
  int lines = 0;
  while (std::getline(tp, line)) ++lines;
  EXPECT_EQ(lines, 62);

  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i].H, r.estimates[i].memory);
    EXPECT_EQ(r.rows[i].eps_mean, r.estimates[i].epsilon_hat);
    EXPECT_EQ(r.rows[i].gap, std::abs(r.rows[i].J_true - r.rows[i].J_fm));
  }
  ASSERT_TRUE(r.decay.has_value());
  EXPECT_EQ(r.decay->used.size(), 4u);
}

TEST_F(SweepTest, NoPlotsMeansNoSvg) {
  SweepConfig c = small();
  c.plots = false;
  run_sweep(c, root_);
  EXPECT_FALSE(fs::exists(root_ / "fig1_eps_vs_H.svg"));
  EXPECT_TRUE(fs::exists(root_ / "sweep.csv"));
}

TEST_F(SweepTest, SerialAndParallelAreByteIdentical) {
  SweepConfig serial = small();
  SweepConfig parallel = small();
  parallel.jobs = 4;
  run_sweep(serial, root_ / "a");
  run_sweep(parallel, root_ / "b");
  run_sweep(serial, root_ / "c");
  for (const char* f : {"sweep.csv", "timeprofile.csv", "fits.csv", "config.echo.txt",
                        "fig1_eps_vs_H.svg", "fig2_gap_vs_eps.svg", "fig3_w2_time.svg"}) {
    EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
    EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "c" / f)) << f;
  }
}

TEST_F(SweepTest, FullWindowSweepHasNoMismatch) {
  SweepConfig c = small();
  c.memory_lengths = {c.horizon};
  const SweepReport r = run_sweep(c, root_);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_LE(r.rows[0].eps_mean, 1e-9);
  EXPECT_EQ(r.rows[0].gap, 0.0);
  EXPECT_FALSE(r.decay.has_value());
  EXPECT_FALSE(r.scaling.has_value());
  std::istringstream fits(slurp(root_ / "fits.csv"));
  std::string line;
  std::getline(fits, line);
  std::getline(fits, line);
  EXPECT_EQ(line, "decay,,,,");
  std::getline(fits, line);
  EXPECT_EQ(line, "gap_scaling,,,,");
}

TEST_F(SweepTest, RootSeedChangesResults) {
  SweepConfig c = small();
  run_sweep(c, root_ / "a");
  c.root_seed = 2;
  run_sweep(c, root_ / "b");
  EXPECT_NE(slurp(root_ / "a" / "sweep.csv"), slurp(root_ / "b" / "sweep.csv"));
}

TEST_F(SweepTest, InputScaleOnlyAffectsThePlant) {
  SweepConfig c = small();
  c.input_scale = 0.0;
  EXPECT_TRUE(build_model(c).B.isZero(0.0));
  EXPECT_FALSE(build_gain(c).K.isZero(0.0));
  c.gain_mode = GainMode::kZero;
  EXPECT_TRUE(build_gain(c).K.isZero(0.0));
}

TEST_F(SweepTest, Prop1WithoutInputEffectIsNull) {
  for (const char* variant : {"input_scale", "gain"}) {
    SweepConfig c = small();
    if (std::string(variant) == "gain") {
      c.gain_mode = GainMode::kZero;
    } else {
      c.input_scale = 0.0;
    }
    const auto rows = run_prop1_demo(c, root_);
    for (const auto& r : rows) {
      EXPECT_EQ(r.diff_mean, 0.0) << variant << " H " << r.memory;
      EXPECT_EQ(r.diff_stderr, 0.0) << variant << " H " << r.memory;
    }
  }
  EXPECT_EQ(first_line(root_ / "prop1.csv"), "H,io_mean,obs_only_mean,diff_mean,diff_stderr");
}

TEST_F(SweepTest, RolloutDumpWritesOneFilePerSeed) {
  SweepConfig c = small();
  c.seeds = 3;
  const auto paths = run_rollout_dump(c, root_);
  ASSERT_EQ(paths.size(), 3u);
  for (const auto& p : paths) {
    EXPECT_EQ(first_line(p), "t,x_1,x_2,y_1,u_1,m_1,m_2,trP,w2_H0,w2_H1,w2_H2,w2_H5");
  }
  EXPECT_EQ(paths[2].filename(), "rollout_2.csv");
}

TEST_F(SweepTest, DivergenceNamesSeedAndStep) {
  SweepConfig c = small();
  c.gain_mode = GainMode::kZero;
  c.prior_mean = Eigen::Vector2d(0.0, 1e13);
  c.dt = 1e3;
  c.seeds = 3;
  c.jobs = 3;
  try {
    run_rollouts(c, false);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("step"), std::string::npos);
    EXPECT_NE(msg.find("seed " + std::to_string(derive_seed(c.root_seed, 0))), std::string::npos)
        << msg;
  }
}

TEST_F(SweepTest, InvalidConfigIsRejectedBeforeRunning) {
  SweepConfig c = small();
  c.seeds = 1;
  EXPECT_THROW(run_sweep(c, root_), ConfigError);
  EXPECT_FALSE(fs::exists(root_ / "sweep.csv"));
}

}  // namespace
}  // namespace fmb
