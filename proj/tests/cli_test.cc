// Copyright 2026 The ReconLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Drives the reconlab binary end to end on a tiny synthetic config.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result RunCli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + " " + RECONLAB_CLI_PATH + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Value of "key=" in whitespace/newline separated output.
std::string Field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token.rfind(key + "=", 0) == 0) return token.substr(key.size() + 1);
  }
  return "";
}

std::size_t CountLines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("reconlab_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    std::ofstream(dir_ / "tiny.cfg") << "profile = desk-synthetic\n"
                                        "[data]\ndim = 8\nnum_classes = 10\n"
                                        "[split]\nfixed = 60\nshadows = 150\n"
                                        "probes = 10\ntargets = 4\n"
                                        "[released]\nhidden = 10\n"
                                        "epochs = 8\n"
                                        "[attack]\nepochs = 5\n"
                                        "batch_size = 32\n"
                                        "[dp]\nshadows = 60\nrepeats = 2\n"
                                        "epsilons = inf, 10\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Common(const std::string& out = "out") const {
    return "--config " + (dir_ / "tiny.cfg").string() + " --out " +
           (dir_ / out).string();
  }

  fs::path dir_;
};

TEST(CliBasicsTest, ReroBoundExamples) {
  const Result cor1 = RunCli("rero-bound --cor1 --kappa 0.01 --eps 2.302585");
  ASSERT_EQ(cor1.code, 0);
  EXPECT_NEAR(std::stod(Field(cor1.out, "gamma")), 0.1, 1e-6);
  const Result thm3 = RunCli("rero-bound --thm3 --eps 0 --gamma 0.75");
  ASSERT_EQ(thm3.code, 0);
  EXPECT_EQ(std::stod(Field(thm3.out, "delta")), 0.5);
  const Result prop1 = RunCli("rero-bound --prop1 --d 2 --eta 0.5 --eps 0");
  ASSERT_EQ(prop1.code, 0);
  EXPECT_EQ(std::stod(Field(prop1.out, "kappa")), 0.25);
}

TEST(CliBasicsTest, ExitCodes) {
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli("no-such-command").code, 2);
  EXPECT_EQ(RunCli("rero-bound --cor1 --cor2 --kappa 0.1 --eps 1").code, 2);
  EXPECT_EQ(RunCli("rero-bound --cor1 --eps 1").code, 2);
  EXPECT_EQ(RunCli("gen-shadows --k 0").code, 2);
  EXPECT_EQ(RunCli("train-released --set split.fixd=3").code, 2);
  EXPECT_EQ(RunCli("--help").code, 0);
}

TEST_F(CliTest, TableCarriesHashHeader) {
  const fs::path table = dir_ / "bounds.csv";
  ASSERT_EQ(RunCli("rero-bound --cor2 --kappa 0.01 --rho 0.1,1,10 --table " +
                table.string())
                .code,
            0);
  const std::string text = Slurp(table);
  EXPECT_EQ(text.rfind("# config_hash=", 0), 0u);
  EXPECT_EQ(CountLines(text), 5u);
  EXPECT_NE(text.find("d,eta,prior,privacy_variant,privacy_value,kappa,gamma,"
                      "source"),
            std::string::npos);
}

TEST_F(CliTest, TrainReleasedIsByteReproducible) {
  ASSERT_EQ(RunCli("train-released --targets 1 " + Common("a")).code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "a" / "released")) {
    files += e.path().extension() == ".params";
  }
  EXPECT_EQ(files, 1u);
  ASSERT_EQ(RunCli("train-released " + Common("a")).code, 0);
  ASSERT_EQ(RunCli("train-released --serial " + Common("b")).code, 0);
  ASSERT_EQ(RunCli("train-released " + Common("c"), "RECONLAB_THREADS=1").code,
            0);
  for (const std::string name :
       {"manifest.csv", "target_0000.params", "target_0003.params"}) {
    const std::string a = Slurp(dir_ / "a" / "released" / name);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, Slurp(dir_ / "b" / "released" / name)) << name;
    EXPECT_EQ(a, Slurp(dir_ / "c" / "released" / name)) << name;
  }
}

TEST_F(CliTest, ShadowFeaturizersAndOodPool) {
  const Result layer = RunCli("gen-shadows --k 20 --layers 1 " + Common());
  ASSERT_EQ(layer.code, 0);
  // Second layer of a width-10 MLP with 10 classes: 10*10 + 10.
  EXPECT_EQ(Field(layer.out, "feature_len"), "110");
  EXPECT_EQ(Field(layer.out, "shadows"), "20");
  const Result bb = RunCli("gen-shadows --k 20 --featurizer black-box "
                        "--probe-size 5 " +
                        Common());
  ASSERT_EQ(bb.code, 0);
  EXPECT_EQ(Field(bb.out, "feature_len"), "50");
  EXPECT_EQ(RunCli("gen-shadows --probe-size 5 " + Common()).code, 2);
  EXPECT_EQ(RunCli("gen-shadows --k 151 " + Common()).code, 2);

  ASSERT_EQ(RunCli("gen-shadows --k 20 " + Common("in")).code, 0);
  ASSERT_EQ(RunCli("gen-shadows --k 20 --ood-pool " + Common("ood1")).code, 0);
  ASSERT_EQ(RunCli("gen-shadows --k 20 --ood-pool " + Common("ood2")).code, 0);
  const std::string in = Slurp(dir_ / "in" / "shadow_targets.csv");
  const std::string ood = Slurp(dir_ / "ood1" / "shadow_targets.csv");
  EXPECT_NE(in, ood);
  EXPECT_EQ(ood, Slurp(dir_ / "ood2" / "shadow_targets.csv"));
  EXPECT_EQ(Slurp(dir_ / "ood1" / "shadows.bin"),
            Slurp(dir_ / "ood2" / "shadows.bin"));
  EXPECT_NE(Slurp(dir_ / "ood1" / "shadows.manifest").find("ood=true"),
            std::string::npos);
}

TEST_F(CliTest, AttackReportShape) {
  EXPECT_EQ(RunCli("attack " + Common()).code, 2);
  ASSERT_EQ(RunCli("train-released " + Common()).code, 0);
  ASSERT_EQ(RunCli("gen-shadows " + Common()).code, 0);
  const Result r = RunCli("attack " + Common());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Field(r.out, "targets"), "4");
  EXPECT_FALSE(Field(r.out, "mean_mse").empty());
  EXPECT_FALSE(Field(r.out, "oracle_threshold").empty());
  EXPECT_FALSE(Field(r.out, "success").empty());
  const std::string csv = Slurp(dir_ / "out" / "attack.csv");
  // Hash line, header, one row per target.
  EXPECT_EQ(CountLines(csv), 2u + 4u);
  const std::string summary = Slurp(dir_ / "out" / "attack_summary.txt");
  EXPECT_EQ(summary.rfind("# config_hash=", 0), 0u);
  ASSERT_EQ(RunCli("attack " + Common()).code, 0);
  EXPECT_EQ(Slurp(dir_ / "out" / "attack.csv"), csv);
}

TEST_F(CliTest, MiaAttacks) {
  const Result trivial = RunCli("mia --trials 30 " + Common());
  ASSERT_EQ(trivial.code, 0);
  EXPECT_EQ(Field(trivial.out, "accuracy"), "1");
  const std::string log = Slurp(dir_ / "out" / "mia.csv");
  EXPECT_EQ(CountLines(log), 2u + 30u);
  EXPECT_NE(log.find("trial,b,guess,correct"), std::string::npos);

  const Result random = RunCli("mia --trials 300 --attack random " + Common());
  ASSERT_EQ(random.code, 0);
  EXPECT_NEAR(std::stod(Field(random.out, "accuracy")), 0.5, 0.1);
  EXPECT_EQ(RunCli("mia --attack psychic " + Common()).code, 2);

  const Result losses = RunCli("mia --trials 2 --loss-models 4 " + Common());
  ASSERT_EQ(losses.code, 0);
  EXPECT_EQ(Field(losses.out, "overlap"), "0");
}

TEST_F(CliTest, DpSweepTable) {
  const Result r = RunCli("dp-sweep " + Common());
  ASSERT_EQ(r.code, 0);
  const std::string rows = Slurp(dir_ / "out" / "dp_sweep.csv");
  EXPECT_EQ(CountLines(rows), 2u + 4u);
  EXPECT_NE(rows.find("\ninf,1e-05,0,0,"), std::string::npos);
  const std::string levels = Slurp(dir_ / "out" / "dp_sweep_levels.csv");
  EXPECT_EQ(CountLines(levels), 2u + 2u);
  EXPECT_FALSE(Field(r.out, "non_decreasing_within_2se").empty());
}

TEST_F(CliTest, GlmAttackOnCsv) {
  // y = 1 + 2a - b exactly on the fixed set, target (0.5, 0.25, 1.75).
  std::ofstream fixed(dir_ / "fixed.csv");
  fixed << "a,b,y\n";
  const double pts[][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, -1}, {-1, 2}};
  for (const auto& p : pts) {
    fixed << p[0] << ',' << p[1] << ',' << 1 + 2 * p[0] - p[1] + 0.1 * p[0] * p[1]
          << '\n';
  }
  fixed.close();
  std::ofstream(dir_ / "target.csv") << "a,b,y\n0.5,0.25,1.75\n";
  const std::string files = "--fixed " + (dir_ / "fixed.csv").string() +
                            " --target " + (dir_ / "target.csv").string();
  const Result r = RunCli("glm-attack " + files);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Field(r.out, "exact"), "true");
  const Result ridge = RunCli("glm-attack --family ridge --lambda 1 " + files);
  ASSERT_EQ(ridge.code, 0);
  EXPECT_EQ(Field(ridge.out, "exact"), "true");

  EXPECT_EQ(RunCli("glm-attack --no-intercept " + files).code, 2);
  const Result roots = RunCli("glm-attack --no-intercept --label 1.75 " + files);
  ASSERT_EQ(roots.code, 0);
  EXPECT_FALSE(Field(roots.out, "root0").empty());
  EXPECT_FALSE(Field(roots.out, "root1").empty());

  // Collinear columns: the least-squares fit is singular.
  std::ofstream(dir_ / "flat.csv") << "a,b,y\n1,2,1\n2,4,2\n3,6,0\n";
  std::ofstream(dir_ / "flat_t.csv") << "a,b,y\n4,8,1\n";
  EXPECT_EQ(RunCli("glm-attack --fixed " + (dir_ / "flat.csv").string() +
                " --target " + (dir_ / "flat_t.csv").string())
                .code,
            3);
}

TEST_F(CliTest, ReroCheckPassesAndWritesCsv) {
  const fs::path csv = dir_ / "check.csv";
  const Result r = RunCli("rero-check --trials 200 --csv " + csv.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Field(r.out, "violations"), "0");
  EXPECT_EQ(CountLines(Slurp(csv)), 2u + 27u);
}

}  // namespace
