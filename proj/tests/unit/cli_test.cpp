// Copyright 2026 The GCI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string output;
};

Outcome run_in(const fs::path& dir, const std::string& args) {
  fs::create_directories(dir);
  const std::string cmd = "cd '" + dir.string() + "' && '" + GCI_CLI_PATH + "' " + args + " 2>&1";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) r.output.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::temp_directory_path() / ("gci_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(root_);
    for (const char* name : {"a", "b"}) pipeline(root_ / name);
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }

  // The same relative-path pipeline, so reruns can be compared file by file.
  static void pipeline(const fs::path& d) {
    const std::string csv = std::string(GCI_FIXTURES_DIR) + "/bbbp_small.csv";
    const char* steps[] = {
        "synth --recipe square-corr --count 200 --seed 4 --out data/",
        "train --data data/dataset.jsonl --out model.json --seed 4 --epochs 15",
        "extract --model model.json --data data/dataset.jsonl --k 3 --seed 2 --out gc.json",
        "extract --model model.json --data data/dataset.jsonl --k 3 --seed 2 --explainer noisy:0.2 --out noisy.json",
        "extract --model model.json --data data/dataset.jsonl --k 3 --seed 2 --explainer random --out random.json",
        "report --model model.json --data data/dataset.jsonl --concepts gc.json --spec square --svg --out rep",
        "sweep --model model.json --data data/dataset.jsonl --spec square --k 2,3,3 --class-filter 1 --out sweep",
    };
    for (const char* s : steps) {
      const Outcome r = run_in(d, s);
      ASSERT_EQ(r.code, 0) << s << "\n" << r.output;
    }
    const Outcome ing = run_in(d, "ingest-bbbp --csv '" + csv + "' --out mol.jsonl");
    ASSERT_EQ(ing.code, 0) << ing.output;
    const Outcome tr = run_in(d, "train --data mol.jsonl --out mol_model.json --epochs 3 --seed 1");
    ASSERT_EQ(tr.code, 0) << tr.output;
    const Outcome ex = run_in(d, "extract --model mol_model.json --data mol.jsonl --k 4 --class-filter 1 --out mol_c1.json");
    ASSERT_EQ(ex.code, 0) << ex.output;
    const Outcome rp = run_in(d, "report --model mol_model.json --data mol.jsonl --concepts mol_c1.json "
                             "--spec bbbp_functional_groups --class-filter 1 --out mol_rep");
    ASSERT_EQ(rp.code, 0) << rp.output;
  }

  static fs::path root_;
};

fs::path Cli::root_;

TEST_F(Cli, PrimaryOutputsAreByteIdenticalAcrossReruns) {
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root_ / "a")) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.find("manifest") != std::string::npos) continue;  // manifests carry wall-clock time
    const fs::path rel = fs::relative(entry.path(), root_ / "a");
    ASSERT_TRUE(fs::exists(root_ / "b" / rel)) << rel;
    EXPECT_EQ(slurp(entry.path()), slurp(root_ / "b" / rel)) << rel;
    ++compared;
  }
  EXPECT_GE(compared, 18u);
}

TEST_F(Cli, ManifestsRecordHashesAndSeeds) {
  const auto m = nlohmann::json::parse(slurp(root_ / "a" / "model.json.manifest.json"));
  EXPECT_EQ(m.at("command"), "train");
  EXPECT_EQ(m.at("seeds").at("seed"), "4");
  EXPECT_EQ(m.at("inputs").at(0).at("path"), "data/dataset.jsonl");
  EXPECT_EQ(m.at("outputs").at(0).at("fnv1a64").get<std::string>().size(), 16u);
  const auto synth = nlohmann::json::parse(slurp(root_ / "a" / "data" / "dataset.jsonl.manifest.json"));
  // The dataset manifest's output hash is the train manifest's input hash.
  EXPECT_EQ(synth.at("outputs").at(0).at("fnv1a64"), m.at("inputs").at(0).at("fnv1a64"));
  EXPECT_TRUE(fs::exists(root_ / "a" / "rep" / "report.manifest.json"));
  EXPECT_TRUE(fs::exists(root_ / "a" / "sweep" / "sweep.manifest.json"));
}

TEST_F(Cli, ReportFiles) {
  for (const char* f : {"ia.csv", "ia.svg", "summary.txt"}) EXPECT_TRUE(fs::exists(root_ / "a" / "rep" / f)) << f;
  const std::string csv = slurp(root_ / "a" / "rep" / "ia.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), ",c0,c1,c2");
  const std::string summary = slurp(root_ / "a" / "rep" / "summary.txt");
  for (const char* key : {"completeness", "predictability_f1", "concept_sizes", "representatives"})
    EXPECT_NE(summary.find(key), std::string::npos) << key;
  EXPECT_NE(slurp(root_ / "a" / "mol_rep" / "summary.txt").find("class_filter 1"), std::string::npos);
}

TEST_F(Cli, SweepDeduplicatesK) {
  const auto idx = nlohmann::json::parse(slurp(root_ / "a" / "sweep" / "sweep.json"));
  ASSERT_EQ(idx.at("runs").size(), 2u);
  EXPECT_EQ(idx.at("runs").at(0).at("k"), 2);
  EXPECT_EQ(idx.at("runs").at(1).at("k"), 3);
  for (const char* f : {"ia_k2.csv", "ia_k2.svg", "ia_k3.csv", "ia_k3.svg"})
    EXPECT_TRUE(fs::exists(root_ / "a" / "sweep" / f)) << f;
}

TEST_F(Cli, FingerprintMismatch) {
  const fs::path d = root_ / "a";
  ASSERT_EQ(run_in(d, "train --data data/dataset.jsonl --out other.json --seed 5 --epochs 2").code, 0);
  const Outcome r = run_in(d, "report --model other.json --data data/dataset.jsonl --concepts gc.json --spec square --out x");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("FingerprintMismatch"), std::string::npos);
}

TEST_F(Cli, ClassFilterMismatchIsUsageError) {
  const Outcome r = run_in(root_ / "a", "report --model model.json --data data/dataset.jsonl --concepts gc.json "
                                    "--spec square --class-filter 1 --out y");
  EXPECT_EQ(r.code, 1);
}

TEST(CliErrors, MissingOutIsUsage) {
  const Outcome r = run_in(fs::temp_directory_path(), "synth --recipe colors3");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("--out"), std::string::npos);
}

TEST(CliErrors, UnreadableCsvIsData) {
  EXPECT_EQ(run_in(fs::temp_directory_path(), "ingest-bbbp --csv /nonexistent/x.csv --out /tmp/none.jsonl").code, 2);
}

TEST(CliErrors, SingleClassTrainingIsNumeric) {
  const fs::path d = fs::temp_directory_path() / ("gci_cli_single_" + std::to_string(::getpid()));
  fs::create_directories(d);
  std::ofstream(d / "one.jsonl") << R"({"task":"t","num_classes":2,"metric":"accuracy"})" << "\n"
                                 << R"({"id":0,"label":0,"nodes":[{"kind":"color","value":"blue"}],"edges":[]})" << "\n"
                                 << R"({"id":1,"label":0,"nodes":[{"kind":"color","value":"red"}],"edges":[]})" << "\n";
  EXPECT_EQ(run_in(d, "train --data one.jsonl --out m.json").code, 3);
  fs::remove_all(d);
}

TEST(CliErrors, UnknownRecipeAndTheta) {
  EXPECT_EQ(run_in(fs::temp_directory_path(), "synth --recipe nope --out /tmp/x.jsonl").code, 1);
  EXPECT_EQ(run_in(fs::temp_directory_path(), "repro exp9").code, 1);
}

TEST(CliRepro, Exp1PassesItsChecks) {
  const Outcome r = run_in(fs::temp_directory_path(), "repro exp1");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("PASS  exp1: gcexplainer per-column max"), std::string::npos);
  EXPECT_EQ(r.output.find("FAIL"), std::string::npos);
}

}  // namespace
