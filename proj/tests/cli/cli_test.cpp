// Copyright 2026 The Bratteli Authors
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

// End-to-end runs of the bratteli binary, checked against library results.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bratteli/adic.hpp"
#include "bratteli/builders.hpp"
#include "bratteli/coloring.hpp"
#include "bratteli/graph.hpp"
#include "bratteli/measures.hpp"
#include "bratteli/scheme.hpp"
#include "bratteli/trees.hpp"
#include "bratteli/uniadic.hpp"
#include "support/corpus.hpp"

namespace bratteli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(BRATTELI_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bratteli_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, GenMatchesBuilders) {
  CliRun r = run("gen --kind odometer --depth 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, serialize(odometer(2, 3)));
  r = run("gen --kind pascal --depth 4 --p 1/3 --weights " + path("w.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(deserialize(r.out), pascal(4));
  EXPECT_EQ(slurp(path("w.json")), serialize_weights(pascal_weights(4, Rational(1, 3))));
  r = run("gen --kind random --seed 7 --depth 4");
  EXPECT_EQ(r.out, serialize(testing::random_fixture(7)));
  r = run("gen --kind doubled_odometer --depth 2 --format dot");
  EXPECT_EQ(r.out, to_dot(doubled_odometer(2)));
  r = run("gen --kind odometer --base 3 --depth 2 --float --weights " + path("f.json") +
          " --out " + path("g.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(slurp(path("g.json")), serialize(odometer(3, 2)));
  EXPECT_EQ(slurp(path("f.json")), serialize_weights(to_float(odometer_weights(3, 2))));
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("gen --depth 3").status, 2);
  EXPECT_EQ(run("gen --kind odometer --depth 3 --bogus").status, 2);
  EXPECT_EQ(run("ua --depth 2 --dot --json").status, 2);
  EXPECT_EQ(run("color --in x.json").status, 2);
  EXPECT_EQ(run("sample --in x --weights y --depth 2 --workers 0").status, 2);
}

TEST_F(Cli, DomainErrorsExitOne) {
  EXPECT_EQ(run("gen --kind tree --depth 3").status, 1);
  EXPECT_EQ(run("validate --in " + path("missing.json")).status, 1);
  const std::string bad = write("bad.json", "{\"version\": 1, \"levels\": [[[]], [[");
  EXPECT_EQ(run("dot --in " + bad).status, 1);
  const std::string pascal_in = write("p.json", serialize(pascal(3)));
  EXPECT_EQ(run("embed --in " + pascal_in).status, 1);
}

TEST_F(Cli, Version) {
  const CliRun r = run("--version");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("format version 1"), std::string::npos);
}

TEST_F(Cli, Validate) {
  const std::string good = write("g.json", serialize(pascal(3)));
  CliRun r = run("validate --in " + good);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "ok: 4 levels, 10 vertices\n");
  const std::string bad = write("b.json", R"({"version":1,"levels":[[[]],[[0],[]],[[0]]]})");
  r = run("validate --in " + bad);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("(1,1)"), std::string::npos) << r.out;
}

TEST_F(Cli, Uniadic) {
  CliRun r = run("ua --depth 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(deserialize(r.out).level_sizes(), (std::vector<std::size_t>{1, 2, 6, 42}));
  EXPECT_EQ(run("ua --depth 2 --dot").out, to_dot(ua_graph(2).graph));
  EXPECT_EQ(run("ua --depth 2 --json").out, serialize(ua_graph(2).graph));
  EXPECT_EQ(run("ua --depth 9").status, 1);
}

TEST_F(Cli, EmbedVerify) {
  const GradedGraph g = testing::random_fixture(4);
  const std::string in = write("g.json", serialize(g));
  CliRun r = run("embed --in " + in + " --out " + path("e.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(slurp(path("e.json")), serialize_embedding(embed(g)));
  r = run("verify --in " + in + " --embedding " + path("e.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("ok:", 0), 0u) << r.out;
  const std::string other = write("o.json", serialize(testing::random_fixture(5)));
  r = run("verify --in " + other + " --embedding " + path("e.json"));
  EXPECT_EQ(r.status, 1);
}

TEST_F(Cli, TelescopeQuotientDot) {
  const std::string odo = write("o.json", serialize(odometer(2, 4)));
  EXPECT_EQ(run("telescope --in " + odo + " --levels 0,2,4").out, serialize(odometer(4, 2)));
  EXPECT_EQ(run("telescope --in " + odo + " --levels 0,2,x").status, 1);
  EXPECT_EQ(run("telescope --in " + odo + " --levels 2,4").status, 1);
  const std::string dbl = write("d.json", serialize(doubled_odometer(4)));
  EXPECT_EQ(run("quotient --in " + dbl).out, serialize(odometer(2, 4)));
  EXPECT_EQ(run("dot --in " + dbl).out, to_dot(doubled_odometer(4)));
}

TEST_F(Cli, Trees) {
  const GradedGraph g = doubled_odometer(2);
  const std::string in = write("d.json", serialize(g));
  const CliRun r = run("trees --in " + in);
  EXPECT_EQ(r.status, 0);
  const TreeIndex index(g, 2);
  std::string expected;
  for (std::size_t n = 0; n <= 2; ++n) {
    for (std::size_t v = 0; v < g.level_size(n); ++v) {
      expected += "L" + std::to_string(n) + "_" + std::to_string(v) + " " + index.key({n, v}) + "\n";
    }
  }
  expected += "minimal: no (L1_0 ~ L1_1)\n";
  EXPECT_EQ(r.out, expected);
  EXPECT_EQ(run("trees --in " + in + " --level 0").out, "L0_0 ()\nminimal: yes\n");
  EXPECT_EQ(run("trees --in " + in + " --level 5").status, 1);
}

TEST_F(Cli, Shift) {
  const std::string odo = write("odo2.json", serialize(odometer(2, 3)));
  EXPECT_EQ(run("shift --in " + odo + " --path 0,0,0").out, "1,0,0\n");
  EXPECT_EQ(run("shift --in " + odo + " --path 1,0,0 --backward").out, "0,0,0\n");
  EXPECT_EQ(run("shift --in " + odo + " --path 1,1,1").status, 1);
  EXPECT_EQ(run("shift --in " + odo + " --path 0,9").status, 1);
  const GradedGraph p = pascal(4);
  const std::string pin = write("p.json", serialize(p));
  for (const PathPrefix& q : enumerate_paths(p, {4, 2})) {
    const auto next = successor(p, q);
    const CliRun r = run("shift --in " + pin + " --path " + format_path(p, q));
    if (next) {
      EXPECT_EQ(r.out, format_path(p, *next) + "\n");
    } else {
      EXPECT_EQ(r.status, 1);
    }
  }
}

TEST_F(Cli, Check) {
  const std::string g = write("g.json", serialize(pascal(4)));
  const std::string w = write("w.json", serialize_weights(pascal_weights(4, Rational(1, 3))));
  CliRun r = run("check --in " + g + " --weights " + w);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "central: yes (rational, 5 levels)\n");
  ExactWeights bad = pascal_weights(4, Rational(1, 3));
  bad.masses[0][0] = Rational(1, 2);
  const std::string wb = write("b.json", serialize_weights(bad));
  r = run("check --in " + g + " --weights " + wb);
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out.rfind("central: no", 0), 0u);
  const std::string wf =
      write("f.json", serialize_weights(to_float(pascal_weights(4, Rational(1, 3)))));
  EXPECT_EQ(run("check --in " + g + " --weights " + wf).status, 0);
}

TEST_F(Cli, SampleMatchesLibraryAndWorkers) {
  const GradedGraph g = pascal(5);
  const ExactWeights w = pascal_weights(5, Rational(1, 3));
  const std::string gi = write("g.json", serialize(g));
  const std::string wi = write("w.json", serialize_weights(w));
  const CliRun one = run("sample --in " + gi + " --weights " + wi +
                      " --depth 5 --count 3000 --seed 5 --workers 1");
  const CliRun four = run("sample --in " + gi + " --weights " + wi +
                       " --depth 5 --count 3000 --seed 5 --workers 4");
  EXPECT_EQ(one.status, 0);
  EXPECT_EQ(one.out, four.out);
  std::string expected;
  for (const auto& p : PathSampler(g, w, 5).sample_many(3000, 5)) {
    expected += format_path(g, p) + "\n";
  }
  EXPECT_EQ(one.out, expected);
}

TEST_F(Cli, Scheme) {
  const std::string odo = write("odo2.json", serialize(odometer(2, 4)));
  const std::string odow = write("odo2w.json", serialize_weights(odometer_weights(2, 4)));
  CliRun r = run("scheme --exact --depth 4 --in " + odo + " --weights " + odow);
  EXPECT_EQ(r.status, 0);
  const ExactScheme s = exact_scheme(odometer(2, 4), odometer_weights(2, 4), 4);
  EXPECT_EQ(r.out, serialize_scheme(s));
  EXPECT_EQ(s.entries.size(), 16u);
  r = run("scheme --depth 4 --samples 5000 --seed 3 --workers 2 --in " + odo + " --weights " + odow);
  EXPECT_EQ(r.out, serialize_scheme(empirical_scheme(odometer(2, 4), odometer_weights(2, 4), 4,
                                                     5000, 3)));
  r = run("scheme --diagnostic --depth 3 --in " + odo + " --weights " + odow);
  EXPECT_NE(r.out.find("resolution_ratio 1\n"), std::string::npos) << r.out;
  EXPECT_EQ(run("scheme --depth 4 --in " + odo + " --weights " + odow).status, 2);
  EXPECT_EQ(run("scheme --exact --samples 4 --depth 4 --in " + odo + " --weights " + odow).status,
            2);
  EXPECT_EQ(run("scheme --samples 0 --depth 4 --in " + odo + " --weights " + odow).status, 2);
}

TEST_F(Cli, ColorAndCheckColored) {
  const GradedGraph g = doubled_odometer(3);
  const std::string in = write("d.json", serialize(g));
  CliRun r = run("color --in " + in + " --canonical");
  EXPECT_EQ(r.out, serialize_coloring(canonical_coloring(g)));
  r = run("color --in " + in + " --separating --cut 2 --out " + path("c.json"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(slurp(path("c.json")), serialize_coloring(separating_coloring(g, 3, 2)));
  EXPECT_EQ(run("check-colored --in " + in + " --depth 3 --coloring " + path("c.json")).out,
            "definite: yes\n");
  EXPECT_EQ(run("check-colored --in " + in + " --depth 3").status, 0);
  const std::string uni = write("u.json", serialize_coloring(uniform_coloring(g)));
  r = run("check-colored --in " + in + " --depth 3 --coloring " + uni);
  EXPECT_EQ(r.status, 1);
  const auto report = colored_definiteness_check(g, uniform_coloring(g), 3);
  EXPECT_EQ(r.out, "definite: no\nwitness: " + format_path(g, report.witness->first) + " " +
                       format_path(g, report.witness->second) + "\n");
  EXPECT_EQ(run("color --in " + in + " --separating").status, 2);
  EXPECT_EQ(run("color --in " + in + " --canonical --separating --cut 1").status, 2);
}

TEST_F(Cli, Hierarchy) {
  const std::string odo = write("o.json", serialize(odometer(2, 2)));
  const CliRun r = run("hierarchy --in " + odo + " --path 0,1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "0: [0,0]\n1: [0,1] = [0,0] [1,1]\n2: [-2,1] = [-2,-1] [0,1]\n");
}

TEST_F(Cli, StdinInput) {
  const std::string odo = write("o.json", serialize(odometer(2, 3)));
  const CliRun r = run("shift --in - --path 0,1,0 < " + odo);
  EXPECT_EQ(r.out, "1,1,0\n");
}

}  // namespace
}  // namespace bratteli
