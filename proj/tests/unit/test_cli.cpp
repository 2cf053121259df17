// Copyright 2026 The tempkd Authors
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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace tkd::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int rc = run_command(args, out, err);
  return {rc, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tkd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, std::string_view text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  std::string xy() { return write("xy.json", bundled_spec("xy-qubit")); }

  fs::path dir_;
};

TEST_F(CliTest, ValidateBundledSpec) {
  auto r = run({"validate", xy()});
  ASSERT_EQ(r.rc, 0) << r.err;
  auto doc = json::parse(r.out);
  const auto& rep = doc["report"];
  EXPECT_TRUE(rep["ok"].get<bool>());
  EXPECT_LT(rep["initial_state"]["hermiticity_defect"].get<double>(), 1e-12);
  EXPECT_LT(rep["initial_state"]["trace_defect"].get<double>(), 1e-12);
  EXPECT_LT(rep["channels"][0]["tp_defect"].get<double>(), 1e-12);
}

TEST_F(CliTest, DistRightXyTable) {
  auto r = run({"dist", xy(), "--kind", "right"});
  ASSERT_EQ(r.rc, 0) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["format"], kResultFormat);
  EXPECT_EQ(doc["kind"], "kd_right");
  const double im[4] = {0.25, -0.25, -0.25, 0.25};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(doc["values"][i][0].get<double>(), 0.25, 1e-12);
    EXPECT_NEAR(doc["values"][i][1].get<double>(), im[i], 1e-12);
  }
  EXPECT_NEAR(doc["diagnostics"]["nonclassicality"].get<double>(), std::sqrt(2.0) - 1, 1e-12);
}

TEST_F(CliTest, DemosPassAndAreByteStable) {
  for (const auto& name : demo_names()) {
    auto a = run({"demo", name});
    auto b = run({"demo", name});
    EXPECT_EQ(a.rc, 0) << name << a.err;
    EXPECT_EQ(a.out, b.out);
    auto doc = json::parse(a.out);
    EXPECT_TRUE(doc["ok"].get<bool>()) << name;
  }
  auto doc = json::parse(run({"demo", "replacement"}).out);
  EXPECT_LT(std::abs(doc["nonclassicality"].get<double>()), 1e-14);
}

TEST_F(CliTest, ShotOutputIsDeterministicForSeed) {
  const auto spec = xy();
  std::vector<std::string> args{"circuit-sim", spec, "--kind", "right", "--point=0.3,1.1",
                                "--shots",     "10000", "--seed", "42"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.rc, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  args.back() = "43";
  EXPECT_NE(run(args).out, a.out);
}

TEST_F(CliTest, ResultsReverifyAgainstSpec) {
  const auto spec = xy();
  const std::vector<std::vector<std::string>> cmds{
      {"dist", spec, "--kind", "doubled"},
      {"nonclassicality", spec, "--kind", "right", "--variant", "log"},
      {"witness", spec},
      {"state", spec, "--kind", "doubled"},
      {"charfn", spec, "--kind", "left"},
      {"circuit-sim", spec, "--kind", "doubled", "--point=0.1,0.2,0.3,0.4", "--shots", "100"}};
  for (const auto& c : cmds) {
    auto r = run(c);
    ASSERT_EQ(r.rc, 0) << c[0] << ": " << r.err;
    const auto res = write("res.json", r.out);
    auto v = run({"verify", res, spec});
    EXPECT_EQ(v.rc, 0) << c[0] << ": " << v.out;
  }
  auto demo = write("demo.json", run({"demo", "measure-replace"}).out);
  EXPECT_EQ(run({"verify", demo}).rc, 0);
}

TEST_F(CliTest, TamperedResultFailsVerification) {
  const auto spec = xy();
  auto doc = json::parse(run({"dist", spec, "--kind", "right"}).out);
  doc["values"][0][1] = 0.26;
  auto v = run({"verify", write("res.json", doc.dump()), spec});
  EXPECT_EQ(v.rc, kValidation);
  EXPECT_NE(v.out.find("$.values[0][1]"), std::string::npos);

  auto other = write("other.json", bundled_spec("replacement"));
  auto good = write("good.json", run({"dist", spec, "--kind", "right"}).out);
  EXPECT_EQ(run({"verify", good, other}).rc, kValidation);
}

TEST_F(CliTest, CsvExport) {
  auto r = run({"dist", xy(), "--kind", "right", "--format", "csv"});
  ASSERT_EQ(r.rc, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t0,t1,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).rc, kUsage);
  EXPECT_EQ(run({"frobnicate"}).rc, kUsage);
  EXPECT_EQ(run({"dist", xy(), "--kind", "sideways"}).rc, kUsage);
  EXPECT_EQ(run({"dist", (dir_ / "missing.json").string(), "--kind", "right"}).rc, kParse);

  auto r = run({"dist", write("bad.json", "{\n  \"format\": \"tkd-process/1\",\n  \"dims\": [2,\n"),
                "--kind", "right"});
  EXPECT_EQ(r.rc, kParse);
  EXPECT_NE(r.err.find("line"), std::string::npos);
}

TEST_F(CliTest, FieldAnchoredParseErrors) {
  json spec = json::parse(bundled_spec("xy-qubit"));
  spec["channels"][0] = {{"kind", "kraus"}, {"kraus", {{{1, 0}, {0}}}}};
  auto r = run({"dist", write("s.json", spec.dump()), "--kind", "right"});
  EXPECT_EQ(r.rc, kParse);
  EXPECT_NE(r.err.find("channels[0].kraus[0][1]"), std::string::npos) << r.err;

  spec = json::parse(bundled_spec("xy-qubit"));
  spec["channels"][0]["kind"] = "teleport";
  r = run({"dist", write("s.json", spec.dump()), "--kind", "right"});
  EXPECT_EQ(r.rc, kParse);
  EXPECT_NE(r.err.find("channels[0].kind"), std::string::npos);

  spec = json::parse(bundled_spec("xy-qubit"));
  spec["schedules"]["main"].erase(1);
  r = run({"dist", write("s.json", spec.dump()), "--kind", "right"});
  EXPECT_EQ(r.rc, kParse);
  EXPECT_NE(r.err.find("schedules.main"), std::string::npos);
}

TEST_F(CliTest, NumericalValidationFailures) {
  json spec = json::parse(bundled_spec("xy-qubit"));
  spec["channels"][0] = {{"kind", "kraus"}, {"kraus", {{{1, 0}, {0, 0.9}}}}};
  const auto path = write("s.json", spec.dump());
  auto r = run({"dist", path, "--kind", "right"});
  EXPECT_EQ(r.rc, kValidation);
  EXPECT_NE(r.err.find("channels[0]"), std::string::npos);

  r = run({"validate", path});
  EXPECT_EQ(r.rc, kValidation);
  auto doc = json::parse(r.out);
  EXPECT_FALSE(doc["report"]["ok"].get<bool>());
  EXPECT_NEAR(doc["report"]["channels"][0]["tp_defect"].get<double>(), 0.19, 1e-12);

  spec = json::parse(bundled_spec("xy-qubit"));
  spec["initial_state"] = {{0.5, 0}, {0, 0.6}};
  r = run({"validate", write("s2.json", spec.dump())});
  EXPECT_EQ(r.rc, kValidation);
  EXPECT_FALSE(json::parse(r.out)["report"]["initial_state"]["ok"].get<bool>());
}

TEST_F(CliTest, ToleranceOverrides) {
  json spec = json::parse(bundled_spec("xy-qubit"));
  spec["initial_state"] = {{0.5, 0}, {0, 0.5 + 1e-7}};
  spec.erase("options");
  const auto path = write("s.json", spec.dump());
  EXPECT_EQ(run({"validate", path}).rc, kValidation);
  EXPECT_EQ(run({"validate", path, "--tolerance", "1e-6"}).rc, kOk);

  ::setenv("TKD_TOLERANCE", "1e-6", 1);
  auto r = run({"validate", path});
  ::unsetenv("TKD_TOLERANCE");
  EXPECT_EQ(r.rc, kOk);
  EXPECT_EQ(json::parse(r.out)["diagnostics"]["tolerance"].get<double>(), 1e-6);

  spec["options"] = {{"tolerance", 1e-5}};
  EXPECT_EQ(run({"validate", write("s2.json", spec.dump())}).rc, kOk);
}

TEST(SpecIo, Encodings) {
  EXPECT_EQ(fnv1a64(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(fnv1a64("a"), "fnv1a64:af63dc4c8601ec8c");
  const double x = 0.1 + 0.2;
  const json j = encode(cplx(x, -1.0 / 3.0));
  const auto back = decode_scalar(json::parse(j.dump()), "");
  EXPECT_EQ(back, cplx(x, -1.0 / 3.0));
  EXPECT_THROW(decode_matrix(json::parse("[[1,2],[3]]"), "m"), ParseError);
  EXPECT_EQ(decode_scalar(json(2.5), ""), cplx(2.5, 0.0));
}

TEST(SpecIo, PureStatesAndNamedObservables) {
  auto s = parse_spec(bundled_spec("measure-replace"));
  EXPECT_EQ(s.dims, (std::vector<std::size_t>{2, 2}));
  EXPECT_NEAR(s.initial_state(1, 1).real(), 0.36, 1e-15);
  EXPECT_NEAR(s.initial_state(0, 1).imag(), -0.48, 1e-15);
  auto p = build_process(s);
  EXPECT_EQ(p.steps(), 1u);
  auto sch = build_schedule(s, "main");
  EXPECT_EQ(sch.size(), 2u);
  EXPECT_THROW(build_schedule(s, "nope"), ParseError);
}

}  // namespace
}  // namespace tkd::cli
