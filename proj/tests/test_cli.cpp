// Copyright 2026 The vblast-lab Authors.
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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vblast/analytic.hpp"
#include "vblast/cli.hpp"

using namespace vblast;
using namespace vblast::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"vblast"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

int column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return static_cast<int>(i);
  }
  FAIL("missing column " << name);
  return -1;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "vblast_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("parse_snr_range") {
  CHECK(parse_snr_range("0:30:1").size() == 31);
  CHECK(parse_snr_range("5") == std::vector<double>{5.0});
  CHECK(parse_snr_range("0:20:5") == std::vector<double>{0, 5, 10, 15, 20});
  CHECK(parse_snr_range("0:1:0.1").size() == 11);
  CHECK_THROWS_AS(parse_snr_range("0:10:0"), UsageError);
  CHECK_THROWS_AS(parse_snr_range("10:0:1"), UsageError);
  CHECK_THROWS_AS(parse_snr_range("a:b:c"), UsageError);
  CHECK_THROWS_AS(parse_snr_range(""), UsageError);
  CHECK(parse_real_list("1,2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
  CHECK_THROWS_AS(parse_real_list("1,,2"), UsageError);
}

TEST_CASE("curves table") {
  CurvesOptions o;
  o.snr_db = parse_snr_range("0:30:1");
  const auto t = curves_table(o);
  REQUIRE(t.rows.size() == 31);
  const auto& row = t.rows[20];
  CHECK(row[column(t, "snr_db")] == 20.0);
  CHECK(std::abs(row[column(t, "ber1")] / (1.0 / 800.0) - 1.0) < 0.02);
  CHECK(row[column(t, "bler")] >= row[column(t, "ber1")]);

  auto bfsk = o;
  bfsk.modulation = ModulationSpec::bfsk();
  auto generic = o;
  generic.modulation = ModulationSpec::parse("noncoherent:0.5,0.5");
  const auto a = curves_table(bfsk);
  const auto b = curves_table(generic);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    for (std::size_t c = 0; c < a.rows[i].size(); ++c) {
      CHECK(a.rows[i][c] == doctest::Approx(b.rows[i][c]).epsilon(1e-14));
    }
  }

  o.outage_db = {10.0};
  o.snr_db = {10.0};
  const auto out = curves_table(o);
  CHECK(out.rows[0][column(out, "f1_10db")] == doctest::Approx(analytic::outage_cdf_step1(2, 1.0)));
  CHECK(out.rows[0][column(out, "f2_10db")] == doctest::Approx(analytic::outage_cdf_step2(2, 1.0)));
}

TEST_CASE("rendering") {
  Table t{{"a", "b"}, {{1.0, 0.5}, {2.0, 1e-9}}};
  const auto csv = render_csv(t, "x.manifest.json");
  const auto l = lines(csv);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "# manifest: x.manifest.json");
  CHECK(l[1] == "a,b");
  CHECK(lines(render_csv(t))[0] == "a,b");
  const auto j = render_json(t, "m");
  CHECK(j["manifest"] == "m");
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][1]["b"].get<double>() == 1e-9);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"--help"}).code == kOk);
  CHECK(invoke({"curves", "--help"}).code == kOk);
  CHECK(invoke({}).code == kUsage);
  CHECK(invoke({"curves", "--rx", "1"}).code == kUsage);
  CHECK(invoke({"curves", "--rx", "33"}).code == kUsage);
  CHECK(invoke({"curves", "--snr-db", "1:0:1"}).code == kUsage);
  CHECK(invoke({"curves", "--modulation", "qam"}).code == kUsage);
  CHECK(invoke({"curves", "--rx", "3", "--show-alt-denominator"}).code == kUsage);
  CHECK(invoke({"simulate", "--trials", "0"}).code == kUsage);
  CHECK(invoke({"simulate", "--bogus"}).code == kUsage);
  CHECK(invoke({"validate", "--criteria", "11"}).code == kUsage);
  const auto missing = (scratch("no/such/dir") / "out.csv").string();
  CHECK(invoke({"curves", "--out", missing.c_str()}).code == kIo);
  const auto ok = invoke({"curves", "--snr-db", "10"});
  CHECK(ok.code == kOk);
  CHECK(lines(ok.out).size() == 2);
}

TEST_CASE("simulate output is reproducible and documented") {
  const auto f1 = scratch("a.csv").string();
  const auto f2 = scratch("b.csv").string();
  for (const auto& f : {f1, f2}) {
    REQUIRE(invoke({"simulate", "--snr-db", "0:10:5", "--trials", "5000", "--seed", "9", "--out",
                    f.c_str()})
                .code == kOk);
  }
  // Only the manifest reference differs between the two files.
  auto a = lines(slurp(f1));
  auto b = lines(slurp(f2));
  REQUIRE(a.size() == 5);
  CHECK(a[0] == "# manifest: a.csv.manifest.json");
  a.erase(a.begin());
  b.erase(b.begin());
  CHECK(a == b);

  const auto m = nlohmann::json::parse(slurp(f1 + ".manifest.json"));
  CHECK(m["command"] == "simulate");
  CHECK(m["seed"] == 9);
  CHECK(m["output"] == "a.csv");
  CHECK(m.contains("tool_version"));
  CHECK(m.contains("timestamp"));
  CHECK(m["passed"] == true);
}

TEST_CASE("block errors do not depend on the cancellation mode") {
  const auto genie = invoke({"simulate", "--snr-db", "0:10:5", "--trials", "5000", "--mode", "genie"});
  const auto prop = invoke({"simulate", "--snr-db", "0:10:5", "--trials", "5000", "--mode", "propagate"});
  REQUIRE(genie.code == kOk);
  REQUIRE(prop.code == kOk);
  const auto g = lines(genie.out);
  const auto p = lines(prop.out);
  REQUIRE(g.size() == p.size());
  const auto header = g[0];
  std::vector<std::string> names;
  std::istringstream hs(header);
  for (std::string s; std::getline(hs, s, ',');) names.push_back(s);
  const auto bler_col = std::find(names.begin(), names.end(), "bler_mc") - names.begin();
  for (std::size_t r = 1; r < g.size(); ++r) {
    std::vector<std::string> gc, pc;
    std::istringstream gs(g[r]), ps(p[r]);
    for (std::string s; std::getline(gs, s, ',');) gc.push_back(s);
    for (std::string s; std::getline(ps, s, ',');) pc.push_back(s);
    CHECK(gc[bler_col] == pc[bler_col]);
  }
}

TEST_CASE("validate reports in json") {
  const auto r = invoke({"validate", "--criteria", "7"});
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("checks"));
  const auto f = invoke({"validate", "--criteria", "1", "--inject-fault"});
  CHECK(f.code == kCheckFailure);
}
