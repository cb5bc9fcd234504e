/* Copyright 2026 The Spinflip Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "spinflip/errors.hpp"
#include "spinflip/export.hpp"
#include "spinflip/multispin.hpp"

using namespace spinflip;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

double parse(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  REQUIRE(res.ec == std::errc{});
  REQUIRE(res.ptr == s.data() + s.size());
  return v;
}

}  // namespace

TEST_CASE("format_double reads back bit-exactly") {
  std::mt19937_64 rng(20261016);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t bits = rng();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    const double back = parse(format_double(v));
    CHECK(std::memcmp(&back, &v, sizeof v) == 0);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-HUGE_VAL) == "-inf");
}

TEST_CASE("trajectory and field CSV layout") {
  const auto field = ansatz_protocol(0.5, 5.0);
  const auto traj = integrate_bloch(BlochVector::north(), field, 2.0, 100);
  std::ostringstream t;
  write_trajectory_csv(t, traj);
  const std::string ts = t.str();
  CHECK(ts.find('\r') == std::string::npos);
  const auto tl = lines_of(ts);
  REQUIRE(tl.size() == 102);
  CHECK(tl[0] == "t,sx,sy,sz");
  CHECK(tl[1] == "0,0,0,1");
  CHECK(ts.back() == '\n');

  std::ostringstream f;
  write_field_csv(f, field, 11);
  const auto fl = lines_of(f.str());
  REQUIRE(fl.size() == 12);
  CHECK(fl[0] == "t,Bx,By,Bz");
  CHECK(fl[11].rfind("1,", 0) == 0);
  CHECK(fl[6].rfind("0.5,", 0) == 0);
}

TEST_CASE("scan grid CSV: axis header row then one row per axis1 value") {
  ScanGrid g{"ratio", {0.5, 1.0}, "eta", {0.0, 2.0, 4.0}, {1, 2, 3, 4, 5, 6}};
  std::ostringstream s;
  write_scan_grid_csv(s, g);
  CHECK(s.str() == "ratio\\eta,0,2,4\n0.5,1,2,3\n1,4,5,6\n");
  g.values.pop_back();
  CHECK_THROWS_AS(write_scan_grid_csv(s, g), PreconditionError);
}

TEST_CASE("table CSV validates its shape") {
  const std::vector<std::string> header{"a", "b"};
  const std::vector<std::vector<double>> cols{{1.0, 2.0}, {0.25, -3.0}};
  std::ostringstream s;
  write_table_csv(s, header, cols);
  CHECK(s.str() == "a,b\n1,0.25\n2,-3\n");
  const std::vector<std::vector<double>> ragged{{1.0, 2.0}, {0.25}};
  CHECK_THROWS_AS(write_table_csv(s, header, ragged), PreconditionError);
  const std::vector<std::string> short_header{"a"};
  CHECK_THROWS_AS(write_table_csv(s, short_header, cols), PreconditionError);
}

TEST_CASE("protocol JSON carries the design parameters") {
  const auto field = ansatz_protocol(2.5, 3.0);
  const auto j = nlohmann::json::parse(protocol_json(field));
  CHECK(j.at("kappa").get<double>() == 2.5);
  CHECK(j.at("eta").get<double>() == 3.0);
  CHECK(j.at("t_f").get<double>() == field.duration());
  CHECK(j.at("method").get<std::string>() == field.info().method);
  CHECK(j.at("params").is_object());

  const auto plain = nlohmann::json::parse(protocol_json(FieldProtocol::constant(1.0, Vec3(0, 1, 0))));
  CHECK(plain.at("kappa").is_null());
}

TEST_CASE("robustness JSON round trip") {
  RobustnessReport r;
  r.eta = 20.0;
  r.epsilon = 0.01;
  r.gamma_bar = 2.0;
  r.kappa = {1.0, 2.0};
  r.lambda = {1e-7, 3e-9};
  r.magic = {{2.0564, 7e-9}};
  const auto j = nlohmann::json::parse(robustness_json(r));
  CHECK(j.at("kappa").get<std::vector<double>>() == r.kappa);
  CHECK(j.at("lambda").get<std::vector<double>>() == r.lambda);
  CHECK(j.at("magic").at(0).at("kappa").get<double>() == 2.0564);
  CHECK(j.at("n_quad").get<int>() == r.n_quad);
}

TEST_CASE("write_text_file creates directories and writes bytes verbatim") {
  const auto dir = std::filesystem::temp_directory_path() / "spinflip_export_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "a" / "b.csv";
  write_text_file(path, "x\n1\n");
  std::ifstream in(path, std::ios::binary);
  std::string got((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(got == "x\n1\n");
  std::filesystem::remove_all(dir);
}
