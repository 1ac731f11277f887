#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hgf/cli.hpp"

using namespace hgf::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string log;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "hgf");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, log;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, log);
  return {code, out.str(), log.str()};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("hgf_cli_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("norm") {
  const auto r = call({"norm", "--matrix", "1,0,0,1"});
  CHECK(r.code == kOk);
  CHECK(r.out == "0.7071067811865476\n");
  CHECK(call({"norm", "--matrix", "[[1,0],[0,1]]"}).out == r.out);
}

TEST_CASE("bounds") {
  const auto r = call({"bounds", "--d", "0", "--matrix", "0.25,0,0,0.25"});
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["A_est"].get<double>() - 16.0) < 0.8);
  CHECK(std::abs(j["B_est"].get<double>() - 16.0) < 0.8);
  CHECK(j["K"] == 64);
  CHECK(j["converged"] == true);
}

TEST_CASE("glgrid") {
  const auto r = call({"glgrid", "--d", "1", "--det-max", "1.2", "--steps", "24"});
  REQUIRE(r.code == kOk);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "d,det,threshold,gl_frame");
  int rows = 0, frames = 0;
  while (std::getline(is, line)) {
    ++rows;
    frames += line.ends_with(",true") ? 1 : 0;
  }
  CHECK(rows == 24);
  CHECK(frames == 9);  // det = 0.05 k < 0.5 for k = 1..9
}

TEST_CASE("hermite") {
  const auto r = call({"hermite", "--n", "2", "--x", "0"});
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(-0.5311259660135985));
  CHECK(j["residual"].get<double>() < 1e-2);
}

TEST_CASE("validation") {
  RunConfig cfg;
  CHECK(validate(cfg).empty());

  cfg.step = 1.0;
  cfg.d = 10;
  const auto nyq = validate(cfg);
  REQUIRE(nyq.size() == 1);
  CHECK(nyq[0].rfind("[nyquist]", 0) == 0);

  RunConfig neg;
  neg.K = -4;
  const auto diags = validate(neg);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("K must be positive") != std::string::npos);

  RunConfig bad;
  bad.matrix = {1, 2, 2, 4};
  bad.t_list = {0.1, 0.2};
  bad.format = "xml";
  CHECK(validate(bad).size() == 3);

  const RunConfig before = bad;
  (void)validate(bad);
  CHECK(to_json(bad) == to_json(before));
}

TEST_CASE("exit codes") {
  CHECK(call({"frobnicate"}).code == kPrecondition);
  CHECK(call({"norm", "--matrix", "1,2,2,4"}).code == kPrecondition);
  CHECK(call({"bounds", "--K", "abc"}).code == kPrecondition);
  CHECK(call({"bounds", "--matrix", "0.001,0,0,0.001"}).code == kBudget);
  CHECK(call({"bounds", "--step", "1", "--d", "10", "--validate"}).code == kPrecondition);
  CHECK(call({"bounds", "--validate"}).code == kOk);
  CHECK(call({"--help"}).code == kOk);
  CHECK(call({"certify", "--matrix", "0.1,0,0,0.1", "--region-step", "0.125"}).log.find("region step") !=
        std::string::npos);
}

TEST_CASE("config file with flag overrides") {
  const auto dir = scratch_dir("config");
  RunConfig cfg;
  cfg.command = Command::glgrid;
  cfg.d = 2;
  cfg.steps = 5;
  cfg.det_max = 0.5;
  {
    std::ofstream os(dir / "cfg.json");
    os << to_json(cfg).dump();
  }
  RunConfig back;
  apply_json(back, to_json(cfg));
  CHECK(to_json(back) == to_json(cfg));

  const auto r = call({"glgrid", "--config", (dir / "cfg.json").string(), "--steps", "3"});
  REQUIRE(r.code == kOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
  CHECK(r.out.find("\n2,") != std::string::npos);

  RunConfig junk;
  CHECK_THROWS(apply_json(junk, nlohmann::json{{"colour", 1}}));
  CHECK_THROWS(apply_json(junk, nlohmann::json{{"d", "two"}}));
}

TEST_CASE("artifacts are written under OUTPUT_DIR") {
  const auto dir = scratch_dir("output");
  ::setenv("OUTPUT_DIR", dir.c_str(), 1);
  const auto r = call({"glgrid", "--output", "sub/grid.csv"});
  ::unsetenv("OUTPUT_DIR");
  REQUIRE(r.code == kOk);
  CHECK(r.out.empty());
  CHECK(std::filesystem::exists(dir / "sub/grid.csv"));
  CHECK_FALSE(std::filesystem::exists(dir / "sub/grid.csv.tmp"));
}
