#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = glsctl::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("glsctl_unit_" + name);
}

}  // namespace

TEST_CASE("delta grid parsing") {
  CHECK(glsctl::parse_delta_grid("1e-3") == std::vector<double>{1e-3});
  CHECK(glsctl::parse_delta_grid("1e-4,1e-3").size() == 2);
  const auto g = glsctl::parse_delta_grid("1e-6..1e-2");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(1e-6));
  CHECK(g[1] == doctest::Approx(1e-5));
  CHECK(g.back() == doctest::Approx(1e-2));
  const auto lin = glsctl::parse_delta_grid("0.1..0.3 lin 3");
  REQUIRE(lin.size() == 3);
  CHECK(lin[1] == doctest::Approx(0.2));
  CHECK_THROWS(glsctl::parse_delta_grid("0.1..abc"));
}

TEST_CASE("fundamental table as CSV") {
  const auto r = run({"fundamental", "--psi", "exponent beta=1", "--delta", "1e-6..1e-2 log 9"});
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("delta,phi,argmax_p", 0) == 0);
  int rows = 0;
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    const double delta = std::stod(line.substr(0, line.find(',')));
    const double phi = std::stod(line.substr(line.find(',') + 1));
    // exponent family, beta = 1: phi = 1 / (e |log delta|)
    CHECK(phi == doctest::Approx(1.0 / (std::exp(1.0) * std::abs(std::log(delta)))).epsilon(1e-8));
  }
  CHECK(rows == 9);
}

TEST_CASE("JSON reports embed the resolved config") {
  const auto r = run({"norm", "--psi", "degenerate r=2", "--function", "bubble", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["config"]["psi"] == "degenerate r=2");
  CHECK(doc["config"]["command"] == "norm");
  CHECK(doc["config"]["C"] == 1.0);
}

TEST_CASE("one-dimensional verification") {
  const auto r = run({"verify", "theorem3", "--Delta", "1", "--format", "json"});
  CHECK(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.dump().find("\"pass\":true") != std::string::npos);
}

TEST_CASE("identical runs produce identical bytes") {
  const std::vector<std::string> args{"sharpness", "--family", "f0", "--beta", "1", "--d", "2",
                                      "--delta", "1e-4..1e-2 log 3", "--seed", "7", "--format", "json"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("inadmissible delta is rejected with a record") {
  const auto r = run({"fundamental", "--psi", "exponent beta=1", "--delta", "0.9"});
  CHECK(r.status != 0);
  CHECK(r.out.empty());
  const auto doc = nlohmann::json::parse(r.err);
  CHECK(doc["message"].get<std::string>().find("(0, 1/e)") != std::string::npos);
}

TEST_CASE("parse errors") {
  CHECK(run({}).status == 1);
  CHECK(run({"fundamental", "--format", "xml"}).status == 1);
  const auto r = run({"frobnicate"});
  CHECK(r.status == 1);
  CHECK(nlohmann::json::parse(r.err)["error"] == "parse-error");
  CHECK(run({"fundamental", "--psi", "nonsense", "--delta", "0.1"}).status == 2);
}

TEST_CASE("output file and config file") {
  const auto out = scratch("out.csv");
  const auto cfg = scratch("run.ini");
  {
    std::ofstream f(cfg);
    f << "psi = \"degenerate r=2\"\n";
    f << "delta = 0.01\n";
  }
  const auto r = run({"fundamental", "--config", cfg.string(), "--output", out.string()});
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header.rfind("delta,phi", 0) == 0);
  CHECK(std::stod(row.substr(row.find(',') + 1)) == doctest::Approx(0.1).epsilon(1e-15));
  std::filesystem::remove(out);
  std::filesystem::remove(cfg);
}
