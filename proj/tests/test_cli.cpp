#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "midlayer/cli.hpp"

using namespace midlayer;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("documented examples") {
  const auto count = run({"count", "exact", "--d", "2", "--q", "4"});
  CHECK(count.code == kExitOk);
  CHECK(count.json()["c_q"] == "732");

  const auto lk = run({"clusters", "lk", "--d", "3", "--q", "4", "--k", "1"});
  CHECK(lk.code == kExitOk);
  CHECK(lk.json()["L_k"] == "5/2");

  const auto info = run({"graph", "info", "--d", "3"});
  CHECK(info.code == kExitOk);
  CHECK(info.json()["N"] == 20);
  CHECK(info.json()["edges"] == 30);
  CHECK(info.json()["regular"] == 3);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"graph"}).code == kExitUsage);
  CHECK(run({"frobnicate", "now"}).code == kExitUsage);
  CHECK(run({"graph", "info", "--bogus", "1"}).code == kExitUsage);
  CHECK(run({"graph", "info", "--d", "notanumber"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"graph", "info", "--help"}).code == kExitOk);
}

TEST_CASE("parameter errors exit 2 with a JSON diagnostic") {
  const auto bad_d = run({"graph", "info", "--d", "1"});
  CHECK(bad_d.code == kExitInvalid);
  CHECK(Json::parse(bad_d.err)["error"] == "parameter");
  CHECK(run({"graph", "info", "--d", "12"}).code == kExitInvalid);
  CHECK(run({"count", "exact", "--q", "40"}).code == kExitInvalid);
  CHECK(run({"containers", "pair", "--d", "3", "--vertices", "0", "--psi", "2"}).code == kExitInvalid);
  CHECK(run({"polymers", "weight", "--d", "2", "--vertices", "0,5"}).code == kExitInvalid);
  CHECK(run({"flaw", "analyze", "--d", "2", "--coloring", "1,1,1,1,1,1"}).code == kExitInvalid);
  CHECK(run({"count", "exact", "--method", "magic"}).code == kExitInvalid);
}

TEST_CASE("resource errors exit 3 with an estimate") {
  const auto r = run({"count", "exact", "--d", "3", "--q", "4", "--method", "brute"});
  CHECK(r.code == kExitResource);
  const Json e = Json::parse(r.err);
  CHECK(e["error"] == "resource");
  CHECK(e["estimate"].get<double>() > 0);
  CHECK(run({"xi", "compute", "--d", "3", "--max-size", "2", "--family-cap", "10"}).code == kExitResource);
}

TEST_CASE("every command runs at desk scale") {
  const std::vector<std::vector<std::string>> commands{
      {"graph", "info", "--d", "4"},
      {"iso", "check", "--d", "4", "--k", "2"},
      {"iso", "check", "--d", "4", "--vertices", "0,1"},
      {"count", "exact", "--d", "3", "--q", "3", "--method", "layer"},
      {"flaw", "analyze", "--d", "2", "--q", "4"},
      {"flaw", "analyze", "--d", "2", "--q", "4", "--coloring", "1,1,1,3,3,3"},
      {"polymers", "enumerate", "--d", "3", "--max-size", "2"},
      {"polymers", "enumerate", "--d", "3", "--max-size", "3", "--vertex", "0"},
      {"polymers", "weight", "--d", "2", "--q", "4", "--vertices", "0"},
      {"xi", "compute", "--d", "2", "--q", "4"},
      {"capture", "check", "--d", "2", "--q", "4", "--max-size", "1"},
      {"clusters", "lk", "--d", "3", "--q", "4", "--k", "2"},
      {"expansion", "approx", "--d", "5", "--q", "4"},
      {"expansion", "compare", "--d", "3", "--q", "4"},
      {"expansion", "logcheck", "--d", "2", "--q", "4", "--max-size", "2", "--k", "4"},
      {"expansion", "bounds", "--d", "3", "--q", "4", "--k", "3", "--max-size", "3"},
      {"kp", "check", "--d", "2", "--q", "4", "--max-size", "2"},
      {"containers", "cover", "--d", "3"},
      {"containers", "cover", "--d", "3", "--vertices", "0,1,2"},
      {"containers", "pair", "--d", "3", "--vertices", "0"},
      {"containers", "verify", "--d", "3", "--vertices", "0", "--F", "10,11,12", "--S", "0"},
      {"sample", "stats", "--d", "2", "--q", "4", "--samples", "200"},
  };
  for (const auto& c : commands) {
    CAPTURE(c[0] + " " + c[1]);
    const auto r = run(c);
    CHECK(r.code == kExitOk);
    CHECK_NOTHROW(r.json());
    CHECK(r.err.empty());
  }
}

TEST_CASE("asymptotic commands separate reported from asserted") {
  for (const std::vector<std::string>& c :
       {std::vector<std::string>{"expansion", "approx", "--d", "3", "--q", "4"},
        std::vector<std::string>{"expansion", "compare", "--d", "3", "--q", "4"},
        std::vector<std::string>{"kp", "check", "--d", "2", "--q", "4", "--max-size", "2"},
        std::vector<std::string>{"iso", "check", "--d", "3"},
        std::vector<std::string>{"sample", "stats", "--samples", "50"}}) {
    const Json j = run(c).json();
    CHECK(j.contains("reported"));
    CHECK(j.contains("asserted"));
  }
}

TEST_CASE("rationals are emitted as p/q strings") {
  const Json w = run({"polymers", "weight", "--d", "2", "--q", "4", "--vertices", "0"}).json();
  CHECK(w["weight"] == "1/4");
  const Json xi = run({"xi", "compute", "--d", "2", "--q", "4"}).json();
  CHECK(xi["xi"] == "183/16");
  const Json lk = run({"clusters", "lk", "--d", "3", "--q", "4", "--k", "2"}).json();
  CHECK(lk["L_k"] == "5/4");
  CHECK(lk["ordered_by_shape"]["1+1"] == "200");
}

TEST_CASE("sample run emits one JSON line per sample, identically across runs and workers") {
  const auto a = run({"sample", "run", "--samples", "25", "--seed", "4"});
  const auto b = run({"sample", "run", "--samples", "25", "--seed", "4", "--workers", "2"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    CHECK(j["index"] == n);
    ++n;
  }
  CHECK(n == 25);
}

TEST_CASE("--out writes to a file") {
  const std::string path = "cli_out_test.json";
  std::remove(path.c_str());
  const auto r = run({"graph", "info", "--d", "2", "--out", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const Json j = Json::parse(in);
  CHECK(j["N"] == 6);
  std::remove(path.c_str());
}

TEST_CASE("commands are pure") {
  const std::vector<std::string> c{"expansion", "approx", "--d", "4", "--q", "6"};
  CHECK(run(c).out == run(c).out);
}
