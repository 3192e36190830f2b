#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

// Drives the installed binary end to end through a shell. The binary path
// is baked in by the build so the test never guesses.
#ifndef TORODYN_CLI_PATH
#error "TORODYN_CLI_PATH must be defined by the build"
#endif

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() /
          ("torodyn_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  fs::path write(const std::string& name, const Json& content) const {
    fs::path p = dir / name;
    std::ofstream out(p);
    out << content.dump(2);
    return p;
  }
};

int run_cli(const std::string& args) {
  std::string cmd = std::string(TORODYN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc < 0) return -1;
  return WEXITSTATUS(rc);
}

Json load(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return Json::parse(in);
}

}  // namespace

TEST_CASE("reports are byte-stable apart from the header") {
  Workspace ws;
  auto cfg = ws.write("avoid.json", Json{{"base", 2},
                                         {"center", "7/8"},
                                         {"radius", "1/8"},
                                         {"window", 2}});
  auto out_a = ws.dir / "a";
  auto out_b = ws.dir / "b";
  REQUIRE(run_cli("avoid-sft --config " + cfg.string() + " --out " + out_a.string()) == 0);
  REQUIRE(run_cli("avoid-sft --config " + cfg.string() + " --out " + out_b.string()) == 0);
  auto a = load(out_a / "avoid-sft.json");
  auto b = load(out_b / "avoid-sft.json");
  // the header carries the timestamp; everything else must match exactly
  CHECK(a.at("header").at("config_hash") == b.at("header").at("config_hash"));
  a.erase("header");
  b.erase("header");
  CHECK(a == b);
  CHECK(a.at("result").at("inner_sft").at("forbidden_words") == Json::array({"11"}));
}

TEST_CASE("every report carries the envelope") {
  Workspace ws;
  auto cfg = ws.write("map.json", Json{{"matrix", Json::array({Json::array({2, 1}),
                                                               Json::array({1, 1})})}});
  auto out = ws.dir / "out";
  REQUIRE(run_cli("analyze-map --config " + cfg.string() + " --out " + out.string()) == 0);
  auto j = load(out / "analyze-map.json");
  for (const char* k : {"header", "config", "result"}) CHECK(j.contains(k));
  auto& h = j.at("header");
  CHECK(h.at("tool") == "torodyn");
  CHECK(h.at("subcommand") == "analyze-map");
  CHECK(h.contains("config_hash"));
  CHECK(h.contains("timestamp"));
  CHECK(h.contains("elapsed_ms"));
}

TEST_CASE("unknown config fields are a hard error naming the field") {
  Workspace ws;
  auto cfg = ws.write("bad.json", Json{{"base", 2},
                                       {"center", "7/8"},
                                       {"radius", "1/8"},
                                       {"windw", 2}});
  CHECK(run_cli("avoid-sft --config " + cfg.string() + " --out " + ws.dir.string()) == 2);
}

TEST_CASE("domain violations exit with the runtime failure code") {
  Workspace ws;
  auto cfg = ws.write("ball.json", Json{{"base", 2},
                                        {"center", "1/2"},
                                        {"radius", "2/3"},
                                        {"window", 2}});
  CHECK(run_cli("avoid-sft --config " + cfg.string() + " --out " + ws.dir.string()) == 1);
}

TEST_CASE("missing or unreadable configs exit with the usage code") {
  Workspace ws;
  CHECK(run_cli("avoid-sft --out " + ws.dir.string()) == 2);
  CHECK(run_cli("avoid-sft --config " + (ws.dir / "nope.json").string()) == 2);
  CHECK(run_cli("not-a-subcommand") == 2);
}

TEST_CASE("seed overrides reach the sampler") {
  Workspace ws;
  auto cfg = ws.write("sample.json", Json{{"base", 2},
                                          {"center", "7/8"},
                                          {"radius", "1/8"},
                                          {"window", 2},
                                          {"length", 40},
                                          {"seed", 5}});
  auto out1 = ws.dir / "s1";
  auto out2 = ws.dir / "s2";
  REQUIRE(run_cli("sample --config " + cfg.string() + " --out " + out1.string()) == 0);
  REQUIRE(run_cli("sample --config " + cfg.string() + " --seed 6 --out " +
                  out2.string()) == 0);
  auto a = load(out1 / "sample.json");
  auto b = load(out2 / "sample.json");
  CHECK(a.at("config").at("seed") == 5);
  CHECK(b.at("config").at("seed") == 6);
  CHECK(a.at("result").at("digits") != b.at("result").at("digits"));
  CHECK(a.at("result").at("admissible") == true);
}

TEST_CASE("the averaging subcommand writes the trend table") {
  Workspace ws;
  auto cfg = ws.write("avg.json", Json{{"map_times", 3},
                                       {"depth", 6},
                                       {"base", 2},
                                       {"center", "7/8"},
                                       {"radius", "1/8"},
                                       {"window", 2},
                                       {"terms", Json::array({8, 32})}});
  auto out = ws.dir / "avg";
  REQUIRE(run_cli("average --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(fs::exists(out / "tv_curve.csv"));
  auto j = load(out / "average.json");
  REQUIRE(j.at("result").at("tv_curve").size() == 2);
  double tv0 = j.at("result").at("tv_curve")[0].at("total_variation");
  double tv1 = j.at("result").at("tv_curve")[1].at("total_variation");
  CHECK(tv1 < tv0);
}
