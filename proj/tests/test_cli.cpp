#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "maxsusy/backgrounds.hpp"
#include "maxsusy/io.hpp"

using namespace maxsusy;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stderr is dropped; only stdout is part of the contract
Run run(const std::string& args) {
  std::string cmd = std::string(MAXSUSY_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(MAXSUSY_TEST_DATA) + "/" + name; }

std::string tmp(const char* name) {
  return (std::filesystem::temp_directory_path() / ("maxsusy_cli_" + std::to_string(::getpid()) + "_" + name)).string();
}

json parse(const std::string& s) { return json::parse(s); }

}  // namespace

TEST_CASE("verify exit codes") {
  struct Row {
    const char* args;
    int code;
  };
  const Row rows[] = {
      {"verify --catalog flat", 0},
      {"verify --catalog cw-max", 0},
      {"verify --catalog ads4xs7 --param s=-6", 0},
      {"verify --catalog ads7xs4 --param s=6", 0},
      {"verify --catalog cw --param lambda=-1,-1,-1,-1/4,-1/4,-1/4,-1/4,-1/4,-1/4", 0},
      {"verify --catalog cw --param lambda=-1,-1,-1,-1/4,-1/4,-1/4,-1/4,-1/4,-1/4 --param mu=2", 1},
      {"verify --catalog cw --param lambda=-101/100,-1,-1,-1/4,-1/4,-1/4,-1/4,-1/4,-1/4", 1},
      {"verify --catalog cw-perturbed", 1},
      {"verify --catalog ads4xs7 --param s=6", 2},
      {"verify --catalog ads4xs7 --param s=-1/8", 2},
      {"verify --catalog ads7xs4", 2},
      {"verify --catalog cw --param lambda=0,-1,-1,-1/4,-1/4,-1/4,-1/4,-1/4,-1/4", 2},
      {"verify --catalog flat --param s=1", 2},
      {"verify --catalog nowhere", 2},
      {"verify", 2},
      {"verify --catalog flat --bogus", 2},
      {"", 2},
  };
  for (const auto& row : rows) {
    CAPTURE(row.args);
    auto r = run(row.args);
    CHECK(r.code == row.code);
    if (row.code == 2 && !r.out.empty()) CHECK(parse(r.out).at("schema") == "maxsusy/error/v1");
    if (row.code < 2) CHECK(parse(r.out).at("verified") == (row.code == 0));
  }
}

TEST_CASE("verify on files") {
  auto flat = run("verify --file " + data("flat.json"));
  CHECK(flat.code == 0);

  auto broken = run("verify --file " + data("broken.json"));
  CHECK(broken.code == 1);
  auto rep = parse(broken.out);
  CHECK(rep.at("flux_closed") == false);
  CHECK(rep.at("background").at("kind") == "broken");

  auto bad = run("verify --file " + data("bad_expression.json"));
  CHECK(bad.code == 2);
  auto err = parse(bad.out).at("error");
  CHECK(err.at("kind") == "SyntaxError");
  CHECK(err.at("line") == 1);
  CHECK(err.at("column") == 5);

  CHECK(run("verify --file " + data("cw_catalog.json")).code == 0);
  CHECK(run("verify --file " + data("no_such_file.json")).code == 2);
  CHECK(run("verify --file " + data("flat.json") + " --catalog flat").code == 2);
}

TEST_CASE("verify report contents") {
  auto r = run("verify --catalog cw --param lambda=-101/100,-1,-1,-1/4,-1/4,-1/4,-1/4,-1/4,-1/4");
  auto rep = parse(r.out);
  CHECK(rep.at("einstein").at("holds") == false);
  CHECK(rep.at("einstein").at("nonzero_components").size() == 1);
  CHECK(rep.at("susy").at("upper_bound").get<int>() < 32);

  auto ads = parse(run("verify --catalog ads7xs4 --param s=6").out);
  CHECK(ads.at("scalar_curvature") == "6");
  CHECK(ads.at("background").at("params").at("s") == "6");

  auto k = parse(run("verify --catalog cw-max --killing").out);
  CHECK(k.at("killing_dim") == 38);
  CHECK(run("verify --catalog flat --killing").code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const char* args : {"verify --catalog cw-max", "verify --catalog cw-perturbed --seed 7",
                           "verify --catalog ads4xs7 --param s=-6 --samples 2 --threads 1"}) {
    CAPTURE(args);
    auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
  CHECK(parse(run("verify --catalog cw-perturbed --seed 7").out).at("susy").at("seed") == 7);

  // thread count does not change the answer
  CHECK(run("verify --catalog cw-max --threads 1").out == run("verify --catalog cw-max --threads 4").out);

  auto path = tmp("report.json");
  CHECK(run("verify --catalog cw-max --out " + path).code == 0);
  std::ifstream in(path);
  std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(file == run("verify --catalog cw-max").out);
  std::filesystem::remove(path);
}

TEST_CASE("scan-cw") {
  auto empty = run("scan-cw");
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());

  auto deg = run("scan-cw --block 3:-1:0:1 --block 6:-1/4:-1/4:1");
  CHECK(deg.code == 0);
  std::vector<json> lines;
  std::istringstream ss(deg.out);
  for (std::string l; std::getline(ss, l);) lines.push_back(json::parse(l));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].at("maximal") == true);
  CHECK(lines[1].at("degenerate") == true);
  CHECK(lines[1].at("skipped") == true);
  CHECK(!lines[1].contains("maximal"));

  CHECK(run("scan-cw --block 3:x").code == 2);
  CHECK(run("scan-cw --block 3:-1:0:1").code == 2);
  CHECK(run("scan-cw --block 9:-1:0:0").code == 2);
  CHECK(run("scan-cw --block 9:-1:-1:1 --mu q").code == 2);

  std::string grid = "scan-cw --block 3:-2:-1:1/2 --block 6:-1/2:-1/4:1/4";
  CHECK(run(grid + " --threads 1").out == run(grid + " --threads 3").out);
}

TEST_CASE("reduce and oxidize") {
  auto iia = tmp("iia.json"), back = tmp("back.json");
  auto r = run("reduce --catalog flat --along x10 --out " + iia);
  CHECK(r.code == 0);
  std::ifstream in(iia);
  auto doc = json::parse(in);
  CHECK(doc.at("type") == "iia");
  CHECK(doc.at("dilaton_exp") == "1");
  CHECK(doc.at("A1").empty());
  CHECK(doc.at("H3").empty());
  CHECK(doc.at("G4").empty());

  CHECK(run("oxidize --file " + iia + " --out " + back).code == 0);
  std::ifstream bin(back);
  auto bg = io::background_from_json(json::parse(bin));
  auto flat = minkowski11();
  CHECK(bg.metric().coframe() == flat.metric().coframe());
  CHECK(bg.flux().is_zero());
  CHECK(run("verify --file " + back).code == 0);

  auto bad = run("reduce --catalog cw-max --along x9");
  CHECK(bad.code == 1);
  CHECK(parse(bad.out).at("error").at("kind") == "NotInvariant");
  CHECK(run("reduce --catalog flat --along x0").code == 1);
  CHECK(run("reduce --catalog flat --along nowhere").code == 2);
  CHECK(run("reduce --catalog flat").code == 2);
  CHECK(run("oxidize --file " + data("flat.json")).code == 2);
  std::filesystem::remove(iia);
  std::filesystem::remove(back);
}

TEST_CASE("catalog listing") {
  auto a = run("catalog"), b = run("catalog");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto list = parse(a.out);
  std::vector<std::string> kinds;
  for (const auto& e : list) kinds.push_back(e.at("kind"));
  CHECK(kinds == std::vector<std::string>{"flat", "cw", "cw-max", "cw-perturbed", "ads4xs7", "ads7xs4"});
  CHECK(a.out.find("6|s| a rational square") != std::string::npos);
}
