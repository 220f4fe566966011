#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nilself/cli.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nilself;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> const &args)
{
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(std::string const &name, std::string const &content)
{
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

} // namespace

TEST_CASE("group summary")
{
  auto r = run({"group", "n34"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Hirsch length 13\n") != std::string::npos);
  CHECK(r.out.find("center rank 5\n") != std::string::npos);
  auto j = nlohmann::json::parse(run({"group", "heisenberg", "--format", "json"}).out);
  CHECK(j["hirsch_length"] == 3);
  CHECK(j["center_rank"] == 1);
  CHECK(j["basis"][2]["name"] == "[a,b]");
  CHECK(run({"group", "nonsense"}).code == 2);
}

TEST_CASE("adding machine portrait and action")
{
  auto r = run({"rep", "--group", "free_abelian:1", "--endo", "double", "--element", "a", "--depth", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "group free_abelian:1\nendo double\nelement a\nportrait alphabet=2 depth=3\n"
                 "  root: (0 1)\n  1: (0 1)\n  11: (0 1)\n");
  CHECK(run({"act", "--group", "free_abelian:1", "--endo", "double", "--element", "a", "--word", "110"}).out ==
        "001\n");
  CHECK(run({"act", "--group", "free_abelian:1", "--endo", "double", "--element", "a^-1", "--word", "000"}).out ==
        "111\n");
  auto dot = run({"portrait", "--group", "free_abelian:1", "--endo", "double", "--element", "a", "--format", "dot"});
  CHECK(dot.out.rfind("digraph", 0) == 0);
}

TEST_CASE("automaton export")
{
  auto r = run({"rep", "--group", "free_abelian:1", "--endo", "double"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["alphabet"] == 2);
  auto const &a = j["generators"][0]["automaton"];
  CHECK(a["states"].size() == 2);
  CHECK(a["initial"] == 0);

  auto h = nlohmann::json::parse(run({"rep", "--group", "heisenberg", "--endo", "psi:2,0,0"}).out);
  CHECK(h["alphabet"] == 16);
  CHECK(h["generators"].size() == 2);
  auto dm = run({"rep", "--group", "ut:3", "--endo", "dm:2", "--format", "text"});
  CHECK(dm.code == 0);
  CHECK(dm.out.find("alphabet 16\n") != std::string::npos);
  CHECK(run({"rep", "--group", "ut:3", "--endo", "dm:2", "--format", "dot"}).out.rfind("digraph", 0) == 0);
}

TEST_CASE("identical invocations give identical output")
{
  for (auto const &args : std::vector<std::vector<std::string>>{
           {"rep", "--group", "heisenberg"},
           {"rep", "--group", "two_gen_c3:1,0", "--endo", "psi:2,-1,1", "--element", "a*b", "--format", "json"},
           {"verify", "dm"}}) {
    auto first = run(args), second = run(args);
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("verify suites")
{
  auto r = run({"verify", "n34-relations"});
  CHECK(r.code == 0);
  CHECK(r.out.find("suite n34-relations: PASS") != std::string::npos);
  CHECK(run({"verify", "consistency", "--group", "ut:4"}).code == 0);
  CHECK(run({"verify", "nothing"}).code == 2);
}

TEST_CASE("witness from a G-data file")
{
  auto path = temp_file("nilself_cli_witness.gdata", "group n34\npart\na^2 -> a\nb -> 1\nc -> 1\nd -> 1\n"
                                                      "part\na -> a\nb -> b\nc -> c\nd -> d\n");
  auto r = run({"witness", "--data", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("witness generators:") != std::string::npos);
  auto j = nlohmann::json::parse(run({"witness", "--data", path, "--format", "json"}).out);
  CHECK(j["verified"] == true);
  CHECK(j["parts"] == 2);
  CHECK(run({"witness", "--group", "heisenberg", "--data", path}).code == 2);
  CHECK(run({"witness", "--data", "/nonexistent/file"}).code == 2);
}

TEST_CASE("usage errors and rejections")
{
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"portrait", "--group", "heisenberg"}).code == 2);
  CHECK(run({"portrait", "--group", "heisenberg", "--element", "a^2*[a,b"}).code == 2);
  CHECK(run({"portrait", "--group", "heisenberg", "--element", "a", "--endo", "bogus"}).code == 2);
  CHECK(run({"act", "--group", "free_abelian:1", "--element", "a", "--word", "012"}).code == 2);
  // a -> a^2, b -> a is not injective
  auto r = run({"portrait", "--group", "heisenberg", "--element", "a", "--endo", "images:a^2;a"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") == 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("depth cap from the environment")
{
  ::setenv("SELFSIM_MAX_DEPTH", "2", 1);
  auto r = run({"portrait", "--group", "free_abelian:1", "--endo", "double", "--element", "a", "--depth", "5"});
  ::unsetenv("SELFSIM_MAX_DEPTH");
  CHECK(r.code == 0);
  CHECK(r.out.find("depth=2") != std::string::npos);
  CHECK(r.err.find("clamped") != std::string::npos);
}
