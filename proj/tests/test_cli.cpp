#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "speciallocus/cli.hpp"

using namespace speciallocus;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

std::filesystem::path tmp_cache() {
  auto p = std::filesystem::temp_directory_path() / ("speciallocus_cli_test_" + std::to_string(::getpid()));
  return p;
}

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), {"--cache-dir", tmp_cache().string()});
  std::ostringstream out, err;
  int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(CliConfig, DefaultsAndValidation) {
  Config c;
  EXPECT_EQ(c.precision_bits, 256);
  EXPECT_EQ(c.M_max, 20u);
  EXPECT_EQ(c.search_cap, 1000000u);
  EXPECT_EQ(c.enumeration_budget, 10000u);
  EXPECT_EQ(c.cache_dir, "./cache");
  EXPECT_NO_THROW(c.validate());
  c.search_cap = 0;
  EXPECT_ANY_THROW(c.validate());
  ::setenv("SPECIALLOCUS_CACHE", "/tmp/elsewhere", 1);
  EXPECT_EQ(default_config().cache_dir, "/tmp/elsewhere");
  ::unsetenv("SPECIALLOCUS_CACHE");
  EXPECT_EQ(default_config().cache_dir, "./cache");
}

TEST(CliDispatch, DocumentedExamples) {
  auto cg = run({"classgroup", "-23"});
  ASSERT_EQ(cg.code, 0) << cg.err;
  EXPECT_EQ(cg.j()["h"], 3);
  EXPECT_EQ(cg.j()["D"], "-23");
  EXPECT_EQ(cg.j()["forms"].size(), 3u);
  EXPECT_EQ(cg.j()["structure"], json::array({3}));

  auto lab = run({"label", "1", "2", "3"});
  ASSERT_EQ(lab.code, 0) << lab.err;
  EXPECT_EQ(lab.j()["pairwise"], json::parse("[[1,2,3],[2,1,6],[3,6,1]]"));

  auto mi = run({"group", "minindex", "11", "12"});
  ASSERT_EQ(mi.code, 0) << mi.err;
  EXPECT_EQ(mi.j(), json::parse(R"({"index":11,"witness_order":60})"));
}

TEST(CliDispatch, ExitCodes) {
  EXPECT_EQ(run({"frobnicate", "1"}).code, 64);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"group", "order"}).code, 64);
  EXPECT_EQ(run({"classgroup", "5"}).code, 1);
  EXPECT_EQ(run({"classgroup", "abc"}).code, 1);
  EXPECT_EQ(run({"chebotarev", "1", "10"}).code, 1);
  EXPECT_EQ(run({"--mmax", "2", "modpoly", "3"}).code, 2);
  EXPECT_EQ(run({"group", "normal", "49"}).code, 2);
  EXPECT_EQ(run({"--search-cap", "20", "splitprime", "-23", "--min", "50"}).code, 2);
  auto usage = run({"frobnicate"});
  EXPECT_NE(usage.err.find("Usage"), std::string::npos);
}

TEST(CliDispatch, SchemasAndBigIntegersAsStrings) {
  auto h = run({"hilbert", "-23"});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_EQ(h.j()["degree"], 3);
  EXPECT_EQ(h.j()["coeffs"][0], "1");
  EXPECT_EQ(h.j()["coeffs"][3], "12771880859375");
  // warm cache gives identical bytes
  EXPECT_EQ(run({"hilbert", "-23"}).out, h.out);
  std::ifstream f(tmp_cache() / "hd_23.txt");
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "format=1");

  auto mp = run({"modpoly", "2"});
  ASSERT_EQ(mp.code, 0) << mp.err;
  EXPECT_EQ(mp.j()["psi"], 3);
  EXPECT_EQ(mp.j()["check"], "ok");
  EXPECT_TRUE(std::filesystem::exists(tmp_cache() / "phi_2.txt"));

  auto sp = run({"split", "3", "-23"});
  EXPECT_EQ(sp.j(), json::parse(R"({"split":true})"));

  auto inc = run({"inclusion", "-23", "2"});
  ASSERT_EQ(inc.code, 0) << inc.err;
  EXPECT_TRUE(inc.j()["holds"].get<bool>());

  auto d = run({"descent", "3", "2", "5", "1000"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_TRUE(d.j()["steps"][0]["A"].is_string());
  EXPECT_FALSE(d.j()["inclusion_forced"].get<bool>());

  auto l71 = run({"lemma71", "1", "1", "-2999", "-2999"});
  ASSERT_EQ(l71.code, 0) << l71.err;
  EXPECT_EQ(l71.j()["l"], 5);
  EXPECT_TRUE(l71.j()["verified"].get<bool>());

  auto cm = run({"chow", "mul", R"({"n":2,"terms":[{"I":[1],"a":1}]})", R"({"n":2,"terms":[{"I":[2],"a":"3"}]})"});
  ASSERT_EQ(cm.code, 0) << cm.err;
  EXPECT_EQ(cm.j(), json::parse(R"({"n":2,"terms":[{"I":[1,2],"a":"3"}]})"));

  auto lp = run({"lattice", "pos", "1,0,0,1", "8,0,0,1"});
  ASSERT_EQ(lp.code, 0) << lp.err;
  EXPECT_EQ(lp.j()["relative_position"], "8");
  EXPECT_EQ(lp.j()["distance"]["edges"], 3);

  auto gs = run({"--seed", "3", "group", "goursat", "5"});
  ASSERT_EQ(gs.code, 0) << gs.err;
  EXPECT_TRUE(gs.j()["round_trip"].get<bool>());
  EXPECT_EQ(run({"group", "goursat", "5", "--seed", "3"}).out, gs.out);
}

TEST(CliDispatch, DensityCsv) {
  auto r = run({"density", "2", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "step,points,covered,fraction,outside,skipped");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
  std::filesystem::remove_all(tmp_cache());
}
