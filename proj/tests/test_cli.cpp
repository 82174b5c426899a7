#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dgk/cli/cli.hpp"
#include "support.hpp"

using namespace dgk;
using dgk::test::fixture;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dgkoszul");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ring(const std::string& name) { return fixture("rings/" + name + ".json"); }
std::string lift(const std::string& name) { return fixture("lifts/" + name + ".lift"); }

/// Writes text to a fresh file under the temp directory and returns its path.
std::string scratch(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "dgk_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, CheckIdentityOnCompleteIntersection) {
  auto r = run({"check-identity", "--ring", ring("ci_x2y2_f2")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("identity: true"), std::string::npos);
}

TEST(Cli, CheckIdentityPrintsWitness) {
  auto r = run({"check-identity", "--ring", ring("semigroup_6_10_14_15")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("identity: false"), std::string::npos);
  EXPECT_NE(r.out.find("H_2: not identity"), std::string::npos);
  EXPECT_NE(r.out.find("witness: e"), std::string::npos);
}

TEST(Cli, WitnessLiftsParseBack) {
  auto r = run({"check-identity", "--ring", ring("semigroup_6_10_14_15"), "--json"});
  ASSERT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  auto s = test::semigroup({6, 10, 14, 15});
  KoszulComplex<PrimeField> kc(s);
  ASSERT_FALSE(j["witnesses"].empty());
  for (const auto& w : j["witnesses"]) {
    // complete the single line to a lift file
    std::string text = w["lift"].get<std::string>() + "\n";
    const int g = w["generator"].get<int>();
    for (int e = 1; e <= 4; ++e)
      if (e != g) text += "e" + std::to_string(e) + " -> e" + std::to_string(e) + "\n";
    auto phi = cli::parse_lift<PrimeField>(text, s);
    EXPECT_FALSE(induced_map(kc, phi, w["degree"].get<int>()).is_identity);
  }
}

TEST(Cli, BettiJsonOfTheRationalExample) {
  auto r = run({"betti", "--ring", ring("q_x2_xy_y2_z2"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"], nlohmann::json::parse(R"({"0":[1],"1":[0,4,2,0],"2":[0,0,3,2]})"));
  EXPECT_EQ(j["totals"], nlohmann::json::parse("[1,4,5,2]"));
}

TEST(Cli, BettiText) {
  auto r = run({"betti", "--ring", ring("ci_x2y2_f2")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "       0 1 2\n"
            "total: 1 2 1\n"
            "    0: 1 - -\n"
            "    1: - 2 -\n"
            "    2: - - 1\n");
}

TEST(Cli, JsonIsDeterministicAcrossThreadCounts) {
  for (const auto& cmd : {"suite", "homology", "products", "gr"}) {
    auto a = run({cmd, "--ring", ring("identity_w3_yw2"), "--json", "--threads", "1"});
    auto b = run({cmd, "--ring", ring("identity_w3_yw2"), "--json", "--threads", "4"});
    auto c = run({cmd, "--ring", ring("identity_w3_yw2"), "--json"});
    EXPECT_EQ(a.code, 0) << cmd;
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_EQ(a.out, c.out) << cmd;
  }
}

TEST(Cli, SuiteSchema) {
  auto r = run({"suite", "--ring", ring("ci_x2y2_f2")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  for (const auto& key : {"ring", "betti", "products", "identity", "group_law", "abelian", "exponent_p",
                          "gr_identity", "gorenstein", "order"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["products"]["(1,1)"], false);
  EXPECT_EQ(j["identity"]["overall"], true);
  EXPECT_EQ(j["gorenstein"]["is_pd_algebra"], true);
  EXPECT_EQ(j["order"], 2);
  EXPECT_EQ(j["exponent_p"], true);

  auto q = nlohmann::json::parse(run({"suite", "--ring", ring("q_x2_xy_y2_z2")}).out);
  EXPECT_TRUE(q["exponent_p"].is_null());
  EXPECT_EQ(nlohmann::json::parse(run({"suite", "--ring", ring("semigroup_regular")}).out)["order"], "infinity");
}

TEST(Cli, HomologyCyclesParseBack) {
  auto r = run({"homology", "--ring", ring("q_x2_xy_y2_z2"), "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  auto q = test::fixture_ring_q("q_x2_xy_y2_z2");
  KoszulComplex<RationalField> kc(q);
  for (int i = 0; i <= 3; ++i) {
    const auto& cls = j[std::to_string(i)]["classes"];
    ASSERT_EQ(cls.size(), kc.homology_dim(i));
    for (std::size_t k = 0; k < cls.size(); ++k)
      EXPECT_EQ(parse_koszul<RationalField>(cls[k]["cycle"].get<std::string>(), q), kc.representative(i, k));
  }
}

TEST(Cli, ProductsPattern) {
  auto j = nlohmann::json::parse(run({"products", "--ring", ring("products_h1h2"), "--json"}).out);
  EXPECT_EQ(j["(1,1)"]["vanishes"], true);
  EXPECT_EQ(j["(1,2)"]["vanishes"], false);
  EXPECT_FALSE(j["(1,2)"]["nonzero"].empty());
}

TEST(Cli, Order) {
  EXPECT_EQ(run({"order", "--ring", ring("semigroup_regular")}).out, "order: infinity\n");
  EXPECT_EQ(run({"order", "--ring", ring("weighted_23")}).out, "order: 2\n");
  EXPECT_EQ(run({"order", "--ring", ring("x_squared_f2"), "--json"}).out, "{\n  \"order\": 2\n}\n");
}

TEST(Cli, GrText) {
  auto r = run({"gr", "--ring", ring("weighted_23")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("gr H_1: F2/F3=1 F4/F5=1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("positive products vanish in gr: true"), std::string::npos);
}

TEST(Cli, LiftAction) {
  auto a = run({"lift-action", "--ring", ring("ci_x2y2_f2"), "--lift", lift("ci_x2y2_f2")});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("identity: true"), std::string::npos);
  auto b = run({"lift-action", "--ring", ring("identity_w3_yw2"), "--lift", lift("identity_w3_yw2_witness")});
  EXPECT_EQ(b.code, 1);
  EXPECT_NE(b.out.find("H_2: not identity"), std::string::npos);
  EXPECT_NE(b.out.find("gr identity: true"), std::string::npos);
  auto c = run({"lift-action", "--ring", ring("semigroup_6_10_14_15"), "--lift", lift("semigroup_6_10_14_15_witness"),
                "--degrees", "1,3", "--json"});
  EXPECT_EQ(c.code, 0);
  auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j["degrees"].size(), 2u);
  EXPECT_EQ(j["identity"], true);
}

TEST(Cli, LiftRoundTrip) {
  auto s = test::fixture_ring("semigroup_9_10_11_13_17");
  auto phi = cli::parse_lift<PrimeField>(cli::read_file(lift("semigroup_9_10_11_13_17_witness")), s);
  auto again = cli::parse_lift<PrimeField>(phi.to_text(), s);
  for (std::size_t i = 0; i < phi.size(); ++i) EXPECT_EQ(again.image(i), phi.image(i));
}

TEST(Cli, LiftFileErrors) {
  const auto ci = ring("ci_x2y2_f2");
  EXPECT_EQ(run({"lift-action", "--ring", ci}).code, 2);  // no --lift
  auto bad = run({"lift-action", "--ring", ci, "--lift", scratch("bad.lift", "e1 -> e2\ne2 -> e2\n")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("column 1"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"lift-action", "--ring", ci, "--lift", scratch("dup.lift", "e1 -> e1\ne1 -> e1\ne2 -> e2\n")}).code, 2);
  EXPECT_EQ(run({"lift-action", "--ring", ci, "--lift", scratch("missing.lift", "e1 -> e1\n")}).code, 2);
  auto parse = run({"lift-action", "--ring", ci, "--lift", scratch("parse.lift", "e1 -> e1 + q*e2\ne2 -> e2\n")});
  EXPECT_EQ(parse.code, 2);
  EXPECT_NE(parse.err.find("position"), std::string::npos) << parse.err;
}

TEST(Cli, DegreesOption) {
  const auto s = ring("semigroup_6_10_14_15");
  EXPECT_EQ(run({"check-identity", "--ring", s, "--degrees", "1,3"}).code, 0);
  EXPECT_EQ(run({"check-identity", "--ring", s, "--degrees", "2"}).code, 1);
  EXPECT_EQ(run({"check-identity", "--ring", s, "--degrees", "1,x"}).code, 2);
  EXPECT_EQ(run({"check-identity", "--ring", s, "--degrees", "9"}).code, 2);
}

TEST(Cli, RingSpecErrors) {
  EXPECT_EQ(run({"betti", "--ring", "/nonexistent/ring.json"}).code, 2);
  EXPECT_EQ(run({"betti", "--ring", scratch("syntax.json", "{\"field\": ")}).code, 2);
  EXPECT_EQ(run({"betti", "--ring", scratch("key.json", R"({"field":"F2","type":"semigroup","generators":[3,5],"x":1})")})
                .code,
            2);
  EXPECT_EQ(run({"betti", "--ring", scratch("f4.json", R"({"field":"F4","type":"semigroup","generators":[3,5]})")}).code,
            2);
  EXPECT_EQ(
      run({"betti", "--ring", scratch("free.json", R"({"field":"F2","variables":["x","y"],"ideal":["x^2"]})")}).code,
      2);
  EXPECT_EQ(run({"betti", "--ring", scratch("gcd.json", R"({"field":"F3","type":"semigroup","generators":[4,6]})")}).code,
            2);
  auto poly = run({"betti", "--ring", scratch("poly.json", R"({"field":"Q","variables":["x"],"ideal":["x^^2"]})")});
  EXPECT_EQ(poly.code, 2);
  EXPECT_FALSE(poly.err.empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"betti"}).code, 2);  // --ring is required
  EXPECT_EQ(run({"frobnicate", "--ring", ring("ci_x2y2_f2")}).code, 2);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("check-identity"), std::string::npos);
}

TEST(Cli, SlowGuard) {
  auto r = run({"betti", "--ring", ring("large_x98")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("--slow"), std::string::npos);
}
