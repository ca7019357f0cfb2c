#include "doctest.h"
#include "json.hpp"
#include "uce/algebra_text.hpp"
#include "uce/workbench.hpp"

using namespace uce;

namespace {

CheckResult single(const char* key, int m, int n, const char* check) {
  SuiteConfig c;
  c.algebra = corpus_algebra(key);
  c.label = key;
  c.shapes = {{m, n}};
  c.checks = {check};
  c.threads = 2;
  auto rep = run_suite(c);
  REQUIRE(rep.results.size() == 1);
  return rep.results.front();
}

}  // namespace

TEST_CASE("expected values are instantiated per algebra") {
  auto z = corpus_algebra("Z");
  auto e = expected_h2("sl", 2, 2, z, {});
  REQUIRE(e);
  CHECK(e->formula == "HC1 + A2^4 + A0^2");
  CHECK(e->value.even.torsion == std::vector<Integer>{2, 2, 2, 2});
  CHECK(e->value.even.free_rank == 2);
  auto g = expected_h2("st", 3, 1, corpus_algebra("GF2"), {});
  REQUIRE(g);
  CHECK(g->value.odd.free_rank == 6);
  CHECK(g->value.even.is_zero());
  CHECK(expected_h2("st", 3, 0, z, {})->value.even.torsion == std::vector<Integer>{3, 3, 3, 3, 3, 3});
  CHECK(expected_h2("sl", 1, 2, z, {}) == std::nullopt);
  CHECK(expected_h2("sl", 3, 2, z, {})->formula == "HC1");
}

TEST_CASE("suite examples") {
  auto r1 = single("Z", 2, 2, "h2-sl");
  CHECK(r1.pass);
  REQUIRE(r1.computed);
  CHECK(r1.computed->even.torsion == std::vector<Integer>{2, 2, 2, 2});
  CHECK(r1.computed->even.free_rank == 2);

  auto r2 = single("Q", 2, 1, "h2-sl");
  CHECK(r2.pass);
  CHECK(r2.computed->is_zero());

  auto r3 = single("GF2", 3, 1, "h2-st");
  CHECK(r3.pass);
  CHECK(r3.computed->odd.free_rank == 6);
  CHECK(r3.computed->even.is_zero());

  auto bad = single("Q", 2, 1, "h2-st-sharp");
  CHECK_FALSE(bad.pass);
  CHECK(bad.detail.find("error") != std::string::npos);
}

TEST_CASE("reports are deterministic and well formed") {
  SuiteConfig c;
  c.algebra = corpus_algebra("GF2[theta]");
  c.label = "GF2[theta]";
  c.shapes = {{2, 1}, {3, 1}};
  c.timing = false;
  c.threads = 1;
  auto a = run_suite(c).to_json();
  c.threads = 4;
  auto rep = run_suite(c);
  CHECK(rep.to_json() == a);
  CHECK(rep.pass());
  auto j = nlohmann::ordered_json::parse(a);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"version", "domain", "algebra", "results"});
  const auto& first = j["results"][0];
  std::vector<std::string> rk;
  for (auto it = first.begin(); it != first.end(); ++it) rk.push_back(it.key());
  REQUIRE(rk.size() >= 7);
  CHECK(std::vector<std::string>(rk.begin(), rk.begin() + 7) ==
        std::vector<std::string>{"check", "m", "n", "expected", "computed", "pass", "millis"});
}
