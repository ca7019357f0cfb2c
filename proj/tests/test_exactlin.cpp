#include <random>

#include "doctest.h"
#include "uce/exactlin.hpp"

using namespace uce;

namespace {

Integer det2(long a, long b, long c, long d) { return Integer(a) * d - Integer(b) * c; }

// Determinantal divisors of a 3x3 integer matrix: D_k = gcd of all k×k minors.
std::vector<Integer> determinantal_factors_3x3(const std::vector<std::vector<long>>& m) {
  Integer d1 = 0, d2 = 0, d3 = 0;
  for (auto& r : m)
    for (long x : r) d1 = gcd(d1, Integer(x));
  for (int r0 = 0; r0 < 3; ++r0)
    for (int r1 = r0 + 1; r1 < 3; ++r1)
      for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = c0 + 1; c1 < 3; ++c1)
          d2 = gcd(d2, Integer(abs(det2(m[r0][c0], m[r0][c1], m[r1][c0], m[r1][c1]))));
  Integer det = Integer(m[0][0]) * det2(m[1][1], m[1][2], m[2][1], m[2][2]) -
                Integer(m[0][1]) * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
                Integer(m[0][2]) * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
  d3 = abs(det);
  std::vector<Integer> out;
  if (d1 != 0) out.push_back(d1);
  if (d2 != 0) out.push_back(d2 / d1);
  if (d3 != 0) out.push_back(d3 / d2);
  return out;
}

std::vector<std::vector<long>> random_matrix(std::mt19937& rng, int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::vector<long>> m(r, std::vector<long>(c));
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

// Product of random elementary integer operations.
ExactMatrix random_unimodular(std::mt19937& rng, int n) {
  std::vector<std::vector<long>> u(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3);
  for (int s = 0; s < 3 * n; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    long c = coef(rng);
    for (int k = 0; k < n; ++k) u[i][k] += c * u[j][k];
  }
  return ExactMatrix::from_dense(Domain::integers(), u);
}

}  // namespace

TEST_CASE("smith normal form basic cases") {
  auto Z = Domain::integers();
  auto id = ExactMatrix::from_dense(Z, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(smith_normal_form(id) == std::vector<Integer>{1, 1, 1});
  auto zero = ExactMatrix::from_dense(Z, {{0, 0}, {0, 0}});
  CHECK(smith_normal_form(zero).empty());

  // oracle: d1 = gcd of entries, d1*d2 = |det|
  const long a = 2, b = 4, c = 6, d = 8;
  Integer d1 = gcd(gcd(Integer(a), Integer(b)), gcd(Integer(c), Integer(d)));
  Integer d2 = abs(det2(a, b, c, d)) / d1;
  auto m = ExactMatrix::from_dense(Z, {{a, b}, {c, d}});
  CHECK(smith_normal_form(m) == std::vector<Integer>{d1, d2});
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto dense = random_matrix(rng, 3, 3, -6, 6);
    auto m = ExactMatrix::from_dense(Domain::integers(), dense);
    CHECK(smith_normal_form(m) == determinantal_factors_3x3(dense));
  }
}

TEST_CASE("smith normal form is invariant under unimodular transforms") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = ExactMatrix::from_dense(Domain::integers(), random_matrix(rng, 4, 5, -5, 5));
    auto u = random_unimodular(rng, 4);
    auto v = random_unimodular(rng, 5);
    CHECK(smith_normal_form(u * m * v) == smith_normal_form(m));
  }
}

TEST_CASE("smith normal form over Z/m") {
  auto Z4 = Domain::integers_mod(4);
  auto m = ExactMatrix::from_dense(Z4, {{2, 0}, {0, 3}});
  CHECK(smith_normal_form(m) == std::vector<Integer>{1, 2});
  CHECK(smith_normal_form(ExactMatrix::from_dense(Z4, {{4, 0}})).empty());
  CHECK_THROWS_AS(smith_normal_form(ExactMatrix::from_dense(Domain::rationals(), {{1}})), Error);
}

TEST_CASE("kernel basis") {
  auto Q = Domain::rationals();
  CHECK(kernel_basis(ExactMatrix::from_dense(Q, {{1, 0}, {0, 1}})).empty());
  auto k = kernel_basis(ExactMatrix::from_dense(Q, {{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(vec::at(k[0], 0) == -vec::at(k[0], 1));
  CHECK(vec::at(k[0], 0) != 0);
  CHECK(kernel_basis(ExactMatrix::from_dense(Domain::integers(), {{2}})).empty());

  // saturation over Z: ker [2 4] is spanned by (2,-1), not (4,-2)
  auto kz = kernel_basis(ExactMatrix::from_dense(Domain::integers(), {{2, 4}}));
  REQUIRE(kz.size() == 1);
  CHECK(abs(vec::at(kz[0], 1)) == 1);

  // over Z/4: 2x = 0 has kernel generated by 2
  auto k4 = kernel_basis(ExactMatrix::from_dense(Domain::integers_mod(4), {{2}}));
  REQUIRE(k4.size() == 1);
  CHECK(vec::at(k4[0], 0) == 2);
}

TEST_CASE("kernel vectors are annihilated and counted by rank") {
  std::mt19937 rng(3);
  for (const auto& d : {Domain::rationals(), Domain::prime_field(2), Domain::prime_field(3),
                        Domain::integers()}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto m = ExactMatrix::from_dense(d, random_matrix(rng, 3, 6, -2, 2));
      auto k = kernel_basis(m);
      for (const auto& v : k) CHECK(m.apply(v).empty());
      CHECK(k.size() == m.cols() - rank(m));
    }
  }
}

TEST_CASE("quotient invariants") {
  auto Z = Domain::integers();
  std::vector<Parity> even2(2, Parity::Even);
  std::vector<SparseVec> std2 = {vec::unit(0), vec::unit(1)};
  auto q = quotient_invariants(Z, 2, std2, {{Entry{0, 2}}}, even2);
  CHECK(q.even.free_rank == 1);
  CHECK(q.even.torsion == std::vector<Integer>{2});
  CHECK(q.odd.is_zero());
  CHECK(quotient_invariants(Z, 2, std2, std2, even2).is_zero());

  // GF(2): rank 3 modulo (1,1,0): row reduction leaves 2 free coordinates
  auto F2 = Domain::prime_field(2);
  std::vector<SparseVec> std3 = {vec::unit(0), vec::unit(1), vec::unit(2)};
  auto g = quotient_invariants(F2, 3, std3, {{Entry{0, 1}, Entry{1, 1}}},
                               std::vector<Parity>(3, Parity::Even));
  CHECK(g.even.free_rank == 2);
  CHECK(g.even.torsion.empty());

  CHECK_THROWS_AS(quotient_invariants(Z, 2, {vec::unit(0)}, {vec::unit(1)}, even2), Error);
  // generator 2e0 does not contain e0
  CHECK_THROWS_AS(quotient_invariants(Z, 2, {{Entry{0, 2}}}, {vec::unit(0)}, even2), Error);
  auto sub = quotient_invariants(Z, 2, {{Entry{0, 2}}}, {{Entry{0, 6}}}, even2);
  CHECK(sub.even.torsion == std::vector<Integer>{3});

  // parity split
  std::vector<Parity> mixed = {Parity::Even, Parity::Odd};
  auto p = quotient_invariants(Z, 2, std2, {{Entry{1, 4}}}, mixed);
  CHECK(p.even.free_rank == 1);
  CHECK(p.odd.torsion == std::vector<Integer>{4});
}

TEST_CASE("quotient invariants over Z/m count Z/m summands as free") {
  auto Z4 = Domain::integers_mod(4);
  std::vector<SparseVec> std2 = {vec::unit(0), vec::unit(1)};
  auto q = quotient_invariants(Z4, 2, std2, {{Entry{0, 2}}}, {Parity::Even, Parity::Even});
  CHECK(q.even.free_rank == 1);
  CHECK(q.even.torsion == std::vector<Integer>{2});
}

TEST_CASE("module invariant algebra") {
  auto Z = Domain::integers();
  auto c = make_component(Z, {6, 4, 0, 1});
  CHECK(c.free_rank == 1);
  CHECK(c.torsion == std::vector<Integer>{2, 12});
  GradedModuleInvariants x{c, {}};
  CHECK(parity_change(parity_change(x)) == x);
  CHECK(parity_change(x).odd == c);
  auto p = power(Z, x, 3);
  CHECK(p.even.free_rank == 3);
  CHECK(p.even.torsion.size() == 6);
}

TEST_CASE("quotient module presentation") {
  auto Z = Domain::integers();
  // Z^3 / <(2,0,0), (0,3,3)>  ≅  Z/2 ⊕ Z/3 ⊕ Z
  auto qm = QuotientModule::build(Z, 3, {{Entry{0, 2}}, {Entry{1, 3}, Entry{2, 3}}});
  std::vector<Integer> orders = qm.orders();
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<Integer>{0, 2, 3});
  for (std::size_t t = 0; t < qm.rank(); ++t) {
    auto p = qm.project(qm.lift(t));
    REQUIRE(p.size() == 1);
    CHECK(p[0].index == t);
    CHECK(p[0].value == 1);
  }
  CHECK(qm.project({Entry{0, 2}}).empty());
  CHECK(qm.project({Entry{1, 3}, Entry{2, 3}}).empty());
  CHECK(!qm.project({Entry{1, 1}}).empty());

  auto F3 = Domain::prime_field(3);
  auto qf = QuotientModule::build(F3, 3, {{Entry{0, 1}, Entry{1, 1}}});
  CHECK(qf.rank() == 2);
  CHECK(qf.project({Entry{0, 1}, Entry{1, 1}}).empty());
  CHECK(qf.project(vec::unit(0)) == qf.project({Entry{1, 2}}));
}

TEST_CASE("span membership") {
  Span s(Domain::integers(), 2);
  CHECK(s.insert({Entry{0, 2}, Entry{1, 2}}));
  CHECK(s.contains({Entry{0, 4}, Entry{1, 4}}));
  CHECK_FALSE(s.contains({Entry{0, 1}, Entry{1, 1}}));
  CHECK(s.insert({Entry{0, 3}, Entry{1, 3}}));
  CHECK(s.contains({Entry{0, 1}, Entry{1, 1}}));
  CHECK(s.echelon_size() == 1);
  CHECK(spans_equal(Domain::rationals(), 2, {{Entry{0, 2}}}, {vec::unit(0)}));
  CHECK_FALSE(spans_equal(Domain::integers(), 2, {{Entry{0, 2}}}, {vec::unit(0)}));
}
