#include <map>

#include "doctest.h"
#include "uce/algebra_text.hpp"
#include "uce/liesuper.hpp"
#include "uce/matgl.hpp"

using namespace uce;

namespace {

LieSuperAlgebra abelian(std::vector<Parity> par) {
  const std::size_t n = par.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  return LieSuperAlgebra(Domain::rationals(), names, par, std::vector<Integer>(n, 0),
                         std::vector<std::vector<SparseVec>>(n, std::vector<SparseVec>(n)));
}

// Dense rank over Q (p = 0) or GF(p).
std::size_t dense_rank(std::vector<std::vector<Scalar>> m, long p) {
  auto norm = [p](Scalar x) {
    if (p == 0) return x;
    Integer v = x.get_num() % p;
    if (v < 0) v += p;
    return Scalar(v);
  };
  auto inv = [p](const Scalar& x) {
    if (p == 0) return Scalar(Scalar(1) / x);
    Integer r;
    Integer v = x.get_num();
    mpz_invert(r.get_mpz_t(), v.get_mpz_t(), Integer(p).get_mpz_t());
    return Scalar(r);
  };
  for (auto& row : m)
    for (auto& x : row) x = norm(x);
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t q = r;
    while (q < m.size() && m[q][c] == 0) ++q;
    if (q == m.size()) continue;
    std::swap(m[q], m[r]);
    const Scalar iv = inv(m[r][c]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Scalar f = norm(m[i][c] * iv);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = norm(m[i][j] - f * m[r][j]);
    }
    ++r;
  }
  return r;
}

// dim H₂ of the super Chevalley–Eilenberg complex written out densely from
// the bracket table of a free algebra over Z or Q, coefficients reduced mod p.
std::size_t h2_dimension_oracle(const LieSuperAlgebra& l, long p) {
  const std::size_t n = l.rank();
  auto odd = [&](std::size_t i) { return l.parity(i) == Parity::Odd; };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> sym;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (i < j || odd(i)) sym.emplace(std::make_pair(i, j), sym.size());
  const std::size_t c2 = sym.size();
  // x∧y accumulated into a dense C₂ row
  auto wedge_into = [&](std::vector<Scalar>& row, const Scalar& c, const SparseVec& x, std::size_t k) {
    for (const auto& e : x) {
      const std::size_t i = e.index;
      if (i < k) row[sym.at({i, k})] += c * e.value;
      else if (i > k) row[sym.at({k, i})] += c * e.value * ((odd(i) && odd(k)) ? 1 : -1);
      else if (odd(i)) row[sym.at({i, i})] += c * e.value;
    }
  };
  std::vector<std::vector<Scalar>> d2(n, std::vector<Scalar>(c2));
  for (const auto& [ij, s] : sym)
    for (const auto& e : l.bracket_basis(ij.first, ij.second)) d2[e.index][s] = e.value;
  std::vector<std::vector<Scalar>> d3;  // rows: images of C₃ symbols
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        if ((i == j && !odd(i)) || (j == k && !odd(j))) continue;
        std::vector<Scalar> row(c2);
        if (i == j && j == k) {
          wedge_into(row, 1, l.bracket_basis(i, i), i);
        } else {
          auto sg = [&](std::size_t a, std::size_t b) { return (odd(a) && odd(b)) ? -1 : 1; };
          wedge_into(row, sg(i, k), l.bracket_basis(i, j), k);
          wedge_into(row, sg(i, j), l.bracket_basis(j, k), i);
          wedge_into(row, sg(j, k), l.bracket_basis(k, i), j);
        }
        d3.push_back(row);
      }
  return c2 - dense_rank(d2, p) - dense_rank(d3, p);
}

}  // namespace

TEST_CASE("abelian algebras") {
  auto a = abelian({Parity::Even, Parity::Even});
  CHECK(validate_lie_superalgebra(a).pass);
  auto h = ce_h2(a);
  CHECK(h.even.free_rank == 1);
  CHECK(h.odd.is_zero());
  CHECK_FALSE(is_perfect(a));
  CHECK_THROWS_AS(uce::uce(a), Error);

  // one odd generator: C₂ = span{x∧x}, which is a cycle
  auto o = abelian({Parity::Odd});
  auto c = chain_data(o);
  CHECK(c.c2_basis.size() == 1);
  CHECK(c.c3_basis.size() == 1);
  CHECK(ce_h2(o).even.free_rank == 1);

  auto m = abelian({Parity::Even, Parity::Odd, Parity::Odd});
  auto hm = ce_h2(m);
  CHECK(hm.even.free_rank == 3);  // x1∧x1, x1∧x2, x2∧x2
  CHECK(hm.odd.free_rank == 2);
}

TEST_CASE("validation catches broken brackets") {
  std::vector<std::vector<SparseVec>> t(3, std::vector<SparseVec>(3));
  t[0][1] = vec::unit(2);
  t[1][0] = vec::unit(2);  // should be −x2
  LieSuperAlgebra bad(Domain::rationals(), {"x", "y", "z"}, std::vector<Parity>(3, Parity::Even),
                      std::vector<Integer>(3, 0), t);
  auto rep = validate_lie_superalgebra(bad);
  CHECK_FALSE(rep.pass);

  t[1][0] = vec::unit(2, -1);
  LieSuperAlgebra heis(Domain::rationals(), {"x", "y", "z"}, std::vector<Parity>(3, Parity::Even),
                       std::vector<Integer>(3, 0), t);
  CHECK(validate_lie_superalgebra(heis).pass);
  // Heisenberg: H₂ = 2
  CHECK(ce_h2(heis).even.free_rank == 2);
  CHECK(h2_dimension_oracle(heis, 0) == 2);
}

TEST_CASE("d2 d3 = 0 on matrix superalgebras") {
  for (const char* key : {"Q", "GF2[theta]", "Z[theta]"}) {
    auto g = build_sl(2, 1, corpus_algebra(key));
    auto c = chain_data(g.lie, 2);
    for (const auto& v : c.d3) {
      std::vector<Entry> terms;
      for (const auto& e : v)
        for (const auto& t : c.d2[e.index]) terms.push_back(Entry{t.index, e.value * t.value});
      CHECK(vec::from_terms(g.lie.domain(), terms).empty());
    }
    // every d₃ image stays inside one block
    for (const auto& v : c.d3)
      for (const auto& e : v) CHECK(c.c2_block[e.index] == c.c2_block[v.front().index]);
  }
}

TEST_CASE("H2 of sl(2,1,Q) vanishes") {
  auto g = build_sl(2, 1, corpus_algebra("Q"));
  CHECK(g.lie.rank() == 8);
  CHECK(is_perfect(g.lie));
  CHECK(ce_h2(g.lie).is_zero());
  CHECK(h2_dimension_oracle(g.lie, 0) == 0);
  auto u = uce::uce(g.lie);
  CHECK(u.ext.total.rank() == 8);
  CHECK(u.ext.kernel_invariants.is_zero());
}

TEST_CASE("uce(sl(2,2,Z))") {
  auto g = build_sl(2, 2, corpus_algebra("Z"));
  REQUIRE(g.lie.rank() == 15);
  auto h = ce_h2(g.lie, 4);
  CHECK(h.even.free_rank == 2);
  CHECK(h.even.torsion == std::vector<Integer>{2, 2, 2, 2});
  CHECK(h.odd.is_zero());
  // universal coefficients: H₁ = 0, so dim over GF(2) is free rank + #2-torsion
  CHECK(h2_dimension_oracle(g.lie, 0) == 2);
  CHECK(h2_dimension_oracle(g.lie, 2) == 6);
  CHECK(h2_dimension_oracle(g.lie, 3) == 2);

  auto u = uce::uce(g.lie, 4);
  CHECK(u.ext.kernel_invariants == h);
  CHECK(validate_lie_superalgebra(u.ext.total).pass);
  CHECK(is_perfect(u.ext.total));
  // the projection is a homomorphism
  const auto& t = u.ext.total;
  for (std::size_t i = 0; i < t.rank(); i += 3)
    for (std::size_t j = 0; j < t.rank(); j += 2) {
      auto lhs = g.lie.bracket(u.ext.projection[i], u.ext.projection[j]);
      SparseVec rhs;
      for (const auto& e : t.bracket_basis(i, j))
        rhs = vec::axpy(g.lie.domain(), rhs, e.value, u.ext.projection[e.index]);
      CHECK(vec::sub(g.lie.domain(), lhs, rhs).empty());
    }
}

TEST_CASE("uce is idempotent") {
  auto g = build_sl(2, 1, corpus_algebra("GF2[theta]"));
  auto u = uce::uce(g.lie, 2);
  auto uu = uce::uce(u.ext.total, 2);
  CHECK(uu.ext.total.rank() == u.ext.total.rank());
  CHECK(uu.ext.kernel_invariants.is_zero());
  CHECK(ce_h2(u.ext.total, 2).is_zero());
}

TEST_CASE("extension from a cocycle") {
  // Heisenberg as a central extension of the 2-dim abelian algebra
  auto a = abelian({Parity::Even, Parity::Even});
  SuperTwoCocycle psi;
  psi.target = {{"z"}, {Parity::Even}, {Integer(0)}, {}};
  psi.values.assign(2, std::vector<SparseVec>(2));
  psi.values[0][1] = vec::unit(0);
  psi.values[1][0] = vec::unit(0, -1);
  CHECK(check_super_2cocycle(a, psi).pass);
  auto ext = extension_from_cocycle(a, psi);
  CHECK(ext.total.rank() == 3);
  CHECK(ext.kernel_invariants.even.free_rank == 1);
  CHECK(validate_lie_superalgebra(ext.total).pass);

  psi.values[1][0] = vec::unit(0);  // not antisymmetric
  CHECK_FALSE(check_super_2cocycle(a, psi).pass);
  try {
    extension_from_cocycle(a, psi);
    FAIL("expected CocycleInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CocycleInvalid);
  }
}
