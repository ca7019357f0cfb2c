#include "doctest.h"
#include "uce/algebra_text.hpp"
#include "uce/matgl.hpp"

using namespace uce;

TEST_CASE("ranks") {
  // rank sl = (m+n)²·rank A − rank of the Str condition; [A,A] = 0 for commutative A
  CHECK(build_sl(2, 1, corpus_algebra("Q")).lie.rank() == 8);
  CHECK(build_sl(2, 2, corpus_algebra("Z")).lie.rank() == 15);
  CHECK(build_sl(3, 0, corpus_algebra("GF2")).lie.rank() == 8);
  CHECK(build_gl(2, 1, corpus_algebra("Q")).lie.rank() == 9);
  // Grassmann algebra: [θ,θ] = 2θ² = 0, so Str(x) ∈ [A,A] = 0 still removes rank 2
  CHECK(build_sl(2, 1, corpus_algebra("Z[theta]")).lie.rank() == 16);
  CHECK_THROWS_AS(build_sl(1, 1, corpus_algebra("Q")), Error);
}

TEST_CASE("brackets and supertrace") {
  auto g = build_gl(2, 1, corpus_algebra("Q"));
  auto E = [&](std::uint32_t i, std::uint32_t j) { return vec::unit(g.gl_index(i, j, 0)); };
  // [E12,E21] = E11 − E22; [E13,E31] = E11 + E33 (index 3 odd)
  auto b1 = gl_bracket(g, E(0, 1), E(1, 0));
  CHECK(b1 == vec::from_terms(g.A.domain(), {{(std::uint32_t)g.gl_index(0, 0, 0), 1},
                                            {(std::uint32_t)g.gl_index(1, 1, 0), -1}}));
  auto b2 = gl_bracket(g, E(0, 2), E(2, 0));
  CHECK(b2 == vec::from_terms(g.A.domain(), {{(std::uint32_t)g.gl_index(0, 0, 0), 1},
                                            {(std::uint32_t)g.gl_index(2, 2, 0), 1}}));
  CHECK(supertrace(g, b2).empty());
  CHECK(supertrace(g, E(2, 2)) == vec::unit(0, -1));
  CHECK(supertrace(g, E(0, 0)) == vec::unit(0));
  CHECK(supertrace(g, E(0, 1)).empty());
  // Str of a bracket vanishes
  for (std::size_t s = 0; s < g.gl_rank(); ++s)
    for (std::size_t t = 0; t < g.gl_rank(); ++t)
      CHECK(supertrace(g, g.lie.bracket_basis(s, t)).empty());
}

TEST_CASE("matrix superalgebras are Lie superalgebras") {
  for (const char* key : {"Z", "GF2[theta]", "Q[theta]", "Z[C2]"}) {
    auto a = corpus_algebra(key);
    CHECK(validate_lie_superalgebra(build_gl(2, 1, a).lie).pass);
    auto s = build_sl(2, 1, a);
    CHECK(validate_lie_superalgebra(s.lie).pass);
    CHECK(is_perfect(s.lie));
  }
}

TEST_CASE("sl equals the supertrace condition") {
  for (const char* key : {"Z", "Q", "GF2", "Z4", "GF2[theta]", "Q[eps]", "Z[theta]"}) {
    auto a = corpus_algebra(key);
    for (auto [m, n] : {std::pair{2, 1}, std::pair{3, 0}, std::pair{2, 2}}) {
      auto rep = sl_membership_check(m, n, a);
      INFO(key, " ", m, " ", n);
      CHECK(rep.pass);
      CHECK(rep.basis_matches);
      CHECK(rep.derived_rank == rep.supertrace_rank);
    }
  }
}

TEST_CASE("diagonal provenance") {
  for (const char* key : {"Z", "GF2[theta]"}) {
    auto g = build_sl(2, 2, corpus_algebra(key));
    for (std::size_t t : g.diag_basis) {
      SparseVec sum;
      for (const auto& d : g.provenance[t]) {
        auto x = gl_bracket(g, vec::unit(g.gl_index(d.i, d.j, d.a)), vec::unit(g.gl_index(d.j, d.i, d.b)));
        sum = vec::axpy(g.A.domain(), sum, d.coeff, x);
      }
      CHECK(sum == g.gl_embedding[t]);
    }
    CHECK(g.lie.name(g.offdiag_index(0, 1, 0)) == "E12(1)");
  }
}
