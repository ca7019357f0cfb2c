// Acceptance run: one PASS/FAIL line per criterion. Expected values and time
// limits are pinned here; every comparison is exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "uce/algebra_text.hpp"
#include "uce/cocycle.hpp"
#include "uce/liesuper.hpp"
#include "uce/matgl.hpp"
#include "uce/steinberg.hpp"
#include "uce/workbench.hpp"

using namespace uce;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& what) {
    ok = false;
    if (detail.size() < 600) detail += (detail.empty() ? "" : "; ") + what;
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  // Runs fn, failing if it throws or exceeds limit_s.
  template <class Fn>
  void timed(const std::string& what, double limit_s, Fn&& fn) {
    const auto t0 = Clock::now();
    try {
      fn();
    } catch (const std::exception& e) {
      fail(what + ": " + e.what());
    }
    const double s = seconds_since(t0);
    if (s > limit_s) fail(what + " took " + std::to_string(s) + " s > " + std::to_string(limit_s) + " s");
  }
};

ModuleComponent comp(std::size_t free, std::vector<Integer> torsion = {}) {
  ModuleComponent c;
  c.free_rank = free;
  c.torsion = std::move(torsion);
  return c;
}

GradedModuleInvariants graded(ModuleComponent even, ModuleComponent odd = {}) {
  GradedModuleInvariants g;
  g.even = std::move(even);
  g.odd = std::move(odd);
  return g;
}

std::string show(const GradedModuleInvariants& g) { return format_invariants(g); }

const std::vector<std::string>& corpus_keys() {
  static std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : builtin_corpus()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

const std::vector<std::pair<int, int>> kRank4Shapes = {{2, 1}, {3, 1}, {2, 2}};

// 1. H2(sl(2,1,Q)) = HC1(Q) = 0.
Outcome criterion1() {
  Outcome o;
  o.timed("sl(2,1,Q)", 5.0, [&] {
    const SuperAlgebra Q = corpus_algebra("Q");
    const auto hc1 = hc1_connes(Q);
    const auto h2 = ce_h2(build_sl(2, 1, Q).lie);
    o.expect(hc1.is_zero(), "HC1(Q) oracle = " + show(hc1));
    o.expect(h2.is_zero(), "H2 = " + show(h2));
  });
  return o;
}

// 2. uce(st(2,1,A)) → st(2,1,A) has zero kernel.
Outcome criterion2() {
  Outcome o;
  for (const char* key : {"Z", "Q", "GF2", "GF2[theta]", "Q[theta]", "Z[theta]"}) {
    o.timed(std::string("st(2,1,") + key + ")", 30.0, [&] {
      const SteinbergRealization s = build_st(2, 1, corpus_algebra(key));
      const UniversalExtension u = uce::uce(s.st);
      o.expect(u.ext.kernel_invariants.is_zero(),
               std::string(key) + ": kernel " + show(u.ext.kernel_invariants));
    });
  }
  return o;
}

// 3. H2(sl(3,1,GF2)): even 0, odd dimension 6; the HC1 term is 0.
Outcome criterion3() {
  Outcome o;
  o.timed("sl(3,1,GF2)", 60.0, [&] {
    const SuperAlgebra A = corpus_algebra("GF2");
    const auto hc1 = hc1_kernel_oracle(A);
    const auto h2 = ce_h2(build_sl(3, 1, A).lie);
    o.expect(hc1.is_zero(), "HC1 oracle = " + show(hc1));
    o.expect(h2 == graded(comp(0), comp(6)), "H2 = " + show(h2));
  });
  return o;
}

// 4. H2(sl(2,2,Z)) = Z^2 ⊕ (Z/2)^4, all even.
Outcome criterion4() {
  Outcome o;
  o.timed("sl(2,2,Z)", 120.0, [&] {
    const SuperAlgebra Z = corpus_algebra("Z");
    const auto hc1 = hc1_kernel_oracle(Z);
    const auto h2 = ce_h2(build_sl(2, 2, Z).lie);
    o.expect(hc1.is_zero(), "HC1 oracle = " + show(hc1));
    o.expect(h2 == graded(comp(2, {2, 2, 2, 2})), "H2 = " + show(h2));
  });
  return o;
}

// 5. H2(sl(3,0,Z)) = (Z/3)^6, H2(sl(4,0,Z)) = (Z/2)^6.
Outcome criterion5() {
  Outcome o;
  const SuperAlgebra Z = corpus_algebra("Z");
  o.timed("sl(3,0,Z)", 120.0, [&] {
    const auto h2 = ce_h2(build_sl(3, 0, Z).lie);
    o.expect(h2 == graded(comp(0, {3, 3, 3, 3, 3, 3})), "sl(3,0,Z): H2 = " + show(h2));
  });
  o.timed("sl(4,0,Z)", 120.0, [&] {
    const auto h2 = ce_h2(build_sl(4, 0, Z).lie);
    o.expect(h2 == graded(comp(0, {2, 2, 2, 2, 2, 2})), "sl(4,0,Z): H2 = " + show(h2));
  });
  return o;
}

// 6. psi_31 and psi_22 are super 2-cocycles over GF2[theta].
Outcome criterion6() {
  Outcome o;
  o.timed("cocycle axioms", 300.0, [&] {
    const SuperAlgebra A = corpus_algebra("GF2[theta]");
    for (Variant v : {Variant::V31, Variant::V22}) {
      const PsiData p = build_psi(v, A);
      const ValidationReport r = check_super_2cocycle(p.sl.lie, p.psi);
      o.expect(r.pass, "psi_" + variant_name(v) + ": " + (r.violations.empty() ? "" : r.violations.front()));
    }
  });
  return o;
}

// 7. st#(3,1,A) ≅ uce(sl(3,1,A)) and st#(2,2,A) ≅ uce(sl(2,2,A)) as extensions.
Outcome criterion7() {
  Outcome o;
  const std::vector<std::pair<Variant, std::string>> cases = {{Variant::V31, "GF2"},
                                                                {Variant::V31, "GF2[theta]"},
                                                                {Variant::V22, "Z"},
                                                                {Variant::V22, "Q"},
                                                                {Variant::V22, "GF2[theta]"}};
  o.timed("universality", 600.0, [&] {
    for (const auto& [v, key] : cases) {
      const std::string tag = "st#(" + variant_name(v) + "," + key + ")";
      const StSharp s = build_st_sharp(v, corpus_algebra(key));
      o.expect(s.relations.pass(), tag + ": defining relations fail");
      const UceComparison c = compare_with_uce(s);
      o.expect(c.ranks_equal, tag + ": graded ranks differ (" + show(c.candidate_module) + " vs " +
                                  show(c.uce_module) + ")");
      o.expect(c.isomorphic, tag + ": not isomorphic to uce(sl)");
    }
  });
  return o;
}

// 8. Identities and decomposition in st(m,n,A), rank A ≤ 2.
Outcome criterion8() {
  Outcome o;
  o.timed("identity suite", 600.0, [&] {
    for (const auto& key : corpus_keys()) {
      const SuperAlgebra A = corpus_algebra(key);
      if (A.rank() > 2) continue;
      for (const auto& [m, n] : kRank4Shapes) {
        const SteinbergRealization s = build_st(m, n, A);
        const std::string tag = "st(" + std::to_string(m) + "," + std::to_string(n) + "," + key + ")";
        const CheckReport id = verify_identities(s), dec = verify_decomposition(s);
        o.expect(id.pass(), tag + " identities: " + id.summary());
        o.expect(dec.pass(), tag + " decomposition: " + dec.summary());
      }
    }
  });
  return o;
}

// 9. [gl,gl] = {x : Str(x) ∈ [A,A]}.
Outcome criterion9() {
  Outcome o;
  o.timed("supertrace characterization", 600.0, [&] {
    for (const auto& key : corpus_keys()) {
      const SuperAlgebra A = corpus_algebra(key);
      for (const auto& [m, n] : kRank4Shapes) {
        const MembershipReport r = sl_membership_check(m, n, A);
        o.expect(r.pass && r.basis_matches,
                 "(" + std::to_string(m) + "," + std::to_string(n) + "," + key + "): derived rank " +
                     std::to_string(r.derived_rank) + ", Str rank " + std::to_string(r.supertrace_rank));
      }
    }
  });
  return o;
}

// 10. ker(st → sl) is independent of the shape; equals Connes HC1 over Q.
Outcome criterion10() {
  Outcome o;
  o.timed("kernel consistency", 600.0, [&] {
    for (const auto& key : corpus_keys()) {
      const SuperAlgebra A = corpus_algebra(key);
      std::vector<GradedModuleInvariants> ks;
      for (const auto& [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        ks.push_back(build_st(m, n, A).kernel_invariants());
      }
      for (std::size_t i = 1; i < ks.size(); ++i) {
        o.expect(ks[i] == ks[0], key + ": kernels differ across shapes (" + show(ks[0]) + " vs " + show(ks[i]) + ")");
      }
      if (A.domain().kind() == DomainKind::Rationals) {
        const auto hc1 = hc1_connes(A);
        o.expect(hc1 == ks[0], key + ": kernel " + show(ks[0]) + " vs Connes " + show(hc1));
      }
    }
  });
  return o;
}

// 11a. d2(d3 c) = 0 for every 3-chain, recomputed from the stored images.
bool d2d3_vanishes(const LieSuperAlgebra& l, const ChainData& c) {
  const Domain& d = l.domain();
  for (const auto& img : c.d3) {
    SparseVec acc;
    for (const auto& e : img) acc = vec::axpy(d, acc, e.value, c.d2[e.index]);
    if (!l.reduce(acc).empty()) return false;
  }
  return true;
}

ExactMatrix random_unimodular(std::mt19937& rng, int n) {
  std::vector<std::vector<long>> u(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3);
  for (int s = 0; s < 4 * n; ++s) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const long c = coef(rng);
    for (int k = 0; k < n; ++k) u[i][k] += c * u[j][k];
  }
  return ExactMatrix::from_dense(Domain::integers(), u);
}

// 11. Properties independent of the closed-form tables.
Outcome criterion11() {
  Outcome o;
  o.timed("property suite", 600.0, [&] {
    for (const auto& key : corpus_keys()) {
      const SuperAlgebra A = corpus_algebra(key);

      // parser round-trip
      const std::string text = serialize_algebra(A);
      const SuperAlgebra B = parse_algebra(text);
      o.expect(B == A && serialize_algebra(B) == text, key + ": parser round-trip");

      for (const auto& [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 0}}) {
        const std::string tag = "sl(" + std::to_string(m) + "," + std::to_string(n) + "," + key + ")";
        const LieSuperAlgebra L = build_sl(m, n, A).lie;
        o.expect(d2d3_vanishes(L, chain_data(L)), tag + ": d2 d3 != 0");
        const UniversalExtension u = uce::uce(L);
        o.expect(d2d3_vanishes(u.ext.total, chain_data(u.ext.total)), "uce " + tag + ": d2 d3 != 0");
        o.expect(is_perfect(u.ext.total), "uce " + tag + " is not perfect");
        const auto h2 = ce_h2(u.ext.total);
        o.expect(h2.is_zero(), "H2(uce " + tag + ") = " + show(h2));
      }
    }

    std::mt19937 rng(20261015);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::vector<long>> dense(5, std::vector<long>(6));
      for (auto& row : dense)
        for (auto& x : row) x = entry(rng);
      const ExactMatrix M = ExactMatrix::from_dense(Domain::integers(), dense);
      const ExactMatrix N = random_unimodular(rng, 5) * M * random_unimodular(rng, 6);
      if (smith_normal_form(N) != smith_normal_form(M)) {
        o.fail("SNF changed under a unimodular transform (trial " + std::to_string(trial) + ")");
        break;
      }
    }
  });
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"H2(sl(2,1,Q)) = 0", criterion1},
      {"H2(st(2,1,A)) = 0 for Z, Q, GF2, K[theta]", criterion2},
      {"H2(sl(3,1,GF2)) = odd GF2^6", criterion3},
      {"H2(sl(2,2,Z)) = Z^2 + (Z/2)^4, even", criterion4},
      {"H2(sl(3,0,Z)) = (Z/3)^6, H2(sl(4,0,Z)) = (Z/2)^6", criterion5},
      {"psi_31, psi_22 are 2-cocycles over GF2[theta]", criterion6},
      {"st# is the universal central extension", criterion7},
      {"identities and decomposition in st", criterion8},
      {"supertrace characterization of sl", criterion9},
      {"ker(st -> sl) consistent across shapes and with Connes HC1", criterion10},
      {"property suite", criterion11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("uncaught: ") + e.what());
    }
    const double s = seconds_since(t0);
    std::printf("%s criterion %zu: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), s,
                o.ok ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
