#include "uce/cocycle.hpp"

#include <algorithm>
#include <set>

#include "uce/parallel.hpp"

namespace uce {

Variant parse_variant(const std::string& text) {
  if (text == "3,1" || text == "31") return Variant::V31;
  if (text == "2,2" || text == "22") return Variant::V22;
  throw Error(ErrorCode::VariantNotSupported, "unsupported cocycle variant '" + text + "' (use 3,1 or 2,2)");
}

std::string variant_name(Variant v) { return v == Variant::V31 ? "3,1" : "2,2"; }

std::pair<int, int> variant_shape(Variant v) { return v == Variant::V31 ? std::pair{3, 1} : std::pair{2, 2}; }

namespace {

std::set<Quadruple> klein_coset(const Quadruple& q) {
  const auto [i, j, k, l] = q;
  return {q, Quadruple{k, j, i, l}, Quadruple{i, l, k, j}, Quadruple{k, l, i, j}};
}

}  // namespace

std::pair<QuadruplePartition, SignTable> klein_theta_sigma(Variant v) {
  Quadruple q{1, 2, 3, 4};
  std::set<std::set<Quadruple>> seen;
  std::vector<std::vector<Quadruple>> cosets;  // ordered by least element
  do {
    auto c = klein_coset(q);
    if (seen.insert(c).second) cosets.emplace_back(c.begin(), c.end());
  } while (std::next_permutation(q.begin(), q.end()));

  QuadruplePartition p;
  if (v == Variant::V31) {
    for (int m = 0; m < 6; ++m) p.cosets[m] = cosets[m];
  } else {
    const std::vector<Quadruple> p5{{1, 3, 2, 4}, {1, 4, 2, 3}, {2, 3, 1, 4}, {2, 4, 1, 3}};
    const std::vector<Quadruple> p6{{3, 1, 4, 2}, {3, 2, 4, 1}, {4, 1, 3, 2}, {4, 2, 3, 1}};
    int m = 0;
    for (const auto& c : cosets) {
      if (c == p5 || c == p6) continue;
      p.cosets[m++] = c;
    }
    if (m != 4) throw Error(ErrorCode::ChainInconsistency, "P5/P6 are not Klein cosets");
    p.cosets[4] = p5;
    p.cosets[5] = p6;
  }
  for (int m = 0; m < 6; ++m) {
    for (const auto& x : p.cosets[m]) p.theta[x] = m + 1;
  }
  SignTable s;
  for (const auto& [x, m] : p.theta) s.sigma[x] = 1;
  if (v == Variant::V22) {
    for (const Quadruple& x : {Quadruple{1, 4, 2, 3}, Quadruple{2, 3, 1, 4}, Quadruple{3, 2, 4, 1},
                               Quadruple{4, 1, 3, 2}}) {
      s.sigma[x] = -1;
    }
  }
  return {p, s};
}

// ---------------------------------------------------------------------------

SparseVec PsiData::epsilon(int m, const SparseVec& a) const {
  const GradedQuotient& q = copy_is_a0[m - 1] ? a0 : a2;
  SparseVec out;
  for (const auto& e : q.project(a)) {
    out.push_back(Entry{static_cast<std::uint32_t>(copy_offset[m - 1] + e.index), e.value});
  }
  return out;
}

SparseVec PsiData::formula(std::uint32_t i, std::uint32_t j, std::uint32_t x, std::uint32_t k,
                           std::uint32_t l, std::uint32_t y) const {
  const Quadruple q{static_cast<int>(i) + 1, static_cast<int>(j) + 1, static_cast<int>(k) + 1,
                    static_cast<int>(l) + 1};
  const int m = partition.theta.at(q);
  const SuperAlgebra& A = sl.A;
  SparseVec v = epsilon(m, A.multiply(vec::unit(x), vec::unit(y)));
  if (variant == Variant::V22 && m >= 5) {
    const int s = (A.parity(y) == Parity::Odd ? -1 : 1) * sigma(q);
    v = vec::scale(A.domain(), s, v);
  }
  return reduce_mod_orders(A.domain(), v, psi.target.orders);
}

PsiData build_psi(Variant v, const SuperAlgebra& a) {
  PsiData p;
  p.variant = v;
  const auto [m, n] = variant_shape(v);
  p.sl = build_sl(m, n, a);
  std::tie(p.partition, p.sigma) = klein_theta_sigma(v);
  p.a2 = quotient_Am(a, 2);
  p.a0 = quotient_Am(a, 0);

  GradedModuleSpec& w = p.psi.target;
  for (int c = 1; c <= 6; ++c) {
    p.copy_is_a0[c - 1] = v == Variant::V22 && c >= 5;
    p.copy_offset[c - 1] = w.rank();
    const GradedQuotient& q = p.copy_is_a0[c - 1] ? p.a0 : p.a2;
    // every quadruple of the coset gives the same weight e_i − e_j + e_k − e_l
    const Quadruple& rep = p.partition.cosets[c - 1].front();
    Weight wt(4, 0);
    wt[rep[0] - 1] += 1;
    wt[rep[1] - 1] -= 1;
    wt[rep[2] - 1] += 1;
    wt[rep[3] - 1] -= 1;
    for (std::size_t t = 0; t < q.rank(); ++t) {
      w.names.push_back("eps" + std::to_string(c) + "[" + std::to_string(t) + "]");
      w.parity.push_back(q.generator_parity(t) + (v == Variant::V31 ? Parity::Odd : Parity::Even));
      w.orders.push_back(q.orders()[t]);
      w.weights.push_back(wt);
    }
  }

  const std::size_t R = p.sl.lie.rank();
  p.psi.values.assign(R, std::vector<SparseVec>(R));
  for (std::size_t s = 0; s < R; ++s) {
    if (!p.sl.elementary[s]) continue;
    const auto [i, j, x] = *p.sl.elementary[s];
    for (std::size_t t = 0; t < R; ++t) {
      if (!p.sl.elementary[t]) continue;
      const auto [k, l, y] = *p.sl.elementary[t];
      if (i == k || i == l || j == k || j == l) continue;
      p.psi.values[s][t] = p.formula(i, j, x, k, l, y);
    }
  }
  return p;
}

SuperTwoCocycle pullback(const Domain& d, const SuperTwoCocycle& psi, const std::vector<SparseVec>& phi) {
  SuperTwoCocycle out;
  out.target = psi.target;
  const std::size_t R = phi.size();
  out.values.assign(R, std::vector<SparseVec>(R));
  for (std::size_t s = 0; s < R; ++s) {
    for (std::size_t t = 0; t < R; ++t) out.values[s][t] = psi.eval(d, phi[s], phi[t]);
  }
  return out;
}

// ---------------------------------------------------------------------------

SparseVec StSharp::F_sharp(std::uint32_t i, std::uint32_t j, const SparseVec& a) const {
  return st.F(i, j, a);  // st occupies the first coordinates of st♯
}

std::vector<SparseVec> StSharp::to_sl() const {
  std::vector<SparseVec> out(ext.total.rank());
  for (std::size_t t = 0; t < st.st.rank(); ++t) out[t] = st.phi[t];
  return out;
}

StSharp build_st_sharp(Variant v, const SuperAlgebra& a, std::size_t threads) {
  StSharp s;
  s.psi = build_psi(v, a);
  const auto [m, n] = variant_shape(v);
  StOptions opt;
  opt.threads = threads;
  s.st = build_st(m, n, a, opt);
  const Domain& d = a.domain();
  s.pulled = pullback(d, s.psi.psi, s.st.phi);
  s.ext = extension_from_cocycle(s.st.st, s.pulled);

  const LieSuperAlgebra& T = s.ext.total;
  const std::size_t base = s.st.st.rank();
  const std::uint32_t N = 4, r = static_cast<std::uint32_t>(a.rank());
  const std::string pre = v == Variant::V31 ? "sh" : "dsh";
  RelationCheck& central = s.relations.add(pre + "2");
  RelationCheck& r3 = s.relations.add(pre + "3");
  RelationCheck& r4 = s.relations.add(pre + "4");
  RelationCheck& r5 = s.relations.add(pre + "5");
  RelationCheck& r6 = s.relations.add(pre + "6");
  RelationCheck* r7 = v == Variant::V22 ? &s.relations.add(pre + "7") : &r6;
  auto nm = [&](std::uint32_t i, std::uint32_t j, std::uint32_t x) {
    return "F" + std::to_string(i + 1) + std::to_string(j + 1) + "(" + a.name(x) + ")";
  };
  for (std::size_t w = base; w < T.rank(); ++w) {
    for (std::uint32_t t = 0; t < T.rank(); ++t) {
      central.record(T.bracket_basis(w, t).empty() && T.bracket_basis(t, w).empty(),
                     [&] { return "[" + T.name(w) + "," + T.name(t) + "]"; });
    }
  }
  auto eq = [&](const SparseVec& x, const SparseVec& y) { return T.reduce(vec::sub(d, x, y)).empty(); };
  for (std::uint32_t i = 0; i < N; ++i)
    for (std::uint32_t j = 0; j < N; ++j) {
      if (i == j) continue;
      for (std::uint32_t x = 0; x < r; ++x) {
        const SparseVec fa = s.F_sharp(i, j, vec::unit(x));
        r4.record(T.bracket(fa, fa).empty(), [&] { return "[" + nm(i, j, x) + "," + nm(i, j, x) + "]"; });
        for (std::uint32_t y = 0; y < r; ++y) {
          const SparseVec b = vec::unit(y);
          for (std::uint32_t k = 0; k < N; ++k) {
            if (k == i || k == j) continue;
            r3.record(eq(T.bracket(fa, s.F_sharp(j, k, b)), s.F_sharp(i, k, a.multiply(vec::unit(x), b))),
                      [&] { return "[" + nm(i, j, x) + "," + nm(j, k, y) + "]"; });
            r5.record(T.bracket(fa, s.F_sharp(i, k, b)).empty(),
                      [&] { return "[" + nm(i, j, x) + "," + nm(i, k, y) + "]"; });
            for (std::uint32_t l = 0; l < N; ++l) {
              if (l == i || l == j || l == k) continue;
              SparseVec want;
              for (const auto& e : s.psi.formula(i, j, x, k, l, y)) {
                want.push_back(Entry{static_cast<std::uint32_t>(base + e.index), e.value});
              }
              const Quadruple q{int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1};
              RelationCheck& rc = s.psi.partition.theta.at(q) >= 5 ? *r7 : r6;
              rc.record(eq(T.bracket(fa, s.F_sharp(k, l, b)), want),
                        [&] { return "[" + nm(i, j, x) + "," + nm(k, l, y) + "]"; });
            }
          }
        }
      }
    }
  return s;
}

// ---------------------------------------------------------------------------

UceComparison compare_extension_with_uce(const MatrixLieAlgebra& sl, const LieSuperAlgebra& C,
                                         const std::vector<SparseVec>& candidate_to_sl,
                                         const std::vector<SparseVec>& offdiag_lifts, std::size_t threads) {
  UceComparison rep;
  const Domain& d = C.domain();
  UniversalExtension u = uce(sl.lie, threads);
  const LieSuperAlgebra& T = u.ext.total;

  // lifts of the sl basis into the candidate
  std::vector<SparseVec> L(sl.lie.rank());
  for (std::size_t t = 0; t < L.size(); ++t) {
    if (sl.elementary[t]) L[t] = offdiag_lifts.at(t);
  }
  for (std::size_t t : sl.diag_basis) {
    SparseVec v;
    for (const auto& p : sl.provenance[t]) {
      v = vec::axpy(d, v, p.coeff,
                    C.bracket(L[sl.offdiag_index(p.i, p.j, p.a)], L[sl.offdiag_index(p.j, p.i, p.b)]));
    }
    L[t] = C.reduce(v);
  }
  auto apply = [&](const std::vector<SparseVec>& map, const SparseVec& x) {
    std::vector<Entry> terms;
    for (const auto& e : x) {
      for (const auto& y : map[e.index]) terms.push_back(Entry{y.index, e.value * y.value});
    }
    return vec::from_terms(d, std::move(terms));
  };
  // f on the generators of uce(sl)
  std::vector<SparseVec> f(T.rank());
  parallel_for(T.rank(), threads, [&](std::size_t t) {
    SparseVec v;
    for (const auto& e : u.quotient.lift(t)) {
      const Wedge2 w = u.chains.c2_basis[e.index];
      v = vec::axpy(d, v, e.value, C.bracket(L[w.i], L[w.j]));
    }
    f[t] = C.reduce(v);
  });

  rep.over_sl = true;
  rep.well_defined = true;
  for (std::size_t t = 0; t < T.rank(); ++t) {
    if (!sl.lie.reduce(vec::sub(d, apply(candidate_to_sl, f[t]), u.ext.projection[t])).empty()) {
      if (rep.over_sl) rep.notes.push_back("projection mismatch at " + T.name(t));
      rep.over_sl = false;
    }
    if (T.order(t) != 0 && !C.reduce(vec::scale(d, Scalar(T.order(t)), f[t])).empty()) {
      if (rep.well_defined) rep.notes.push_back("order not respected at " + T.name(t));
      rep.well_defined = false;
    }
  }
  std::vector<char> bad(T.rank(), 0);
  parallel_for(T.rank(), threads, [&](std::size_t s) {
    for (std::size_t t = 0; t < T.rank(); ++t) {
      const SparseVec lhs = C.reduce(apply(f, T.bracket_basis(s, t)));
      if (!C.reduce(vec::sub(d, lhs, C.bracket(f[s], f[t]))).empty()) {
        bad[s] = 1;
        return;
      }
    }
  });
  rep.homomorphism = std::find(bad.begin(), bad.end(), 1) == bad.end();
  if (!rep.homomorphism) rep.notes.push_back("f is not a Lie homomorphism");

  std::vector<SparseVec> image = f, units;
  for (std::uint32_t t = 0; t < C.rank(); ++t) {
    units.push_back(vec::unit(t));
    if (C.order(t) != 0) image.push_back(vec::unit(t, Scalar(C.order(t))));
  }
  image.erase(std::remove_if(image.begin(), image.end(), [](const SparseVec& v) { return v.empty(); }),
              image.end());
  rep.surjective = spans_equal(d, C.rank(), image, units);
  if (!rep.surjective) rep.notes.push_back("f is not surjective");

  rep.candidate_module = module_invariants(C);
  rep.uce_module = module_invariants(T);
  rep.ranks_equal = rep.candidate_module == rep.uce_module;
  if (!rep.ranks_equal) rep.notes.push_back("graded invariants differ");
  CentralExtension ce;
  ce.total = C;
  ce.projection = candidate_to_sl;
  fill_kernel(sl.lie, ce);
  rep.candidate_kernel = ce.kernel_invariants;
  rep.uce_kernel = u.ext.kernel_invariants;
  // a surjection between isomorphic finitely generated modules is bijective
  rep.isomorphic = rep.over_sl && rep.well_defined && rep.homomorphism && rep.surjective && rep.ranks_equal;
  return rep;
}

UceComparison compare_with_uce(const StSharp& s, std::size_t threads) {
  std::vector<SparseVec> lifts(s.st.sl.lie.rank());
  for (std::size_t t = 0; t < lifts.size(); ++t) {
    if (s.st.sl.elementary[t]) lifts[t] = s.st.F_basis[t];
  }
  return compare_extension_with_uce(s.st.sl, s.ext.total, s.to_sl(), lifts, threads);
}

UceComparison compare_st21_with_uce(const SuperAlgebra& a, std::size_t threads) {
  StOptions opt;
  opt.threads = threads;
  const SteinbergRealization s = build_st(2, 1, a, opt);
  std::vector<SparseVec> lifts(s.sl.lie.rank());
  for (std::size_t t = 0; t < lifts.size(); ++t) {
    if (s.sl.elementary[t]) lifts[t] = s.F_basis[t];
  }
  return compare_extension_with_uce(s.sl, s.st, s.phi, lifts, threads);
}

}  // namespace uce
