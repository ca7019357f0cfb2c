#include "uce/matgl.hpp"

#include <sstream>

namespace uce {

namespace {

std::string elementary_name(const SuperAlgebra& a, std::uint32_t i, std::uint32_t j,
                            std::uint32_t k) {
  std::ostringstream os;
  os << "E" << (i + 1) << (j + 1) << "(" << a.name(k) << ")";
  return os.str();
}

Weight elementary_weight(int size, std::uint32_t i, std::uint32_t j) {
  Weight w(size, 0);
  w[i] += 1;
  w[j] -= 1;
  return w;
}

// [E_ij(e_a), E_kl(e_b)] in gl coordinates.
SparseVec gl_basis_bracket(const MatrixLieAlgebra& g, std::uint32_t i, std::uint32_t j,
                           std::uint32_t a, std::uint32_t k, std::uint32_t l, std::uint32_t b) {
  const SuperAlgebra& A = g.A;
  const Parity px = g.index_parity(i) + g.index_parity(j) + A.parity(a);
  const Parity py = g.index_parity(k) + g.index_parity(l) + A.parity(b);
  std::vector<Entry> terms;
  if (j == k) {
    for (const auto& e : A.product(a, b)) {
      terms.push_back(Entry{static_cast<std::uint32_t>(g.gl_index(i, l, e.index)), e.value});
    }
  }
  if (l == i) {
    const int s = koszul(px, py);
    for (const auto& e : A.product(b, a)) {
      terms.push_back(Entry{static_cast<std::uint32_t>(g.gl_index(k, j, e.index)), -s * e.value});
    }
  }
  return vec::from_terms(A.domain(), std::move(terms));
}

struct GlCoord {
  std::uint32_t i, j, k;
};

GlCoord decode(const MatrixLieAlgebra& g, std::size_t idx) {
  const std::size_t r = g.A.rank();
  const std::size_t N = g.size();
  return {static_cast<std::uint32_t>(idx / r / N), static_cast<std::uint32_t>((idx / r) % N),
          static_cast<std::uint32_t>(idx % r)};
}

MatrixLieAlgebra skeleton(int m, int n, const SuperAlgebra& a) {
  if (m < 0 || n < 0 || m + n < 3) {
    throw Error(ErrorCode::RankTooSmall, "matrix size m+n must be at least 3");
  }
  MatrixLieAlgebra g;
  g.m = m;
  g.n = n;
  g.A = a;
  return g;
}

}  // namespace

SparseVec gl_bracket(const MatrixLieAlgebra& g, const SparseVec& x, const SparseVec& y) {
  const Domain& d = g.A.domain();
  std::vector<Entry> terms;
  for (const auto& u : x) {
    const GlCoord p = decode(g, u.index);
    for (const auto& v : y) {
      const GlCoord q = decode(g, v.index);
      if (p.j != q.i && q.j != p.i) continue;
      const Scalar c = u.value * v.value;
      for (const auto& e : gl_basis_bracket(g, p.i, p.j, p.k, q.i, q.j, q.k)) {
        terms.push_back(Entry{e.index, c * e.value});
      }
    }
  }
  return vec::from_terms(d, std::move(terms));
}

SparseVec MatrixLieAlgebra::gl_elementary(std::uint32_t i, std::uint32_t j, const SparseVec& a) const {
  SparseVec out;
  for (const auto& e : a) out.push_back(Entry{static_cast<std::uint32_t>(gl_index(i, j, e.index)), e.value});
  return out;
}

std::size_t MatrixLieAlgebra::offdiag_index(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
  const std::int64_t t = offdiag_.at(gl_index(i, j, k));
  if (t < 0) throw Error(ErrorCode::InvalidArgument, "not an off-diagonal basis element");
  return static_cast<std::size_t>(t);
}

SparseVec MatrixLieAlgebra::from_gl(const SparseVec& x) const {
  std::vector<Entry> terms;
  SparseVec diag;
  for (const auto& e : x) {
    const std::int64_t t = offdiag_.at(e.index);
    if (t >= 0) {
      terms.push_back(Entry{static_cast<std::uint32_t>(t), e.value});
    } else {
      diag.push_back(e);
    }
  }
  if (!diag.empty()) {
    if (!diag_solver) throw Error(ErrorCode::InvalidArgument, "element is not in the algebra");
    auto c = diag_solver->solve(diag);
    if (!c) throw Error(ErrorCode::InvalidArgument, "element is not in the algebra");
    for (const auto& e : *c) {
      terms.push_back(Entry{static_cast<std::uint32_t>(diag_basis.at(e.index)), e.value});
    }
  }
  return lie.reduce(vec::from_terms(A.domain(), std::move(terms)));
}

MatrixLieAlgebra build_gl(int m, int n, const SuperAlgebra& a) {
  MatrixLieAlgebra g = skeleton(m, n, a);
  const auto N = static_cast<std::uint32_t>(g.size());
  const std::size_t D = g.gl_rank();
  std::vector<std::string> names(D);
  std::vector<Parity> parity(D);
  std::vector<Weight> weights(D);
  g.offdiag_.assign(D, -1);
  g.elementary.resize(D);
  g.provenance.resize(D);
  for (std::uint32_t i = 0; i < N; ++i) {
    for (std::uint32_t j = 0; j < N; ++j) {
      for (std::uint32_t k = 0; k < a.rank(); ++k) {
        const std::size_t t = g.gl_index(i, j, k);
        names[t] = elementary_name(a, i, j, k);
        parity[t] = g.index_parity(i) + g.index_parity(j) + a.parity(k);
        weights[t] = elementary_weight(g.size(), i, j);
        g.gl_embedding.push_back(vec::unit(static_cast<std::uint32_t>(t)));
        g.offdiag_[t] = static_cast<std::int64_t>(t);  // every gl coordinate is a basis element
        if (i != j) g.elementary[t] = std::array<std::uint32_t, 3>{i, j, k};
      }
    }
  }
  std::vector<std::vector<SparseVec>> table(D, std::vector<SparseVec>(D));
  for (std::size_t s = 0; s < D; ++s) {
    const GlCoord p = decode(g, s);
    for (std::size_t t = 0; t < D; ++t) {
      const GlCoord q = decode(g, t);
      table[s][t] = gl_basis_bracket(g, p.i, p.j, p.k, q.i, q.j, q.k);
    }
  }
  g.lie = LieSuperAlgebra(a.domain(), std::move(names), std::move(parity),
                          std::vector<Integer>(D, 0), std::move(table));
  g.lie.set_weights(std::move(weights));
  return g;
}

MatrixLieAlgebra build_sl(int m, int n, const SuperAlgebra& a) {
  MatrixLieAlgebra g = skeleton(m, n, a);
  const Domain& d = a.domain();
  const auto N = static_cast<std::uint32_t>(g.size());
  const auto r = static_cast<std::uint32_t>(a.rank());
  const std::size_t D = g.gl_rank();
  g.offdiag_.assign(D, -1);

  std::vector<std::string> names;
  std::vector<Parity> parity;
  std::vector<Weight> weights;
  // E_ij(e_k) = [E_il(1), E_lj(e_k)] for l ∉ {i,j}, so every off-diagonal
  // elementary matrix lies in the derived algebra.
  for (std::uint32_t i = 0; i < N; ++i) {
    for (std::uint32_t j = 0; j < N; ++j) {
      if (i == j) continue;
      for (std::uint32_t k = 0; k < r; ++k) {
        g.offdiag_[g.gl_index(i, j, k)] = static_cast<std::int64_t>(g.gl_embedding.size());
        g.gl_embedding.push_back(vec::unit(static_cast<std::uint32_t>(g.gl_index(i, j, k))));
        g.elementary.push_back(std::array<std::uint32_t, 3>{i, j, k});
        g.provenance.emplace_back();
        names.push_back(elementary_name(a, i, j, k));
        parity.push_back(g.index_parity(i) + g.index_parity(j) + a.parity(k));
        weights.push_back(elementary_weight(g.size(), i, j));
      }
    }
  }
  // Diagonal part: spanned by [E_ij(e_a), E_ji(e_b)] with i ≠ j (the values
  // E_ii([a,b]) lie in this span as well).
  std::vector<SparseVec> diag_values;
  std::vector<std::array<std::uint32_t, 4>> diag_source;
  for (std::uint32_t i = 0; i < N; ++i) {
    for (std::uint32_t j = 0; j < N; ++j) {
      if (i == j) continue;
      for (std::uint32_t x = 0; x < r; ++x) {
        for (std::uint32_t y = 0; y < r; ++y) {
          SparseVec v = gl_basis_bracket(g, i, j, x, j, i, y);
          if (v.empty()) continue;
          diag_values.push_back(std::move(v));
          diag_source.push_back({i, j, x, y});
        }
      }
    }
  }
  std::vector<SparseVec> chosen;
  if (d.is_field()) {
    Span span(d, D);
    for (const auto& v : diag_values) {
      if (span.insert(v)) chosen.push_back(v);
    }
  } else {
    chosen = lattice_echelon_rows(d, D, diag_values);
    // the rows must form a basis of a free submodule
    if (d.kind() == DomainKind::IntegersMod) {
      bool free = preimage_generators(d, D, chosen, {}).empty();
      for (const auto& v : diag_values) {
        if (!free) break;
        free = LinearSolver(d, D, chosen).solve(v).has_value();
      }
      if (!free) {
        throw Error(ErrorCode::Unsupported,
                    "diagonal part of sl is not free over " + d.name());
      }
    }
  }
  const LinearSolver by_values(d, D, diag_values);
  for (const auto& v : chosen) {
    auto c = by_values.solve(v);
    if (!c) throw Error(ErrorCode::ChainInconsistency, "diagonal basis outside its span");
    std::vector<MatrixLieAlgebra::DiagonalTerm> terms;
    for (const auto& e : *c) {
      const auto& s = diag_source[e.index];
      terms.push_back({e.value, s[0], s[1], s[2], s[3]});
    }
    const std::size_t t = g.gl_embedding.size();
    g.diag_basis.push_back(t);
    g.gl_embedding.push_back(v);
    g.elementary.emplace_back();
    if (terms.size() == 1 && terms[0].coeff == 1) {
      const auto& s = terms[0];
      names.push_back("H" + std::to_string(s.i + 1) + std::to_string(s.j + 1) + "(" + a.name(s.a) +
                      "," + a.name(s.b) + ")");
    } else {
      names.push_back("h" + std::to_string(g.diag_basis.size()));
    }
    g.provenance.push_back(std::move(terms));
    parity.push_back(a.parity(decode(g, v.front().index).k));
    weights.push_back(Weight(g.size(), 0));
  }
  g.diag_solver = std::make_shared<LinearSolver>(d, D, chosen);

  const std::size_t R = g.gl_embedding.size();
  std::vector<std::vector<SparseVec>> table(R, std::vector<SparseVec>(R));
  // from_gl needs g.lie only for reduction, which is trivial for free sl
  g.lie = LieSuperAlgebra(d, names, parity, std::vector<Integer>(R, 0),
                          std::vector<std::vector<SparseVec>>(R, std::vector<SparseVec>(R)));
  for (std::size_t s = 0; s < R; ++s) {
    for (std::size_t t = 0; t < R; ++t) {
      table[s][t] = g.from_gl(gl_bracket(g, g.gl_embedding[s], g.gl_embedding[t]));
    }
  }
  g.lie = LieSuperAlgebra(d, std::move(names), std::move(parity), std::vector<Integer>(R, 0),
                          std::move(table));
  g.lie.set_weights(std::move(weights));
  return g;
}

SparseVec supertrace(const MatrixLieAlgebra& g, const SparseVec& x) {
  std::vector<Entry> terms;
  for (const auto& e : x) {
    const GlCoord c = decode(g, e.index);
    if (c.i != c.j) continue;
    const int odd_i = bit(g.index_parity(c.i));
    const int s = (odd_i && !bit(g.A.parity(c.k))) ? -1 : 1;
    terms.push_back(Entry{c.k, s * e.value});
  }
  return vec::from_terms(g.A.domain(), std::move(terms));
}

MembershipReport sl_membership_check(int m, int n, const SuperAlgebra& a) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "the supertrace characterization needs m >= 1");
  const MatrixLieAlgebra gl = build_gl(m, n, a);
  const Domain& d = a.domain();
  const std::size_t D = gl.gl_rank();
  const auto N = static_cast<std::uint32_t>(gl.size());
  const auto r = static_cast<std::uint32_t>(a.rank());

  std::vector<SparseVec> derived;
  for (std::size_t s = 0; s < D; ++s) {
    for (std::size_t t = 0; t < D; ++t) {
      if (!gl.lie.bracket_basis(s, t).empty()) derived.push_back(gl.lie.bracket_basis(s, t));
    }
  }
  // {x : Str(x) ∈ [A,A]}: all off-diagonal coordinates, plus diagonal
  // combinations whose supertrace is a combination of supercommutators.
  std::vector<SparseVec> str_span;
  std::vector<std::size_t> diag_coords;
  std::vector<SparseVec> images;
  for (std::uint32_t i = 0; i < N; ++i) {
    for (std::uint32_t j = 0; j < N; ++j) {
      for (std::uint32_t k = 0; k < r; ++k) {
        const auto idx = static_cast<std::uint32_t>(gl.gl_index(i, j, k));
        if (i != j) {
          str_span.push_back(vec::unit(idx));
        } else {
          diag_coords.push_back(idx);
          images.push_back(supertrace(gl, vec::unit(idx)));
        }
      }
    }
  }
  const std::size_t nd = images.size();
  for (auto& c : commutator_span(a)) images.push_back(vec::scale(d, -1, c));
  for (const auto& k : preimage_generators(d, r, images, {})) {
    SparseVec v;
    for (const auto& e : k) {
      if (e.index < nd) v.push_back(Entry{static_cast<std::uint32_t>(diag_coords[e.index]), e.value});
    }
    std::sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
    if (!v.empty()) str_span.push_back(std::move(v));
  }
  MembershipReport rep;
  rep.derived_rank = rank(ExactMatrix::from_rows(d, D, derived));
  rep.supertrace_rank = rank(ExactMatrix::from_rows(d, D, str_span));
  rep.pass = spans_equal(d, D, derived, str_span);
  const MatrixLieAlgebra sl = build_sl(m, n, a);
  rep.basis_matches = spans_equal(d, D, derived, sl.gl_embedding);
  return rep;
}

}  // namespace uce
