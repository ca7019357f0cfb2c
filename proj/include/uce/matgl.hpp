#pragma once

#include <array>
#include <memory>
#include <optional>

#include "uce/liesuper.hpp"
#include "uce/superalg.hpp"

namespace uce {

/// gl(m,n,A) or sl(m,n,A) materialized on its own basis. Matrix indices are
/// 0-based internally (index i is odd iff i >= m); names use 1-based indices.
/// gl coordinates: E_ij(e_k) ↦ (i·N + j)·rank(A) + k with N = m+n.
struct MatrixLieAlgebra {
  struct DiagonalTerm {
    Scalar coeff;
    std::uint32_t i, j, a, b;  // coeff·[E_ij(e_a), E_ji(e_b)], i ≠ j
  };

  int m = 0, n = 0;
  SuperAlgebra A;
  LieSuperAlgebra lie;
  std::vector<SparseVec> gl_embedding;  // per basis element
  /// Off-diagonal elementary basis element E_ij(e_k), if basis element t is one.
  std::vector<std::optional<std::array<std::uint32_t, 3>>> elementary;
  /// For the diagonal basis elements: expression through brackets.
  std::vector<std::vector<DiagonalTerm>> provenance;

  int size() const { return m + n; }
  Parity index_parity(std::uint32_t i) const {
    return static_cast<int>(i) >= m ? Parity::Odd : Parity::Even;
  }
  std::size_t gl_index(std::uint32_t i, std::uint32_t j, std::uint32_t k) const {
    return (static_cast<std::size_t>(i) * size() + j) * A.rank() + k;
  }
  std::size_t gl_rank() const { return static_cast<std::size_t>(size()) * size() * A.rank(); }
  /// Basis index of E_ij(e_k) (i ≠ j).
  std::size_t offdiag_index(std::uint32_t i, std::uint32_t j, std::uint32_t k) const;
  /// Coordinates of a gl vector in this basis; throws if it is not in the span.
  SparseVec from_gl(const SparseVec& x) const;
  /// gl vector of E_ij(a) for an algebra element a.
  SparseVec gl_elementary(std::uint32_t i, std::uint32_t j, const SparseVec& a) const;

  std::shared_ptr<const LinearSolver> diag_solver;  // diagonal part, sl only
  std::vector<std::size_t> diag_basis;              // basis indices of the diagonal part
  std::vector<std::int64_t> offdiag_;               // gl index → basis index
};

/// Matrix superalgebra bracket on gl coordinates.
SparseVec gl_bracket(const MatrixLieAlgebra& g, const SparseVec& x, const SparseVec& y);

MatrixLieAlgebra build_gl(int m, int n, const SuperAlgebra& a);
MatrixLieAlgebra build_sl(int m, int n, const SuperAlgebra& a);

/// Str(x) = Σ (−1)^{|i|(|i|+|x_ii|)} x_ii for x in gl coordinates.
SparseVec supertrace(const MatrixLieAlgebra& g, const SparseVec& x);

struct MembershipReport {
  bool pass = false;
  std::size_t derived_rank = 0;
  std::size_t supertrace_rank = 0;
  bool basis_matches = false;  // sl basis spans the derived algebra
};

/// Compares span{[x,y] : x,y ∈ gl} with {x : Str(x) ∈ [A,A]}.
MembershipReport sl_membership_check(int m, int n, const SuperAlgebra& a);

}  // namespace uce
