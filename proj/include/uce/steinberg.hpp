#pragma once

#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "uce/liesuper.hpp"
#include "uce/matgl.hpp"

namespace uce {

/// Outcome of one relation family checked over many instances.
struct RelationCheck {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;  // first failing instances

  bool pass() const { return failures == 0; }
  void record(bool ok, const std::function<std::string()>& what);
};

struct CheckReport {
  std::deque<RelationCheck> checks;  // stable references from add()

  bool pass() const;
  RelationCheck& add(std::string name);
  const RelationCheck* find(const std::string& name) const;
  std::string summary() const;
};

struct StOptions {
  /// Divide uce(sl) by the classes [x,y] of lifts of E_ij(a), E_kl(b) with
  /// j ≠ k, i ≠ l (the pairs of (st3)). Off only for negative controls.
  bool quotient_central = true;
  /// F(i,j,a) := [H(i,k;1,1), raw lift] with k the least index ∉ {i,j}.
  /// Off: the raw lift [E_ik(1) ∧ E_kj(a)] is used as is.
  bool normalize_lifts = true;
  std::size_t threads = 1;
};

/// st(m,n,A) realized as a quotient of uce(sl(m,n,A)).
struct SteinbergRealization {
  MatrixLieAlgebra sl;
  LieSuperAlgebra st;
  std::vector<SparseVec> phi;      // st basis → sl coordinates
  std::vector<SparseVec> F_basis;  // F(i,j,e_k) at sl.offdiag_index(i,j,k)
  CentralExtension kernel;         // st → sl with its kernel
  std::size_t central_generators = 0;  // nonzero classes divided out
  StOptions options;

  const GradedModuleInvariants& kernel_invariants() const { return kernel.kernel_invariants; }
  Parity index_parity(std::uint32_t i) const { return sl.index_parity(i); }

  SparseVec F(std::uint32_t i, std::uint32_t j, const SparseVec& a) const;
  /// H_ij(a,b) = [F_ij(a), F_ji(b)]
  SparseVec H(std::uint32_t i, std::uint32_t j, const SparseVec& a, const SparseVec& b) const;
  /// h(a,b) = H_1j(a,b) − (−1)^{|a||b|} H_1j(1,ba), j ≥ 2 (0-based j ≥ 1)
  SparseVec h(const SparseVec& a, const SparseVec& b, std::uint32_t j = 1) const;
  SparseVec phi_of(const SparseVec& x) const;
};

SteinbergRealization build_st(int m, int n, const SuperAlgebra& a, const StOptions& opt = {});

/// (st2) and (st3) on all basis values and index tuples.
CheckReport verify_presentation(const SteinbergRealization& s);
/// The eight identities for H and h, plus independence of h from j.
CheckReport verify_identities(const SteinbergRealization& s);
/// st = h(A,A) ⊕ ⊕_j H_1j(1,A) ⊕ ⊕_{i≠j} F_ij(A), checked on invariants.
CheckReport verify_decomposition(const SteinbergRealization& s);

/// Invariants of the submodule of st spanned by vecs.
GradedModuleInvariants span_invariants(const LieSuperAlgebra& l, const std::vector<SparseVec>& vecs);

/// ker(st(3,2,A) → sl(3,2,A)), used as the HC₁ value when no Connes complex
/// is available.
GradedModuleInvariants hc1_kernel_oracle(const SuperAlgebra& a, std::size_t threads = 1);

}  // namespace uce
