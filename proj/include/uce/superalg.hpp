#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uce/exactlin.hpp"

namespace uce {

/// Associative unital superalgebra, K-free on a parity-graded basis, given by
/// structure constants: e_i e_j = Σ_k c_ij^k e_k.
class SuperAlgebra {
 public:
  SuperAlgebra() = default;
  /// mul[i][j] is the product e_i e_j. No validation is done here.
  SuperAlgebra(Domain d, std::vector<std::string> names, std::vector<Parity> parity,
               std::size_t unit, std::vector<std::vector<SparseVec>> mul);

  const Domain& domain() const { return domain_; }
  std::size_t rank() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  Parity parity(std::size_t i) const { return parity_.at(i); }
  const std::vector<Parity>& parities() const { return parity_; }
  std::size_t unit_index() const { return unit_; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return mul_.at(i).at(j); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  SparseVec multiply(const SparseVec& x, const SparseVec& y) const;
  /// Parity of a homogeneous element (Even for 0); throws if x mixes parities.
  Parity parity_of(const SparseVec& x) const;
  /// Even and odd components of x.
  std::pair<SparseVec, SparseVec> split(const SparseVec& x) const;
  bool has_odd_part() const;

  friend bool operator==(const SuperAlgebra& a, const SuperAlgebra& b);

 private:
  Domain domain_;
  std::vector<std::string> names_;
  std::vector<Parity> parity_;
  std::size_t unit_ = 0;
  std::vector<std::vector<SparseVec>> mul_;
};

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> violations;

  void fail(std::string what) {
    pass = false;
    if (violations.size() < 50) violations.push_back(std::move(what));
  }
};

/// Unitality, parity-additivity and associativity on all basis pairs/triples.
ValidationReport validate_superalgebra(const SuperAlgebra& a);

/// xy − (−1)^{|x||y|} yx, extended bilinearly over homogeneous components.
SparseVec supercommutator(const SuperAlgebra& a, const SparseVec& x, const SparseVec& y);

/// A_m = A / I_m with I_m generated by m·a and the supercommutators.
struct GradedQuotient {
  std::vector<SparseVec> ideal_basis;     // generators of I_m as a K-module
  GradedModuleInvariants invariants;
  BlockQuotientModule projection;         // blocks are parities of A
  bool parity_shifted = false;            // Π applied
  // Ideal identities checked while building.
  bool ideal_equals_mA_plus_AAA = false;  // I_m = mA + A[A,A]
  bool left_equals_right = false;         // A[A,A] = [A,A]A

  /// Parity of quotient generator t (after any Π).
  Parity generator_parity(std::size_t t) const;
  /// ε: A → A_m on coordinates.
  SparseVec project(const SparseVec& x) const { return projection.project(x); }
  std::size_t rank() const { return projection.rank(); }
  const std::vector<Integer>& orders() const { return projection.orders(); }
};

GradedQuotient quotient_Am(const SuperAlgebra& a, unsigned long m);
GradedQuotient parity_change(const GradedQuotient& q);

/// span{[a,b]} as a list of vectors (all basis pairs).
std::vector<SparseVec> commutator_span(const SuperAlgebra& a);

/// First cyclic homology via the Koszul-signed Connes complex; ℚ only.
GradedModuleInvariants hc1_connes(const SuperAlgebra& a);

}  // namespace uce
