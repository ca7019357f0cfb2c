#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uce/exactlin.hpp"
#include "uce/superalg.hpp"

namespace uce {

using Weight = std::vector<int>;

/// Lie superalgebra on a parity-graded basis. Basis element i generates a
/// cyclic summand with annihilator order(i) (0 = free); brackets are stored
/// reduced modulo these orders. An optional weight grading (one vector per
/// basis element, additive under the bracket) is used to split homology
/// computations into blocks.
class LieSuperAlgebra {
 public:
  LieSuperAlgebra() = default;
  LieSuperAlgebra(Domain d, std::vector<std::string> names, std::vector<Parity> parity,
                  std::vector<Integer> orders, std::vector<std::vector<SparseVec>> table);

  const Domain& domain() const { return domain_; }
  std::size_t rank() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  Parity parity(std::size_t i) const { return parity_.at(i); }
  const std::vector<Parity>& parities() const { return parity_; }
  const Integer& order(std::size_t i) const { return orders_.at(i); }
  const std::vector<Integer>& orders() const { return orders_; }
  bool is_free() const;

  const SparseVec& bracket_basis(std::size_t i, std::size_t j) const { return table_[i][j]; }
  SparseVec bracket(const SparseVec& x, const SparseVec& y) const;
  /// Reduce coordinates modulo the orders.
  SparseVec reduce(const SparseVec& x) const;

  bool has_weights() const { return !weights_.empty(); }
  const Weight& weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<Weight>& weights() const { return weights_; }
  void set_weights(std::vector<Weight> w);

 private:
  Domain domain_;
  std::vector<std::string> names_;
  std::vector<Parity> parity_;
  std::vector<Integer> orders_;
  std::vector<std::vector<SparseVec>> table_;
  std::vector<Weight> weights_;
};

/// Parity additivity, super antisymmetry, [x,x] = 0 for even x (basis and
/// random combinations), [x,[x,x]] = 0 for odd basis x, super Jacobi on all
/// basis triples, compatibility of the bracket with the orders and weights.
ValidationReport validate_lie_superalgebra(const LieSuperAlgebra& l, unsigned seed = 1);

bool is_perfect(const LieSuperAlgebra& l);

/// Invariants of the underlying module (cyclic summands by order, per parity).
GradedModuleInvariants module_invariants(const LieSuperAlgebra& l);

/// Symbol e_i∧e_j (i ≤ j; i = j only for odd e_i) or e_i∧e_j∧e_k.
struct Wedge2 {
  std::uint32_t i, j;
};
struct Wedge3 {
  std::uint32_t i, j, k;
};

/// Degree-2 and degree-3 parts of the super Chevalley–Eilenberg complex.
struct ChainData {
  std::vector<Wedge2> c2_basis;
  std::vector<Wedge3> c3_basis;
  std::vector<Parity> c2_parity;
  std::vector<std::size_t> c2_block;  // (weight, parity) block of each C₂ symbol
  std::vector<SparseVec> d2;          // image of each C₂ symbol in L (reduced)
  std::vector<SparseVec> d3;          // image of each C₃ symbol in C₂
  std::vector<SparseVec> torsion;     // order_i · e_i∧e_j for non-free e_i

  std::size_t c2_index(std::uint32_t i, std::uint32_t j) const;
  /// Coordinates of x∧y in C₂ for arbitrary x, y ∈ L.
  SparseVec wedge(const LieSuperAlgebra& l, const SparseVec& x, const SparseVec& y) const;

  std::vector<std::int64_t> index_;  // dense (i,j) → symbol index, -1 if none
  std::size_t n_ = 0;
};

/// C₂ only (no d₃).
ChainData exterior_square(const LieSuperAlgebra& l);
/// C₂, C₃ and both differentials; throws ChainInconsistency if d₂∘d₃ ≠ 0.
ChainData chain_data(const LieSuperAlgebra& l, std::size_t threads = 1);

/// H₂(L) = {x ∈ C₂ : d₂x = 0} / (im d₃ + torsion relations), per parity.
GradedModuleInvariants ce_h2(const LieSuperAlgebra& l, std::size_t threads = 1);

/// A graded module W given on generators with annihilators (0 = free).
struct GradedModuleSpec {
  std::vector<std::string> names;
  std::vector<Parity> parity;
  std::vector<Integer> orders;
  std::vector<Weight> weights;  // optional

  std::size_t rank() const { return names.size(); }
  GradedModuleInvariants invariants(const Domain& d) const;
};

/// Bilinear map L × L → W stored on basis pairs.
struct SuperTwoCocycle {
  GradedModuleSpec target;
  std::vector<std::vector<SparseVec>> values;

  SparseVec eval(const Domain& d, const SparseVec& x, const SparseVec& y) const;
};

/// Super antisymmetry, evenness, ψ(x,x) = 0 for even x (basis and random
/// combinations), J(x,y,z) = 0 on all basis triples, ψ([x,x],x) = 0 for odd x,
/// and compatibility with the orders of L and W.
ValidationReport check_super_2cocycle(const LieSuperAlgebra& l, const SuperTwoCocycle& psi,
                                      unsigned seed = 1);

struct CentralExtension {
  LieSuperAlgebra total;
  std::vector<SparseVec> projection;  // image in the base of each total basis element
  std::vector<SparseVec> kernel_basis;
  GradedModuleInvariants kernel_invariants;
};

/// Kernel generators and invariants of a projection total → base.
void fill_kernel(const LieSuperAlgebra& base, CentralExtension& ext);

/// uce(L) = C₂/(im d₃ + torsion) with [u,v] = d₂u ∧ d₂v.
struct UniversalExtension {
  LieSuperAlgebra base;
  CentralExtension ext;
  ChainData chains;
  BlockQuotientModule quotient;  // C₂ → total coordinates

  /// Class of x∧y in the total algebra.
  SparseVec wedge_class(const SparseVec& x, const SparseVec& y) const;
};

UniversalExtension uce(const LieSuperAlgebra& l, std::size_t threads = 1);

/// L ⊕ W with [(x,w),(y,w')] = ([x,y], ψ(x,y)); throws CocycleInvalid unless
/// ψ passes check_super_2cocycle.
CentralExtension extension_from_cocycle(const LieSuperAlgebra& l, const SuperTwoCocycle& psi);

}  // namespace uce
