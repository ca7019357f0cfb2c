#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uce/domain.hpp"

namespace uce {

/// One parity component of a finitely generated module: K^free ⊕ ⊕ K/(d_i).
struct ModuleComponent {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors d_1 | d_2 | ..., all > 1

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const ModuleComponent& a, const ModuleComponent& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

/// Isomorphism class of a Z/2-graded module, per parity.
struct GradedModuleInvariants {
  ModuleComponent even;
  ModuleComponent odd;

  bool is_zero() const { return even.is_zero() && odd.is_zero(); }
  const ModuleComponent& part(Parity p) const { return p == Parity::Even ? even : odd; }
  ModuleComponent& part(Parity p) { return p == Parity::Even ? even : odd; }
  std::string to_string(const Domain& d) const;

  friend bool operator==(const GradedModuleInvariants& a, const GradedModuleInvariants& b) {
    return a.even == b.even && a.odd == b.odd;
  }
};

/// Invariants of ⊕ K/(orders_i); order 0 (or the modulus) means a free summand,
/// order 1 a zero summand.
ModuleComponent make_component(const Domain& d, const std::vector<Integer>& orders);
ModuleComponent direct_sum(const Domain& d, const ModuleComponent& a, const ModuleComponent& b);
GradedModuleInvariants direct_sum(const Domain& d, const GradedModuleInvariants& a,
                                  const GradedModuleInvariants& b);
GradedModuleInvariants power(const Domain& d, const GradedModuleInvariants& x, std::size_t copies);
/// Π: swap even and odd components.
GradedModuleInvariants parity_change(const GradedModuleInvariants& x);

/// Sparse matrix over a coefficient domain, stored as sorted row lists.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(Domain d, std::size_t rows, std::size_t cols);

  static ExactMatrix from_rows(Domain d, std::size_t cols, std::vector<SparseVec> rows);
  static ExactMatrix from_columns(Domain d, std::size_t rows, const std::vector<SparseVec>& cols);
  static ExactMatrix from_dense(Domain d, const std::vector<std::vector<long>>& entries);

  const Domain& domain() const { return domain_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseVec& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<SparseVec>& row_lists() const { return rows_; }

  Scalar get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& v);

  ExactMatrix transpose() const;
  ExactMatrix operator*(const ExactMatrix& rhs) const;
  SparseVec apply(const SparseVec& x) const;
  std::size_t nonzeros() const;

 private:
  Domain domain_;
  std::size_t cols_ = 0;
  std::vector<SparseVec> rows_;
};

/// Nonzero invariant factors of M over Z or Z/m (over Z/m, factors are taken
/// modulo m and those equal to 0 mod m are dropped).
std::vector<Integer> smith_normal_form(const ExactMatrix& m);

/// Generators of ker(M). Over fields and Z this is a basis (saturated over Z);
/// over Z/m it is a generating set of the kernel submodule.
std::vector<SparseVec> kernel_basis(const ExactMatrix& m);

/// rank over a field; over Z the rank over Q; over Z/m the number of nonzero
/// Smith factors.
std::size_t rank(const ExactMatrix& m);

/// Invariants of span(generators)/span(relations), per parity. Throws
/// RelationsNotContained if a relation lies outside the generator span.
GradedModuleInvariants quotient_invariants(const Domain& d, std::size_t ambient_rank,
                                           const std::vector<SparseVec>& generators,
                                           const std::vector<SparseVec>& relations,
                                           const std::vector<Parity>& parities);

/// Generators of {x : Σ x_i images_i ∈ Σ K·orders_j e_j} inside K^images.size().
/// `target_orders[j]` is the annihilator of target coordinate j (0 for none).
std::vector<SparseVec> preimage_generators(const Domain& d, std::size_t target_dim,
                                           const std::vector<SparseVec>& images,
                                           const std::vector<Integer>& target_orders);

/// Incrementally built submodule of K^n supporting membership tests.
class Span {
 public:
  Span(const Domain& d, std::size_t ambient);
  ~Span();
  Span(Span&&) noexcept;
  Span& operator=(Span&&) noexcept;

  /// Returns true if the span grew.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const;
  /// Number of echelon rows (the rank over a field or over Z).
  std::size_t echelon_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool spans_equal(const Domain& d, std::size_t ambient, const std::vector<SparseVec>& a,
                 const std::vector<SparseVec>& b);

/// Echelon basis rows of span(gens) over Z or Z/m (for Z/m the rows of the
/// lattice span(gens) + mZ^n, reduced mod m, zero rows dropped).
std::vector<SparseVec> lattice_echelon_rows(const Domain& d, std::size_t dim,
                                            const std::vector<SparseVec>& gens);

/// Expresses targets as combinations Σ x_p g_p of fixed generators.
class LinearSolver {
 public:
  LinearSolver(const Domain& d, std::size_t dim, const std::vector<SparseVec>& generators);
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  /// Some x with Σ x_p g_p = target, or nullopt if target is outside the span.
  /// Unique when the generators are independent.
  std::optional<SparseVec> solve(const SparseVec& target) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// K^n / span(relations) presented as a direct sum of cyclic modules.
/// Generator t has annihilator orders()[t] (0 = free) and representative lift(t);
/// project() maps ambient vectors to generator coordinates.
class QuotientModule {
 public:
  QuotientModule() = default;
  static QuotientModule build(const Domain& d, std::size_t ambient,
                              const std::vector<SparseVec>& relations);

  const Domain& domain() const { return domain_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<Integer>& orders() const { return orders_; }
  SparseVec project(const SparseVec& x) const;
  const SparseVec& lift(std::size_t t) const { return lifts_.at(t); }

 private:
  Domain domain_;
  std::size_t ambient_ = 0;
  std::vector<Integer> orders_;
  std::vector<SparseVec> lifts_;
  // Field path: pivot rows with unit leads, and ambient column -> generator.
  std::vector<SparseVec> pivot_rows_;
  std::vector<long> pivot_of_col_;
  std::vector<long> generator_of_col_;
  // Lattice path: generator t has coordinate functional coords_[t] (a column of V).
  std::vector<SparseVec> coords_;
};

/// K^n / span(relations) for relations homogeneous with respect to a block
/// grading of the coordinates; generators are homogeneous, numbered block by
/// block in increasing block id.
class BlockQuotientModule {
 public:
  BlockQuotientModule() = default;
  /// Throws InvalidArgument if a relation mixes blocks.
  static BlockQuotientModule build(const Domain& d, const std::vector<std::size_t>& block_of,
                                   const std::vector<SparseVec>& relations,
                                   std::size_t threads = 1);

  const Domain& domain() const { return domain_; }
  std::size_t ambient() const { return block_of_.size(); }
  std::size_t rank() const { return orders_.size(); }
  const std::vector<Integer>& orders() const { return orders_; }
  std::size_t block_of_generator(std::size_t t) const { return gen_block_.at(t); }
  SparseVec project(const SparseVec& x) const;
  const SparseVec& lift(std::size_t t) const { return lifts_.at(t); }

 private:
  Domain domain_;
  std::vector<std::size_t> block_of_;
  std::vector<std::uint32_t> local_;
  std::vector<std::size_t> block_ids_;
  std::vector<QuotientModule> blocks_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<Integer> orders_;
  std::vector<std::size_t> gen_block_;
  std::vector<SparseVec> lifts_;
};

/// Reduce coordinates modulo per-coordinate annihilators (0 = none).
SparseVec reduce_mod_orders(const Domain& d, SparseVec x, const std::vector<Integer>& orders);

}  // namespace uce
