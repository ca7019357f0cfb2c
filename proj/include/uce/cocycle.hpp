#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "uce/steinberg.hpp"

namespace uce {

enum class Variant { V31, V22 };

/// "3,1" or "2,2"; throws VariantNotSupported otherwise.
Variant parse_variant(const std::string& text);
std::string variant_name(Variant v);
std::pair<int, int> variant_shape(Variant v);

/// Quadruple of distinct indices in {1,2,3,4} (1-based, as in the tables).
using Quadruple = std::array<int, 4>;

/// S₄ split into the six cosets of the Klein subgroup acting on positions
/// (swap 1↔3, swap 2↔4).
struct QuadruplePartition {
  std::array<std::vector<Quadruple>, 6> cosets;  // cosets[m-1] = P_m
  std::map<Quadruple, int> theta;                // quadruple → m in 1..6
};

struct SignTable {
  std::map<Quadruple, int> sigma;
  int operator()(const Quadruple& q) const { return sigma.at(q); }
};

std::pair<QuadruplePartition, SignTable> klein_theta_sigma(Variant v);

/// ψ on sl(variant, A) with values in W (six copies of A₂ or A₀, shifted or not).
struct PsiData {
  Variant variant;
  MatrixLieAlgebra sl;
  QuadruplePartition partition;
  SignTable sigma;
  GradedQuotient a2, a0;
  std::array<std::size_t, 6> copy_offset{};
  std::array<bool, 6> copy_is_a0{};
  SuperTwoCocycle psi;

  /// ε_m(ā) in W coordinates, m in 1..6.
  SparseVec epsilon(int m, const SparseVec& a) const;
  /// ψ(F_ij(e_x), F_kl(e_y)) by the defining formula (0-based indices).
  SparseVec formula(std::uint32_t i, std::uint32_t j, std::uint32_t x, std::uint32_t k, std::uint32_t l,
                    std::uint32_t y) const;
};

PsiData build_psi(Variant v, const SuperAlgebra& a);

/// ψ∘(φ×φ) for a linear map φ given on basis elements.
SuperTwoCocycle pullback(const Domain& d, const SuperTwoCocycle& psi, const std::vector<SparseVec>& phi);

struct StSharp {
  PsiData psi;
  SteinbergRealization st;
  SuperTwoCocycle pulled;
  CentralExtension ext;     // st♯ → st
  CheckReport relations;    // (sh)/(dsh) relations on F♯

  /// F♯_ij(a) = (F(i,j,a), 0)
  SparseVec F_sharp(std::uint32_t i, std::uint32_t j, const SparseVec& a) const;
  /// Composite st♯ → sl.
  std::vector<SparseVec> to_sl() const;
};

StSharp build_st_sharp(Variant v, const SuperAlgebra& a, std::size_t threads = 1);

struct UceComparison {
  GradedModuleInvariants candidate_module, uce_module;
  GradedModuleInvariants candidate_kernel, uce_kernel;  // over sl
  bool ranks_equal = false;
  bool homomorphism = false;   // f[u,v] = [fu,fv]
  bool well_defined = false;   // f respects the orders of uce(sl)
  bool over_sl = false;        // f commutes with the projections to sl
  bool surjective = false;
  bool isomorphic = false;
  std::vector<std::string> notes;

  bool pass() const { return isomorphic; }
};

/// Builds f: uce(sl) → candidate, [x̂,ŷ] ↦ [L(x), L(y)] with L the lift of sl
/// basis elements (off-diagonal ones given, diagonal ones through their
/// bracket provenance), and checks that it is an isomorphism of extensions.
UceComparison compare_extension_with_uce(const MatrixLieAlgebra& sl, const LieSuperAlgebra& candidate,
                                         const std::vector<SparseVec>& candidate_to_sl,
                                         const std::vector<SparseVec>& offdiag_lifts,
                                         std::size_t threads = 1);

UceComparison compare_with_uce(const StSharp& s, std::size_t threads = 1);
/// The (2,1) analogue: st(2,1,A) against uce(sl(2,1,A)).
UceComparison compare_st21_with_uce(const SuperAlgebra& a, std::size_t threads = 1);

}  // namespace uce
