#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "uce/error.hpp"

namespace uce {

using Integer = mpz_class;
using Scalar = mpq_class;

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
inline int bit(Parity p) { return static_cast<int>(p); }
/// (-1)^{|a||b|}
inline int koszul(Parity a, Parity b) { return (bit(a) & bit(b)) ? -1 : 1; }

enum class DomainKind { Integers, Rationals, IntegersMod, PrimeField };

/// Exact commutative base ring: Z, Q, Z/m or GF(p).
class Domain {
 public:
  Domain() = default;

  static Domain integers();
  static Domain rationals();
  static Domain integers_mod(const Integer& m);
  static Domain prime_field(const Integer& p);
  /// Accepts "Z", "Q", "GF(p)" and "Z/m".
  static Domain parse(std::string_view text);

  DomainKind kind() const { return kind_; }
  const Integer& modulus() const { return modulus_; }
  bool is_field() const {
    return kind_ == DomainKind::Rationals || kind_ == DomainKind::PrimeField;
  }
  /// Z and Z/m: computations go through integer lattices.
  bool is_lattice() const { return !is_field(); }
  /// Characteristic as an integer (0 for Z and Q).
  Integer characteristic() const;

  std::string name() const;

  /// Canonical representative; throws if x has no image in the domain.
  Scalar normalize(const Scalar& x) const;
  bool is_zero(const Scalar& x) const { return normalize(x) == 0; }
  Scalar from_int(long v) const { return normalize(Scalar(v)); }

  Scalar parse_literal(std::string_view text) const;
  std::string format(const Scalar& x) const;

  /// Whether an annihilator order leaves the cyclic summand free over this
  /// domain. Free summands are stored with order 0; the modulus is accepted too.
  bool order_is_free(const Integer& order) const;
  Integer free_order() const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }

 private:
  DomainKind kind_ = DomainKind::Integers;
  Integer modulus_ = 0;
};

struct Entry {
  std::uint32_t index;
  Scalar value;

  friend bool operator==(const Entry& a, const Entry& b) {
    return a.index == b.index && a.value == b.value;
  }
};

/// Sparse coordinate vector; entries sorted by index, no stored zeros.
using SparseVec = std::vector<Entry>;

namespace vec {

SparseVec unit(std::uint32_t index, const Scalar& value = 1);
/// y + c*x, normalized in the domain.
SparseVec axpy(const Domain& d, const SparseVec& y, const Scalar& c, const SparseVec& x);
SparseVec add(const Domain& d, const SparseVec& a, const SparseVec& b);
SparseVec sub(const Domain& d, const SparseVec& a, const SparseVec& b);
SparseVec scale(const Domain& d, const Scalar& c, const SparseVec& x);
SparseVec normalize(const Domain& d, SparseVec x);
/// Build from unsorted (index, value) contributions, summing duplicates.
SparseVec from_terms(const Domain& d, std::vector<Entry> terms);
Scalar at(const SparseVec& x, std::uint32_t index);
std::vector<Scalar> to_dense(const SparseVec& x, std::size_t n);
SparseVec from_dense(const Domain& d, const std::vector<Scalar>& x);

}  // namespace vec

}  // namespace uce
