#include "uce/superalg.hpp"

#include <sstream>

namespace uce {

SuperAlgebra::SuperAlgebra(Domain d, std::vector<std::string> names, std::vector<Parity> parity,
                           std::size_t unit, std::vector<std::vector<SparseVec>> mul)
    : domain_(std::move(d)),
      names_(std::move(names)),
      parity_(std::move(parity)),
      unit_(unit),
      mul_(std::move(mul)) {
  if (parity_.size() != names_.size() || mul_.size() != names_.size() || unit_ >= names_.size()) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent superalgebra data");
  }
  for (auto& row : mul_) {
    if (row.size() != names_.size()) throw Error(ErrorCode::InvalidArgument, "bad mul table");
    for (auto& v : row) v = vec::normalize(domain_, std::move(v));
  }
}

std::optional<std::size_t> SuperAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

SparseVec SuperAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& a : x) {
    for (const auto& b : y) {
      out = vec::axpy(domain_, out, a.value * b.value, mul_[a.index][b.index]);
    }
  }
  return out;
}

Parity SuperAlgebra::parity_of(const SparseVec& x) const {
  if (x.empty()) return Parity::Even;
  Parity p = parity_[x.front().index];
  for (const auto& e : x) {
    if (parity_[e.index] != p) throw Error(ErrorCode::InvalidArgument, "inhomogeneous element");
  }
  return p;
}

std::pair<SparseVec, SparseVec> SuperAlgebra::split(const SparseVec& x) const {
  std::pair<SparseVec, SparseVec> out;
  for (const auto& e : x) (parity_[e.index] == Parity::Even ? out.first : out.second).push_back(e);
  return out;
}

bool SuperAlgebra::has_odd_part() const {
  for (auto p : parity_) {
    if (p == Parity::Odd) return true;
  }
  return false;
}

bool operator==(const SuperAlgebra& a, const SuperAlgebra& b) {
  return a.domain_ == b.domain_ && a.names_ == b.names_ && a.parity_ == b.parity_ &&
         a.unit_ == b.unit_ && a.mul_ == b.mul_;
}

ValidationReport validate_superalgebra(const SuperAlgebra& a) {
  ValidationReport r;
  const std::size_t n = a.rank();
  const Domain& d = a.domain();
  if (a.parity(a.unit_index()) != Parity::Even) r.fail("unit is odd");
  for (std::size_t i = 0; i < n; ++i) {
    const SparseVec ei = vec::unit(static_cast<std::uint32_t>(i));
    if (a.product(a.unit_index(), i) != ei) r.fail("1*" + a.name(i) + " != " + a.name(i));
    if (a.product(i, a.unit_index()) != ei) r.fail(a.name(i) + "*1 != " + a.name(i));
    for (std::size_t j = 0; j < n; ++j) {
      const Parity p = a.parity(i) + a.parity(j);
      for (const auto& e : a.product(i, j)) {
        if (a.parity(e.index) != p) {
          r.fail("parity: " + a.name(i) + "*" + a.name(j) + " has a component on " +
                 a.name(e.index));
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        SparseVec lhs = a.multiply(a.product(i, j), vec::unit(static_cast<std::uint32_t>(k)));
        SparseVec rhs = a.multiply(vec::unit(static_cast<std::uint32_t>(i)), a.product(j, k));
        if (vec::sub(d, lhs, rhs).size() != 0) {
          r.fail("associativity: (" + a.name(i) + "*" + a.name(j) + ")*" + a.name(k));
        }
      }
    }
  }
  return r;
}

SparseVec supercommutator(const SuperAlgebra& a, const SparseVec& x, const SparseVec& y) {
  const Domain& d = a.domain();
  SparseVec out;
  for (const auto& u : x) {
    for (const auto& v : y) {
      const Scalar c = u.value * v.value;
      const int s = koszul(a.parity(u.index), a.parity(v.index));
      out = vec::axpy(d, out, c, a.product(u.index, v.index));
      out = vec::axpy(d, out, -s * c, a.product(v.index, u.index));
    }
  }
  return out;
}

std::vector<SparseVec> commutator_span(const SuperAlgebra& a) {
  std::vector<SparseVec> out;
  for (std::uint32_t i = 0; i < a.rank(); ++i) {
    for (std::uint32_t j = 0; j < a.rank(); ++j) {
      SparseVec c = supercommutator(a, vec::unit(i), vec::unit(j));
      if (!c.empty()) out.push_back(std::move(c));
    }
  }
  return out;
}

Parity GradedQuotient::generator_parity(std::size_t t) const {
  Parity p = static_cast<Parity>(projection.block_of_generator(t));
  return parity_shifted ? p + Parity::Odd : p;
}

GradedQuotient quotient_Am(const SuperAlgebra& a, unsigned long m) {
  const Domain& d = a.domain();
  const std::size_t n = a.rank();
  const std::vector<SparseVec> comm = commutator_span(a);

  // two-sided closure of the generators
  std::vector<SparseVec> seeds;
  for (std::uint32_t i = 0; i < n; ++i) {
    SparseVec v = vec::unit(i, Scalar(static_cast<long>(m)));
    v = vec::normalize(d, std::move(v));
    if (!v.empty()) seeds.push_back(std::move(v));
  }
  seeds.insert(seeds.end(), comm.begin(), comm.end());
  Span ideal(d, n);
  std::vector<SparseVec> basis;
  std::vector<SparseVec> frontier;
  for (auto& v : seeds) {
    if (ideal.insert(v)) frontier.push_back(v);
    basis.push_back(v);
  }
  while (!frontier.empty()) {
    std::vector<SparseVec> next;
    for (const auto& v : frontier) {
      for (std::uint32_t k = 0; k < n; ++k) {
        for (SparseVec w : {a.multiply(vec::unit(k), v), a.multiply(v, vec::unit(k))}) {
          if (w.empty()) continue;
          if (ideal.insert(w)) {
            next.push_back(w);
            basis.push_back(w);
          }
        }
      }
    }
    frontier = std::move(next);
  }

  // mA + A[A,A] and [A,A]A
  std::vector<SparseVec> left, right, formula;
  for (std::uint32_t i = 0; i < n; ++i) {
    SparseVec v = vec::normalize(d, vec::unit(i, Scalar(static_cast<long>(m))));
    if (!v.empty()) formula.push_back(std::move(v));
  }
  for (const auto& c : comm) {
    for (std::uint32_t k = 0; k < n; ++k) {
      SparseVec l = a.multiply(vec::unit(k), c);
      SparseVec r = a.multiply(c, vec::unit(k));
      if (!l.empty()) left.push_back(l);
      if (!r.empty()) right.push_back(r);
    }
  }
  formula.insert(formula.end(), left.begin(), left.end());

  GradedQuotient q;
  q.ideal_equals_mA_plus_AAA = spans_equal(d, n, basis, formula);
  q.left_equals_right = spans_equal(d, n, left, right);
  q.ideal_basis = basis;
  std::vector<std::size_t> blocks(n);
  std::vector<SparseVec> standard;
  for (std::uint32_t i = 0; i < n; ++i) {
    blocks[i] = static_cast<std::size_t>(bit(a.parity(i)));
    standard.push_back(vec::unit(i));
  }
  // split ideal generators into homogeneous components (the ideal is graded)
  std::vector<SparseVec> homog;
  for (const auto& v : basis) {
    auto [e, o] = a.split(v);
    if (!e.empty()) homog.push_back(std::move(e));
    if (!o.empty()) homog.push_back(std::move(o));
  }
  q.projection = BlockQuotientModule::build(d, blocks, homog);
  q.invariants = quotient_invariants(d, n, standard, homog, a.parities());
  return q;
}

GradedQuotient parity_change(const GradedQuotient& q) {
  GradedQuotient out = q;
  out.parity_shifted = !q.parity_shifted;
  out.invariants = parity_change(q.invariants);
  return out;
}

namespace {

// Basis tensors of A^{⊗k} are indexed in base rank(A), first factor most significant.
std::vector<std::size_t> unpack(std::size_t idx, std::size_t k, std::size_t r) {
  std::vector<std::size_t> f(k);
  for (std::size_t i = k; i-- > 0;) {
    f[i] = idx % r;
    idx /= r;
  }
  return f;
}

std::size_t pack(const std::vector<std::size_t>& f, std::size_t r) {
  std::size_t idx = 0;
  for (auto x : f) idx = idx * r + x;
  return idx;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t out = 1;
  while (e--) out *= b;
  return out;
}

// Add c * (v_0 ⊗ ... ) where position `pos` carries the algebra element `prod`
// and the other positions carry basis elements from `f`.
void add_tensor(std::vector<Entry>& terms, const std::vector<std::size_t>& f, std::size_t pos,
                const SparseVec& prod, const Scalar& c, std::size_t r) {
  std::vector<std::size_t> g = f;
  for (const auto& e : prod) {
    g[pos] = e.index;
    terms.push_back(Entry{static_cast<std::uint32_t>(pack(g, r)), c * e.value});
  }
}

// Hochschild boundary b: C_k → C_{k-1} on basis tensor f (k+1 factors).
SparseVec hochschild_b(const SuperAlgebra& a, const std::vector<std::size_t>& f) {
  const std::size_t r = a.rank();
  const std::size_t n = f.size() - 1;
  std::vector<Entry> terms;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> g;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (j != i + 1) g.push_back(f[j]);
    }
    add_tensor(terms, g, i, a.product(f[i], f[i + 1]), (i % 2) ? -1 : 1, r);
  }
  int sign = (n % 2) ? -1 : 1;
  Parity rest = Parity::Even;
  for (std::size_t j = 0; j < n; ++j) rest = rest + a.parity(f[j]);
  sign *= koszul(a.parity(f[n]), rest);
  std::vector<std::size_t> g(f.begin(), f.begin() + static_cast<long>(n));
  add_tensor(terms, g, 0, a.product(f[n], f[0]), sign, r);
  return vec::from_terms(a.domain(), std::move(terms));
}

// (1 − t) on basis tensor f.
SparseVec one_minus_t(const SuperAlgebra& a, const std::vector<std::size_t>& f) {
  const std::size_t r = a.rank();
  const std::size_t n = f.size() - 1;
  int sign = (n % 2) ? -1 : 1;
  Parity rest = Parity::Even;
  for (std::size_t j = 0; j < n; ++j) rest = rest + a.parity(f[j]);
  sign *= koszul(a.parity(f[n]), rest);
  std::vector<std::size_t> g;
  g.push_back(f[n]);
  for (std::size_t j = 0; j < n; ++j) g.push_back(f[j]);
  std::vector<Entry> terms = {Entry{static_cast<std::uint32_t>(pack(f, r)), 1},
                              Entry{static_cast<std::uint32_t>(pack(g, r)), -sign}};
  return vec::from_terms(a.domain(), std::move(terms));
}

}  // namespace

GradedModuleInvariants hc1_connes(const SuperAlgebra& a) {
  const Domain& d = a.domain();
  if (d.kind() != DomainKind::Rationals) {
    throw Error(ErrorCode::DomainNotSupported, "hc1_connes is implemented over Q only");
  }
  const std::size_t r = a.rank();
  const std::size_t n1 = ipow(r, 2), n2 = ipow(r, 3);
  std::vector<Parity> par1(n1);
  std::vector<SparseVec> b1(n1), t1(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    auto f = unpack(i, 2, r);
    par1[i] = a.parity(f[0]) + a.parity(f[1]);
    b1[i] = hochschild_b(a, f);
    t1[i] = one_minus_t(a, f);
  }
  // (1 − t) vanishes on C_0, so the cycles of C^λ_1 are ker b_1 (then mod (1−t)C_1).
  std::vector<SparseVec> cycles = preimage_generators(d, r, b1, {});
  std::vector<SparseVec> boundaries;
  for (std::size_t i = 0; i < n2; ++i) {
    SparseVec v = hochschild_b(a, unpack(i, 3, r));
    if (!v.empty()) boundaries.push_back(std::move(v));
  }
  for (auto& v : t1) {
    if (!v.empty()) boundaries.push_back(v);
  }
  // homogeneous components
  auto homog = [&](const std::vector<SparseVec>& in) {
    std::vector<SparseVec> out;
    for (const auto& v : in) {
      SparseVec e, o;
      for (const auto& x : v) (par1[x.index] == Parity::Even ? e : o).push_back(x);
      if (!e.empty()) out.push_back(std::move(e));
      if (!o.empty()) out.push_back(std::move(o));
    }
    return out;
  };
  cycles.insert(cycles.end(), t1.begin(), t1.end());
  return quotient_invariants(d, n1, homog(cycles), homog(boundaries), par1);
}

}  // namespace uce
