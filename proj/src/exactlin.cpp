#include "uce/exactlin.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <map>
#include <unordered_map>

#include "uce/parallel.hpp"
#include <variant>

namespace uce {

namespace {

constexpr std::uint32_t kNoTransform = std::numeric_limits<std::uint32_t>::max();

// ---------------------------------------------------------------------------
// Integer rows and the lattice echelon (unimodular row reduction over Z).

using IntRow = std::vector<std::pair<std::uint32_t, Integer>>;

IntRow to_int_row(const SparseVec& v, std::uint32_t offset = 0) {
  IntRow out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (e.value.get_den() != 1) {
      throw Error(ErrorCode::InvalidArgument, "non-integral entry in lattice computation");
    }
    out.emplace_back(e.index + offset, e.value.get_num());
  }
  return out;
}

// a*x + b*y
IntRow combine(const Integer& a, const IntRow& x, const Integer& b, const IntRow& y) {
  IntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  Integer v;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      v = a * x[i].second;
      if (v != 0) out.emplace_back(x[i].first, v);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      v = b * y[j].second;
      if (v != 0) out.emplace_back(y[j].first, v);
      ++j;
    } else {
      v = a * x[i].second + b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// y -= q*x
void sub_multiple(IntRow& y, const Integer& q, const IntRow& x) { y = combine(1, y, -q, x); }

class LatticeEchelon {
 public:
  // Columns >= main_end carry a transform; rows whose main part vanishes on
  // insertion are collected in kernel().
  explicit LatticeEchelon(std::uint32_t main_end = kNoTransform) : main_end_(main_end) {}

  bool insert(IntRow v) {
    bool grew = false;
    while (!v.empty()) {
      const std::uint32_t c = v.front().first;
      if (c >= main_end_) {
        kernel_.push_back(std::move(v));
        return grew;
      }
      auto it = pivot_.find(c);
      if (it == pivot_.end()) {
        if (v.front().second < 0) {
          for (auto& e : v) e.second = -e.second;
        }
        pivot_.emplace(c, rows_.size());
        rows_.push_back(std::move(v));
        return true;
      }
      IntRow& p = rows_[it->second];
      const Integer a = p.front().second;
      const Integer b = v.front().second;
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        sub_multiple(v, b / a, p);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      IntRow np = combine(s, p, t, v);
      IntRow nv = combine(b / g, p, -(a / g), v);
      p = std::move(np);
      if (p.front().second < 0) {
        for (auto& e : p) e.second = -e.second;
      }
      v = std::move(nv);
      grew = true;
    }
    return grew;
  }

  // Coefficients of v in the echelon rows, or nullopt if v is not in the span.
  std::optional<std::vector<std::pair<std::size_t, Integer>>> coordinates(IntRow v) const {
    std::vector<std::pair<std::size_t, Integer>> coords;
    while (!v.empty()) {
      const std::uint32_t c = v.front().first;
      auto it = pivot_.find(c);
      if (c >= main_end_ || it == pivot_.end()) return std::nullopt;
      const IntRow& p = rows_[it->second];
      if (!mpz_divisible_p(v.front().second.get_mpz_t(), p.front().second.get_mpz_t())) {
        return std::nullopt;
      }
      Integer q = v.front().second / p.front().second;
      sub_multiple(v, q, p);
      coords.emplace_back(it->second, std::move(q));
    }
    return coords;
  }

  bool contains(const IntRow& v) const { return coordinates(v).has_value(); }

  // Residual of v after eliminating its main part; nullopt if the main part
  // is not in the span.
  std::optional<IntRow> reduce_main(IntRow v) const {
    while (!v.empty() && v.front().first < main_end_) {
      auto it = pivot_.find(v.front().first);
      if (it == pivot_.end()) return std::nullopt;
      const IntRow& p = rows_[it->second];
      if (!mpz_divisible_p(v.front().second.get_mpz_t(), p.front().second.get_mpz_t())) {
        return std::nullopt;
      }
      sub_multiple(v, v.front().second / p.front().second, p);
    }
    return v;
  }

  const std::vector<IntRow>& rows() const { return rows_; }
  std::vector<IntRow>& kernel() { return kernel_; }

 private:
  std::uint32_t main_end_;
  std::vector<IntRow> rows_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_;
  std::vector<IntRow> kernel_;
};

// ---------------------------------------------------------------------------
// Field arithmetic policies and the field echelon.

struct ModP {
  using T = std::uint64_t;
  std::uint64_t p;

  T from(const Scalar& s) const {
    Integer r;
    Integer num = s.get_num();
    mpz_mod_ui(r.get_mpz_t(), num.get_mpz_t(), p);
    T v = r.get_ui();
    if (s.get_den() != 1) {
      Integer den = s.get_den(), dr;
      mpz_mod_ui(dr.get_mpz_t(), den.get_mpz_t(), p);
      v = mul(v, inv(dr.get_ui()));
    }
    return v;
  }
  Scalar to(T v) const { return Scalar(static_cast<unsigned long>(v)); }
  bool zero(T v) const { return v == 0; }
  T add(T a, T b) const { return (a + b) % p; }
  T sub(T a, T b) const { return (a + p - b) % p; }
  T mul(T a, T b) const { return static_cast<T>((static_cast<unsigned __int128>(a) * b) % p); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const {
    T result = 1, base = a % p, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  T one() const { return 1; }
};

struct Rat {
  using T = mpq_class;
  T from(const Scalar& s) const { return s; }
  Scalar to(const T& v) const { return v; }
  bool zero(const T& v) const { return v == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return 1 / a; }
  T one() const { return 1; }
};

template <class F>
class FieldEchelon {
 public:
  using T = typename F::T;
  using Row = std::vector<std::pair<std::uint32_t, T>>;

  explicit FieldEchelon(F f, std::uint32_t main_end = kNoTransform) : f_(f), main_end_(main_end) {}

  Row convert(const SparseVec& v, std::uint32_t offset = 0) const {
    Row out;
    out.reserve(v.size());
    for (const auto& e : v) {
      T x = f_.from(e.value);
      if (!f_.zero(x)) out.emplace_back(e.index + offset, std::move(x));
    }
    return out;
  }

  // y - q*x
  Row axpy(const Row& y, const T& q, const Row& x) const {
    Row out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
      if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
        out.push_back(y[i++]);
      } else if (i == y.size() || x[j].first < y[i].first) {
        T v = f_.neg(f_.mul(q, x[j].second));
        if (!f_.zero(v)) out.emplace_back(x[j].first, std::move(v));
        ++j;
      } else {
        T v = f_.sub(y[i].second, f_.mul(q, x[j].second));
        if (!f_.zero(v)) out.emplace_back(y[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Eliminate every pivot column from v.
  Row reduce(Row v) const {
    std::uint32_t pos = 0;
    for (;;) {
      auto it = std::find_if(v.begin(), v.end(), [&](const auto& e) {
        return e.first >= pos && e.first < main_end_ && pivot_.count(e.first) > 0;
      });
      if (it == v.end()) return v;
      const std::uint32_t c = it->first;
      T q = it->second;
      v = axpy(v, q, rows_[pivot_.at(c)]);
      pos = c + 1;
    }
  }

  bool insert(Row v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    if (v.front().first >= main_end_) {
      kernel_.push_back(std::move(v));
      return false;
    }
    // Leading entry after reduction is not a pivot column.
    const T inv = f_.inv(v.front().second);
    for (auto& e : v) e.second = f_.mul(e.second, inv);
    pivot_.emplace(v.front().first, rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  bool contains(const Row& v) const {
    Row r = reduce(v);
    return r.empty() || r.front().first >= main_end_;
  }

  std::size_t size() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  std::vector<Row>& kernel() { return kernel_; }
  const F& field() const { return f_; }
  bool is_pivot(std::uint32_t c) const { return pivot_.count(c) > 0; }

 private:
  F f_;
  std::uint32_t main_end_;
  std::vector<Row> rows_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_;
  std::vector<Row> kernel_;
};

template <class Fn>
decltype(auto) with_field(const Domain& d, Fn&& fn) {
  if (d.kind() == DomainKind::PrimeField) {
    return fn(ModP{d.modulus().get_ui()});
  }
  if (d.kind() == DomainKind::Rationals) {
    return fn(Rat{});
  }
  throw Error(ErrorCode::DomainNotSupported, "field routine called over " + d.name());
}

template <class F>
SparseVec field_row_to_vec(const Domain& d, const F& f, const typename FieldEchelon<F>::Row& r,
                           std::uint32_t offset) {
  SparseVec out;
  for (const auto& e : r) {
    if (e.first < offset) continue;
    Scalar v = d.normalize(f.to(e.second));
    if (v != 0) out.push_back(Entry{e.first - offset, std::move(v)});
  }
  return out;
}

SparseVec int_row_to_vec(const Domain& d, const IntRow& r, std::uint32_t offset) {
  SparseVec out;
  for (const auto& e : r) {
    if (e.first < offset) continue;
    Scalar v = d.normalize(Scalar(e.second));
    if (v != 0) out.push_back(Entry{e.first - offset, std::move(v)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense Smith reduction.

using Dense = std::vector<std::vector<Integer>>;

// Diagonalizes `a` in place by unimodular row and column operations; column
// operations are mirrored on V (a := a V) and V^{-1}. Pivots are chosen of
// minimal absolute value. Returns the diagonal (length min(rows, cols)).
std::vector<Integer> dense_diagonalize(Dense& a, Dense* V, Dense* Vinv) {
  const std::size_t r = a.size();
  const std::size_t c = r ? a[0].size() : (V ? V->size() : 0);
  const std::size_t n = std::min(r, c);
  std::vector<Integer> diag(n);
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
    if (V) for (auto& row : *V) std::swap(row[x], row[y]);
    if (Vinv) std::swap((*Vinv)[x], (*Vinv)[y]);
  };
  // col_j -= q col_t
  auto col_op = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t i = 0; i < r; ++i) {
      if (a[i][t] != 0) a[i][j] -= q * a[i][t];
    }
    if (V) {
      for (auto& row : *V) {
        if (row[t] != 0) row[j] -= q * row[t];
      }
    }
    if (Vinv) {
      auto& rt = (*Vinv)[t];
      const auto& rj = (*Vinv)[j];
      for (std::size_t k = 0; k < rt.size(); ++k) {
        if (rj[k] != 0) rt[k] += q * rj[k];
      }
    }
  };
  Integer q;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // minimal |entry| in the trailing block
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i) {
        for (std::size_t j = t; j < c; ++j) {
          if (a[i][j] == 0) continue;
          if (pi == r || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == r) return diag;
      std::swap(a[t], a[pi]);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a[i][t] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < c; ++j) {
          if (a[t][j] != 0) a[i][j] -= q * a[t][j];
        }
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a[t][j] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_op(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    diag[t] = abs(a[t][t]);
  }
  return diag;
}

// Invariant-factor chain of the cyclic orders (zeros kept, sorted last).
std::vector<Integer> to_chain(std::vector<Integer> d) {
  for (auto& x : d) x = abs(x);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = (g == 0) ? Integer(0) : Integer(d[i] / g * d[j]);
      d[i] = g;
      d[j] = l;
    }
  }
  // after the pass d is a divisibility chain with zeros at the end
  return d;
}

Dense to_dense_rows(const std::vector<IntRow>& rows, std::size_t cols) {
  Dense a(rows.size(), std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& e : rows[i]) a[i][e.first] = e.second;
  }
  return a;
}

Dense identity(std::size_t n) {
  Dense a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

// Invariant factors (length `cols`, zeros for missing rank) of Z^cols / span(rows).
std::vector<Integer> lattice_cokernel_orders(std::vector<IntRow> rows, std::size_t cols) {
  LatticeEchelon ech;
  for (auto& r : rows) ech.insert(std::move(r));
  Dense a = to_dense_rows(ech.rows(), cols);
  std::vector<Integer> diag = dense_diagonalize(a, nullptr, nullptr);
  diag.resize(cols);
  return to_chain(diag);
}

void check_homogeneous(const SparseVec& v, const std::vector<Parity>& parities, Parity& out) {
  bool first = true;
  for (const auto& e : v) {
    if (e.index >= parities.size()) {
      throw Error(ErrorCode::InvalidArgument, "vector index out of range");
    }
    if (first) {
      out = parities[e.index];
      first = false;
    } else if (parities[e.index] != out) {
      throw Error(ErrorCode::InvalidArgument, "vector is not parity-homogeneous");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

ModuleComponent make_component(const Domain& d, const std::vector<Integer>& orders) {
  ModuleComponent out;
  std::vector<Integer> finite;
  const bool mod = d.kind() == DomainKind::IntegersMod || d.kind() == DomainKind::PrimeField;
  for (const auto& o0 : orders) {
    Integer o = abs(o0);
    if (d.kind() == DomainKind::Rationals) {
      if (o == 0) ++out.free_rank;
      continue;
    }
    if (mod) o = gcd(o, d.modulus());
    if (o == 0) {
      ++out.free_rank;
    } else if (o != 1) {
      finite.push_back(o);
    }
  }
  for (auto& f : to_chain(finite)) {
    if (f == 1) continue;
    if (mod && f == d.modulus()) {
      ++out.free_rank;
    } else {
      out.torsion.push_back(f);
    }
  }
  return out;
}

ModuleComponent direct_sum(const Domain& d, const ModuleComponent& a, const ModuleComponent& b) {
  std::vector<Integer> orders;
  for (const auto* c : {&a, &b}) {
    orders.insert(orders.end(), c->free_rank, d.free_order());
    orders.insert(orders.end(), c->torsion.begin(), c->torsion.end());
  }
  return make_component(d, orders);
}

GradedModuleInvariants direct_sum(const Domain& d, const GradedModuleInvariants& a,
                                  const GradedModuleInvariants& b) {
  return {direct_sum(d, a.even, b.even), direct_sum(d, a.odd, b.odd)};
}

GradedModuleInvariants power(const Domain& d, const GradedModuleInvariants& x, std::size_t copies) {
  GradedModuleInvariants out;
  for (std::size_t i = 0; i < copies; ++i) out = direct_sum(d, out, x);
  return out;
}

GradedModuleInvariants parity_change(const GradedModuleInvariants& x) { return {x.odd, x.even}; }

namespace {

std::string component_string(const Domain& d, const ModuleComponent& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  const std::string base = d.kind() == DomainKind::Integers ? "Z" : d.name();
  bool first = true;
  if (c.free_rank) {
    os << base;
    if (c.free_rank > 1) os << "^" << c.free_rank;
    first = false;
  }
  std::size_t i = 0;
  while (i < c.torsion.size()) {
    std::size_t j = i;
    while (j < c.torsion.size() && c.torsion[j] == c.torsion[i]) ++j;
    if (!first) os << " + ";
    first = false;
    os << "(Z/" << c.torsion[i].get_str() << ")";
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  return os.str();
}

}  // namespace

std::string GradedModuleInvariants::to_string(const Domain& d) const {
  return "even: " + component_string(d, even) + "; odd: " + component_string(d, odd);
}

// ---------------------------------------------------------------------------

ExactMatrix::ExactMatrix(Domain d, std::size_t rows, std::size_t cols)
    : domain_(std::move(d)), cols_(cols), rows_(rows) {}

ExactMatrix ExactMatrix::from_rows(Domain d, std::size_t cols, std::vector<SparseVec> rows) {
  ExactMatrix m(d, 0, cols);
  for (auto& r : rows) {
    SparseVec n = vec::normalize(d, std::move(r));
    std::sort(n.begin(), n.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    if (!n.empty() && n.back().index >= cols) {
      throw Error(ErrorCode::InvalidArgument, "matrix entry out of range");
    }
    m.rows_.push_back(std::move(n));
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(Domain d, std::size_t rows, const std::vector<SparseVec>& cols) {
  std::vector<std::vector<Entry>> r(rows);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& e : cols[j]) {
      if (e.index >= rows) throw Error(ErrorCode::InvalidArgument, "matrix entry out of range");
      r[e.index].push_back(Entry{static_cast<std::uint32_t>(j), e.value});
    }
  }
  return from_rows(std::move(d), cols.size(), std::move(r));
}

ExactMatrix ExactMatrix::from_dense(Domain d, const std::vector<std::vector<long>>& entries) {
  const std::size_t cols = entries.empty() ? 0 : entries[0].size();
  std::vector<SparseVec> rows;
  for (const auto& r : entries) {
    SparseVec v;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] != 0) v.push_back(Entry{static_cast<std::uint32_t>(j), Scalar(r[j])});
    }
    rows.push_back(std::move(v));
  }
  return from_rows(std::move(d), cols, std::move(rows));
}

Scalar ExactMatrix::get(std::size_t i, std::size_t j) const {
  return vec::at(rows_.at(i), static_cast<std::uint32_t>(j));
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  if (j >= cols_) throw Error(ErrorCode::InvalidArgument, "matrix entry out of range");
  auto& r = rows_.at(i);
  Scalar delta = v - get(i, j);
  r = vec::axpy(domain_, r, delta, vec::unit(static_cast<std::uint32_t>(j)));
}

ExactMatrix ExactMatrix::transpose() const { return from_columns(domain_, cols_, rows_); }

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  if (cols_ != rhs.rows()) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  std::vector<SparseVec> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) {
    SparseVec acc;
    for (const auto& e : r) acc = vec::axpy(domain_, acc, e.value, rhs.row(e.index));
    out.push_back(std::move(acc));
  }
  return from_rows(domain_, rhs.cols(), std::move(out));
}

SparseVec ExactMatrix::apply(const SparseVec& x) const {
  std::vector<Entry> terms;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar s = 0;
    std::size_t a = 0, b = 0;
    const auto& r = rows_[i];
    while (a < r.size() && b < x.size()) {
      if (r[a].index < x[b].index) {
        ++a;
      } else if (x[b].index < r[a].index) {
        ++b;
      } else {
        s += r[a++].value * x[b++].value;
      }
    }
    if (s != 0) terms.push_back(Entry{static_cast<std::uint32_t>(i), s});
  }
  return vec::normalize(domain_, std::move(terms));
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

// ---------------------------------------------------------------------------

std::vector<Integer> smith_normal_form(const ExactMatrix& m) {
  const Domain& d = m.domain();
  if (d.is_field()) {
    throw Error(ErrorCode::DomainNotSupported,
                "smith_normal_form needs Z or Z/m, got " + d.name() + " (use rank)");
  }
  std::vector<IntRow> rows;
  for (const auto& r : m.row_lists()) rows.push_back(to_int_row(r));
  if (d.kind() == DomainKind::IntegersMod) {
    for (std::uint32_t j = 0; j < m.cols(); ++j) rows.push_back({{j, d.modulus()}});
  }
  std::vector<Integer> chain = lattice_cokernel_orders(std::move(rows), m.cols());
  std::vector<Integer> out;
  for (auto& f : chain) {
    if (f == 0) continue;
    if (d.kind() == DomainKind::IntegersMod && f == d.modulus()) continue;
    out.push_back(f);
  }
  return out;
}

std::vector<SparseVec> preimage_generators(const Domain& d, std::size_t target_dim,
                                           const std::vector<SparseVec>& images,
                                           const std::vector<Integer>& target_orders) {
  const auto offset = static_cast<std::uint32_t>(target_dim);
  std::vector<SparseVec> out;
  if (d.is_field()) {
    with_field(d, [&](auto f) {
      using F = decltype(f);
      FieldEchelon<F> ech(f, offset);
      for (std::size_t i = 0; i < images.size(); ++i) {
        auto row = ech.convert(images[i]);
        row.emplace_back(offset + static_cast<std::uint32_t>(i), f.one());
        ech.insert(std::move(row));
      }
      for (const auto& k : ech.kernel()) {
        SparseVec v = field_row_to_vec(d, f, k, offset);
        if (!v.empty()) out.push_back(std::move(v));
      }
      return 0;
    });
    return out;
  }
  LatticeEchelon ech(offset);
  for (std::size_t j = 0; j < target_dim; ++j) {
    Integer o = j < target_orders.size() ? target_orders[j] : Integer(0);
    if (d.kind() == DomainKind::IntegersMod && o == 0) o = d.modulus();
    if (o != 0) ech.insert({{static_cast<std::uint32_t>(j), o}});
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    IntRow row = to_int_row(images[i]);
    row.emplace_back(offset + static_cast<std::uint32_t>(i), Integer(1));
    ech.insert(std::move(row));
  }
  for (const auto& k : ech.kernel()) {
    SparseVec v = int_row_to_vec(d, k, offset);
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<SparseVec> kernel_basis(const ExactMatrix& m) {
  const ExactMatrix t = m.transpose();
  return preimage_generators(m.domain(), m.rows(), t.row_lists(), {});
}

std::size_t rank(const ExactMatrix& m) {
  const Domain& d = m.domain();
  if (d.is_field()) {
    return with_field(d, [&](auto f) {
      FieldEchelon<decltype(f)> ech(f);
      for (const auto& r : m.row_lists()) ech.insert(ech.convert(r));
      return ech.size();
    });
  }
  if (d.kind() == DomainKind::Integers) {
    LatticeEchelon ech;
    for (const auto& r : m.row_lists()) ech.insert(to_int_row(r));
    return ech.rows().size();
  }
  return smith_normal_form(m).size();
}

GradedModuleInvariants quotient_invariants(const Domain& d, std::size_t ambient_rank,
                                           const std::vector<SparseVec>& generators,
                                           const std::vector<SparseVec>& relations,
                                           const std::vector<Parity>& parities) {
  if (parities.size() != ambient_rank) {
    throw Error(ErrorCode::InvalidArgument, "parity list does not match ambient rank");
  }
  // local coordinates within each parity
  std::vector<std::uint32_t> local(ambient_rank);
  std::size_t count[2] = {0, 0};
  for (std::size_t i = 0; i < ambient_rank; ++i) {
    local[i] = static_cast<std::uint32_t>(count[bit(parities[i])]++);
  }
  std::vector<SparseVec> gens[2], rels[2];
  auto split = [&](const std::vector<SparseVec>& in, std::vector<SparseVec>* out) {
    for (const auto& v : in) {
      if (v.empty()) continue;
      Parity p = Parity::Even;
      check_homogeneous(v, parities, p);
      SparseVec w;
      w.reserve(v.size());
      for (const auto& e : v) w.push_back(Entry{local[e.index], e.value});
      out[bit(p)].push_back(vec::normalize(d, std::move(w)));
    }
  };
  split(generators, gens);
  split(relations, rels);

  GradedModuleInvariants result;
  for (int p = 0; p < 2; ++p) {
    const std::size_t n = count[p];
    ModuleComponent& comp = result.part(static_cast<Parity>(p));
    if (d.is_field()) {
      comp.free_rank = with_field(d, [&](auto f) {
        using F = decltype(f);
        FieldEchelon<F> g(f), r(f);
        for (const auto& v : gens[p]) g.insert(g.convert(v));
        for (const auto& v : rels[p]) {
          auto row = g.convert(v);
          if (!g.contains(row)) {
            throw Error(ErrorCode::RelationsNotContained,
                        "relation outside the generator span");
          }
          r.insert(std::move(row));
        }
        return g.size() - r.size();
      });
      continue;
    }
    const bool mod = d.kind() == DomainKind::IntegersMod;
    LatticeEchelon g;
    for (const auto& v : gens[p]) g.insert(to_int_row(v));
    std::vector<IntRow> extra;
    if (mod) {
      for (std::uint32_t j = 0; j < n; ++j) extra.push_back({{j, d.modulus()}});
      for (const auto& e : extra) g.insert(e);
    }
    const std::size_t gr = g.rows().size();
    std::vector<IntRow> coords;
    auto add_relation = [&](const IntRow& row) {
      auto c = g.coordinates(row);
      if (!c) {
        throw Error(ErrorCode::RelationsNotContained, "relation outside the generator span");
      }
      IntRow cr;
      for (auto& [idx, val] : *c) cr.emplace_back(static_cast<std::uint32_t>(idx), val);
      std::sort(cr.begin(), cr.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      // merge duplicate indices (a pivot can be hit once only, but stay safe)
      IntRow merged;
      for (auto& e : cr) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(e);
        }
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(),
                                  [](const auto& e) { return e.second == 0; }),
                   merged.end());
      coords.push_back(std::move(merged));
    };
    for (const auto& v : rels[p]) add_relation(to_int_row(v));
    for (const auto& e : extra) add_relation(e);
    comp = make_component(d, lattice_cokernel_orders(std::move(coords), gr));
  }
  return result;
}

// ---------------------------------------------------------------------------

struct Span::Impl {
  Domain domain;
  std::size_t ambient;
  std::variant<FieldEchelon<ModP>, FieldEchelon<Rat>, LatticeEchelon> ech;

  static decltype(ech) make(const Domain& d) {
    if (d.kind() == DomainKind::PrimeField) return FieldEchelon<ModP>(ModP{d.modulus().get_ui()});
    if (d.kind() == DomainKind::Rationals) return FieldEchelon<Rat>(Rat{});
    return LatticeEchelon{};
  }

  Impl(const Domain& d, std::size_t n) : domain(d), ambient(n), ech(make(d)) {
    if (d.kind() == DomainKind::IntegersMod) {
      auto& l = std::get<LatticeEchelon>(ech);
      for (std::uint32_t j = 0; j < n; ++j) l.insert({{j, d.modulus()}});
    }
  }
};

Span::Span(const Domain& d, std::size_t ambient) : impl_(std::make_unique<Impl>(d, ambient)) {}
Span::~Span() = default;
Span::Span(Span&&) noexcept = default;
Span& Span::operator=(Span&&) noexcept = default;

bool Span::insert(const SparseVec& v) {
  return std::visit(
      [&](auto& e) -> bool {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, LatticeEchelon>) {
          return e.insert(to_int_row(vec::normalize(impl_->domain, v)));
        } else {
          return e.insert(e.convert(v));
        }
      },
      impl_->ech);
}

bool Span::contains(const SparseVec& v) const {
  return std::visit(
      [&](auto& e) -> bool {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, LatticeEchelon>) {
          return e.contains(to_int_row(vec::normalize(impl_->domain, v)));
        } else {
          return e.contains(e.convert(v));
        }
      },
      impl_->ech);
}

std::size_t Span::echelon_size() const {
  return std::visit(
      [&](auto& e) -> std::size_t {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, LatticeEchelon>) {
          return e.rows().size();
        } else {
          return e.size();
        }
      },
      impl_->ech);
}

bool spans_equal(const Domain& d, std::size_t ambient, const std::vector<SparseVec>& a,
                 const std::vector<SparseVec>& b) {
  Span sa(d, ambient), sb(d, ambient);
  for (const auto& v : a) sa.insert(v);
  for (const auto& v : b) sb.insert(v);
  for (const auto& v : a) {
    if (!sb.contains(v)) return false;
  }
  for (const auto& v : b) {
    if (!sa.contains(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

QuotientModule QuotientModule::build(const Domain& d, std::size_t ambient,
                                     const std::vector<SparseVec>& relations) {
  QuotientModule q;
  q.domain_ = d;
  q.ambient_ = ambient;
  if (d.is_field()) {
    with_field(d, [&](auto f) {
      using F = decltype(f);
      FieldEchelon<F> ech(f);
      for (const auto& r : relations) ech.insert(ech.convert(r));
      q.pivot_of_col_.assign(ambient, -1);
      q.generator_of_col_.assign(ambient, -1);
      for (const auto& row : ech.rows()) {
        q.pivot_of_col_[row.front().first] = static_cast<long>(q.pivot_rows_.size());
        q.pivot_rows_.push_back(field_row_to_vec(d, f, row, 0));
      }
      for (std::uint32_t c = 0; c < ambient; ++c) {
        if (q.pivot_of_col_[c] >= 0) continue;
        q.generator_of_col_[c] = static_cast<long>(q.orders_.size());
        q.orders_.push_back(0);
        q.lifts_.push_back(vec::unit(c));
      }
      return 0;
    });
    return q;
  }
  std::vector<IntRow> rows;
  for (const auto& r : relations) rows.push_back(to_int_row(vec::normalize(d, r)));
  if (d.kind() == DomainKind::IntegersMod) {
    for (std::uint32_t j = 0; j < ambient; ++j) rows.push_back({{j, d.modulus()}});
  }
  LatticeEchelon ech;
  for (auto& r : rows) ech.insert(std::move(r));
  Dense a = to_dense_rows(ech.rows(), ambient);
  Dense V = identity(ambient), Vinv = identity(ambient);
  std::vector<Integer> diag = dense_diagonalize(a, &V, &Vinv);
  diag.resize(ambient);
  for (std::size_t t = 0; t < ambient; ++t) {
    Integer o = abs(diag[t]);
    if (o == 1) continue;
    if (d.kind() == DomainKind::IntegersMod && o == d.modulus()) o = 0;
    q.orders_.push_back(o);
    SparseVec col, lift;
    for (std::size_t j = 0; j < ambient; ++j) {
      if (V[j][t] != 0) col.push_back(Entry{static_cast<std::uint32_t>(j), Scalar(V[j][t])});
      if (Vinv[t][j] != 0) lift.push_back(Entry{static_cast<std::uint32_t>(j), Scalar(Vinv[t][j])});
    }
    q.coords_.push_back(std::move(col));
    q.lifts_.push_back(vec::normalize(d, std::move(lift)));
  }
  return q;
}

SparseVec QuotientModule::project(const SparseVec& x) const {
  const Domain& d = domain_;
  if (d.is_field()) {
    SparseVec v = vec::normalize(d, x);
    std::uint32_t pos = 0;
    for (;;) {
      auto it = std::find_if(v.begin(), v.end(), [&](const Entry& e) {
        return e.index >= pos && pivot_of_col_[e.index] >= 0;
      });
      if (it == v.end()) break;
      const std::uint32_t c = it->index;
      Scalar q = it->value;
      v = vec::axpy(d, v, -q, pivot_rows_[pivot_of_col_[c]]);
      pos = c + 1;
    }
    SparseVec out;
    for (const auto& e : v) {
      out.push_back(Entry{static_cast<std::uint32_t>(generator_of_col_[e.index]), e.value});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    return out;
  }
  SparseVec out;
  for (std::size_t t = 0; t < coords_.size(); ++t) {
    Scalar s = 0;
    std::size_t a = 0, b = 0;
    const auto& c = coords_[t];
    while (a < c.size() && b < x.size()) {
      if (c[a].index < x[b].index) {
        ++a;
      } else if (x[b].index < c[a].index) {
        ++b;
      } else {
        s += c[a++].value * x[b++].value;
      }
    }
    if (orders_[t] != 0) {
      Integer r;
      Integer num = s.get_num();
      mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), orders_[t].get_mpz_t());
      s = Scalar(r);
    }
    s = d.normalize(s);
    if (s != 0) out.push_back(Entry{static_cast<std::uint32_t>(t), std::move(s)});
  }
  return out;
}

SparseVec reduce_mod_orders(const Domain& d, SparseVec x, const std::vector<Integer>& orders) {
  SparseVec out;
  out.reserve(x.size());
  for (auto& e : x) {
    Scalar v = d.normalize(e.value);
    const Integer& o = orders.at(e.index);
    if (o != 0 && !d.is_field()) {
      Integer r;
      Integer num = v.get_num();
      mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), o.get_mpz_t());
      v = d.normalize(Scalar(r));
    }
    if (v != 0) out.push_back(Entry{e.index, std::move(v)});
  }
  return out;
}

}  // namespace uce

namespace uce {

BlockQuotientModule BlockQuotientModule::build(const Domain& d,
                                               const std::vector<std::size_t>& block_of,
                                               const std::vector<SparseVec>& relations,
                                               std::size_t threads) {
  BlockQuotientModule q;
  q.domain_ = d;
  q.block_of_ = block_of;
  q.local_.resize(block_of.size());
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    auto [it, inserted] = slot.emplace(block_of[i], 0);
    (void)inserted;
  }
  for (auto& [id, s] : slot) {
    s = q.block_ids_.size();
    q.block_ids_.push_back(id);
  }
  q.members_.resize(q.block_ids_.size());
  for (std::size_t i = 0; i < block_of.size(); ++i) {
    auto& mem = q.members_[slot[block_of[i]]];
    q.local_[i] = static_cast<std::uint32_t>(mem.size());
    mem.push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<std::vector<SparseVec>> rels(q.block_ids_.size());
  for (const auto& r : relations) {
    if (r.empty()) continue;
    const std::size_t b = block_of.at(r.front().index);
    SparseVec loc;
    loc.reserve(r.size());
    for (const auto& e : r) {
      if (block_of.at(e.index) != b) {
        throw Error(ErrorCode::InvalidArgument, "relation is not homogeneous for the grading");
      }
      loc.push_back(Entry{q.local_[e.index], e.value});
    }
    rels[slot[b]].push_back(std::move(loc));
  }
  q.blocks_.resize(q.block_ids_.size());
  parallel_for(q.block_ids_.size(), threads, [&](std::size_t s) {
    q.blocks_[s] = QuotientModule::build(d, q.members_[s].size(), rels[s]);
  });
  for (std::size_t s = 0; s < q.blocks_.size(); ++s) {
    q.offset_.push_back(q.orders_.size());
    const auto& qm = q.blocks_[s];
    for (std::size_t t = 0; t < qm.rank(); ++t) {
      q.orders_.push_back(qm.orders()[t]);
      q.gen_block_.push_back(q.block_ids_[s]);
      SparseVec lift;
      for (const auto& e : qm.lift(t)) lift.push_back(Entry{q.members_[s][e.index], e.value});
      std::sort(lift.begin(), lift.end(),
                [](const Entry& a, const Entry& b) { return a.index < b.index; });
      q.lifts_.push_back(std::move(lift));
    }
  }
  return q;
}

SparseVec BlockQuotientModule::project(const SparseVec& x) const {
  std::map<std::size_t, SparseVec> parts;
  for (const auto& e : x) {
    const std::size_t b = block_of_.at(e.index);
    parts[b].push_back(Entry{local_[e.index], e.value});
  }
  std::vector<Entry> out;
  for (auto& [b, v] : parts) {
    auto it = std::lower_bound(block_ids_.begin(), block_ids_.end(), b);
    const std::size_t s = static_cast<std::size_t>(it - block_ids_.begin());
    std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& c) { return a.index < c.index; });
    for (auto& e : blocks_[s].project(v)) {
      out.push_back(Entry{static_cast<std::uint32_t>(offset_[s] + e.index), std::move(e.value)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  return out;
}

}  // namespace uce

namespace uce {

struct LinearSolver::Impl {
  Domain domain;
  std::uint32_t dim;
  std::variant<FieldEchelon<ModP>, FieldEchelon<Rat>, LatticeEchelon> ech;
};

LinearSolver::LinearSolver(const Domain& d, std::size_t dim, const std::vector<SparseVec>& gens)
    : impl_(std::make_unique<Impl>(Impl{d, static_cast<std::uint32_t>(dim), LatticeEchelon{}})) {
  const auto off = static_cast<std::uint32_t>(dim);
  if (d.kind() == DomainKind::PrimeField) {
    impl_->ech = FieldEchelon<ModP>(ModP{d.modulus().get_ui()}, off);
  } else if (d.kind() == DomainKind::Rationals) {
    impl_->ech = FieldEchelon<Rat>(Rat{}, off);
  } else {
    impl_->ech = LatticeEchelon(off);
  }
  std::visit(
      [&](auto& e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, LatticeEchelon>) {
          if (d.kind() == DomainKind::IntegersMod) {
            for (std::uint32_t j = 0; j < off; ++j) e.insert({{j, d.modulus()}});
          }
          for (std::size_t p = 0; p < gens.size(); ++p) {
            IntRow row = to_int_row(vec::normalize(d, gens[p]));
            row.emplace_back(off + static_cast<std::uint32_t>(p), Integer(1));
            e.insert(std::move(row));
          }
        } else {
          for (std::size_t p = 0; p < gens.size(); ++p) {
            auto row = e.convert(gens[p]);
            row.emplace_back(off + static_cast<std::uint32_t>(p), e.field().one());
            e.insert(std::move(row));
          }
        }
      },
      impl_->ech);
}

LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

std::optional<SparseVec> LinearSolver::solve(const SparseVec& target) const {
  const Domain& d = impl_->domain;
  const std::uint32_t off = impl_->dim;
  return std::visit(
      [&](auto& e) -> std::optional<SparseVec> {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, LatticeEchelon>) {
          auto r = e.reduce_main(to_int_row(vec::normalize(d, target)));
          if (!r) return std::nullopt;
          for (auto& x : *r) x.second = -x.second;
          return int_row_to_vec(d, *r, off);
        } else {
          auto r = e.reduce(e.convert(target));
          if (!r.empty() && r.front().first < off) return std::nullopt;
          SparseVec out = field_row_to_vec(d, e.field(), r, off);
          return vec::scale(d, -1, out);
        }
      },
      impl_->ech);
}

}  // namespace uce

namespace uce {

std::vector<SparseVec> lattice_echelon_rows(const Domain& d, std::size_t dim,
                                            const std::vector<SparseVec>& gens) {
  if (d.is_field()) throw Error(ErrorCode::DomainNotSupported, "lattice_echelon_rows over a field");
  LatticeEchelon ech;
  if (d.kind() == DomainKind::IntegersMod) {
    for (std::uint32_t j = 0; j < dim; ++j) ech.insert({{j, d.modulus()}});
  }
  for (const auto& g : gens) ech.insert(to_int_row(vec::normalize(d, g)));
  std::vector<IntRow> rows = ech.rows();
  std::sort(rows.begin(), rows.end(),
            [](const IntRow& a, const IntRow& b) { return a.front().first < b.front().first; });
  std::vector<SparseVec> out;
  for (const auto& r : rows) {
    SparseVec v = int_row_to_vec(d, r, 0);
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace uce
