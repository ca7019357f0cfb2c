#include "uce/domain.hpp"

#include <algorithm>
#include <cctype>

namespace uce {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::ValidationError: return "validation-error";
    case ErrorCode::DomainNotSupported: return "domain-not-supported";
    case ErrorCode::RelationsNotContained: return "relations-not-contained";
    case ErrorCode::ChainInconsistency: return "chain-inconsistency";
    case ErrorCode::NotPerfect: return "not-perfect";
    case ErrorCode::RankTooSmall: return "rank-too-small";
    case ErrorCode::CocycleInvalid: return "cocycle-invalid";
    case ErrorCode::VariantNotSupported: return "variant-not-supported";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Io: return "io-error";
  }
  return "unknown";
}

namespace {

bool is_probable_prime(const Integer& p) {
  return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

Integer parse_integer(std::string_view text) {
  Integer v;
  std::string s(text);
  if (s.empty() || v.set_str(s, 10) != 0) {
    throw Error(ErrorCode::SyntaxError, "expected an integer, got '" + s + "'");
  }
  return v;
}

}  // namespace

Domain Domain::integers() { return Domain{}; }

Domain Domain::rationals() {
  Domain d;
  d.kind_ = DomainKind::Rationals;
  return d;
}

Domain Domain::integers_mod(const Integer& m) {
  if (m < 2) {
    throw Error(ErrorCode::InvalidArgument, "Z/m requires m >= 2");
  }
  Domain d;
  d.kind_ = DomainKind::IntegersMod;
  d.modulus_ = m;
  return d;
}

Domain Domain::prime_field(const Integer& p) {
  if (p < 2 || !is_probable_prime(p)) {
    throw Error(ErrorCode::InvalidArgument, "GF(p) requires p prime, got " + p.get_str());
  }
  if (p > Integer("4294967295")) {
    throw Error(ErrorCode::Unsupported, "GF(p) is limited to p < 2^32");
  }
  Domain d;
  d.kind_ = DomainKind::PrimeField;
  d.modulus_ = p;
  return d;
}

Domain Domain::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "Z") return integers();
  if (s == "Q") return rationals();
  if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')') {
    return prime_field(parse_integer(std::string_view(s).substr(3, s.size() - 4)));
  }
  if (s.size() > 2 && s.rfind("Z/", 0) == 0) {
    return integers_mod(parse_integer(std::string_view(s).substr(2)));
  }
  throw Error(ErrorCode::SyntaxError, "unknown ring '" + std::string(text) + "'");
}

Integer Domain::characteristic() const {
  return is_field() ? (kind_ == DomainKind::PrimeField ? modulus_ : Integer(0))
                    : (kind_ == DomainKind::IntegersMod ? modulus_ : Integer(0));
}

std::string Domain::name() const {
  switch (kind_) {
    case DomainKind::Integers: return "Z";
    case DomainKind::Rationals: return "Q";
    case DomainKind::IntegersMod: return "Z/" + modulus_.get_str();
    case DomainKind::PrimeField: return "GF(" + modulus_.get_str() + ")";
  }
  return "?";
}

Scalar Domain::normalize(const Scalar& x) const {
  switch (kind_) {
    case DomainKind::Rationals:
      return x;
    case DomainKind::Integers:
      if (x.get_den() != 1) {
        throw Error(ErrorCode::InvalidArgument, "non-integral value " + x.get_str() + " over Z");
      }
      return x;
    case DomainKind::IntegersMod:
    case DomainKind::PrimeField: {
      Integer num = x.get_num();
      Integer den = x.get_den();
      Integer r;
      mpz_mod(r.get_mpz_t(), num.get_mpz_t(), modulus_.get_mpz_t());
      if (den != 1) {
        Integer inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
          throw Error(ErrorCode::InvalidArgument,
                      "denominator of " + x.get_str() + " is not invertible in " + name());
        }
        r = r * inv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus_.get_mpz_t());
      }
      return Scalar(r);
    }
  }
  return x;
}

Scalar Domain::parse_literal(std::string_view text) const {
  std::string s(text);
  Scalar v;
  if (s.empty() || v.set_str(s, 10) != 0) {
    throw Error(ErrorCode::SyntaxError, "bad coefficient literal '" + s + "'");
  }
  v.canonicalize();
  if (kind_ == DomainKind::Integers && v.get_den() != 1) {
    throw Error(ErrorCode::SyntaxError, "coefficient '" + s + "' is not an integer");
  }
  return normalize(v);
}

std::string Domain::format(const Scalar& x) const { return normalize(x).get_str(); }

bool Domain::order_is_free(const Integer& order) const {
  if (order == 0) return true;
  return (kind_ == DomainKind::IntegersMod || kind_ == DomainKind::PrimeField) && order == modulus_;
}

Integer Domain::free_order() const { return 0; }

namespace vec {

SparseVec unit(std::uint32_t index, const Scalar& value) {
  if (value == 0) return {};
  return {Entry{index, value}};
}

SparseVec axpy(const Domain& d, const SparseVec& y, const Scalar& c, const SparseVec& x) {
  SparseVec out;
  out.reserve(y.size() + x.size());
  if (d.is_zero(c)) return y;
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].index < y[i].index) {
      Scalar v = d.normalize(c * x[j].value);
      if (v != 0) out.push_back(Entry{x[j].index, std::move(v)});
      ++j;
    } else {
      Scalar v = d.normalize(y[i].value + c * x[j].value);
      if (v != 0) out.push_back(Entry{y[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec add(const Domain& d, const SparseVec& a, const SparseVec& b) { return axpy(d, a, 1, b); }
SparseVec sub(const Domain& d, const SparseVec& a, const SparseVec& b) { return axpy(d, a, -1, b); }

SparseVec scale(const Domain& d, const Scalar& c, const SparseVec& x) {
  SparseVec out;
  out.reserve(x.size());
  for (const auto& e : x) {
    Scalar v = d.normalize(c * e.value);
    if (v != 0) out.push_back(Entry{e.index, std::move(v)});
  }
  return out;
}

SparseVec normalize(const Domain& d, SparseVec x) {
  SparseVec out;
  out.reserve(x.size());
  for (auto& e : x) {
    Scalar v = d.normalize(e.value);
    if (v != 0) out.push_back(Entry{e.index, std::move(v)});
  }
  return out;
}

SparseVec from_terms(const Domain& d, std::vector<Entry> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVec out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().index == t.index) {
      out.back().value += t.value;
    } else {
      out.push_back(std::move(t));
    }
  }
  return normalize(d, std::move(out));
}

Scalar at(const SparseVec& x, std::uint32_t index) {
  auto it = std::lower_bound(x.begin(), x.end(), index,
                             [](const Entry& e, std::uint32_t i) { return e.index < i; });
  if (it != x.end() && it->index == index) return it->value;
  return 0;
}

std::vector<Scalar> to_dense(const SparseVec& x, std::size_t n) {
  std::vector<Scalar> out(n);
  for (const auto& e : x) out.at(e.index) = e.value;
  return out;
}

SparseVec from_dense(const Domain& d, const std::vector<Scalar>& x) {
  SparseVec out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Scalar v = d.normalize(x[i]);
    if (v != 0) out.push_back(Entry{static_cast<std::uint32_t>(i), std::move(v)});
  }
  return out;
}

}  // namespace vec

}  // namespace uce
