#include "uce/liesuper.hpp"

#include <map>
#include <random>
#include <sstream>

#include "uce/parallel.hpp"

namespace uce {

namespace {

Weight add_weights(const Weight& a, const Weight& b) {
  Weight w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = a[i] + b[i];
  return w;
}

std::string weight_string(const Weight& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ")";
  return os.str();
}

// Split vectors into parity-homogeneous components.
std::vector<SparseVec> homogeneous_parts(const std::vector<SparseVec>& in,
                                         const std::vector<Parity>& parity) {
  std::vector<SparseVec> out;
  for (const auto& v : in) {
    SparseVec e, o;
    for (const auto& x : v) (parity[x.index] == Parity::Even ? e : o).push_back(x);
    if (!e.empty()) out.push_back(std::move(e));
    if (!o.empty()) out.push_back(std::move(o));
  }
  return out;
}

SparseVec random_even_combination(const LieSuperAlgebra& l, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<Entry> terms;
  for (std::uint32_t i = 0; i < l.rank(); ++i) {
    if (l.parity(i) != Parity::Even) continue;
    int c = coef(rng);
    if (c != 0) terms.push_back(Entry{i, Scalar(c)});
  }
  return l.reduce(vec::from_terms(l.domain(), std::move(terms)));
}

}  // namespace

// ---------------------------------------------------------------------------

LieSuperAlgebra::LieSuperAlgebra(Domain d, std::vector<std::string> names,
                                 std::vector<Parity> parity, std::vector<Integer> orders,
                                 std::vector<std::vector<SparseVec>> table)
    : domain_(std::move(d)),
      names_(std::move(names)),
      parity_(std::move(parity)),
      orders_(std::move(orders)),
      table_(std::move(table)) {
  const std::size_t n = names_.size();
  if (parity_.size() != n || orders_.size() != n || table_.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent Lie superalgebra data");
  }
  for (auto& o : orders_) {
    if (domain_.order_is_free(o)) o = 0;
    if (o != 0 && domain_.is_field()) {
      throw Error(ErrorCode::InvalidArgument, "torsion basis element over a field");
    }
  }
  for (auto& row : table_) {
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "bad bracket table");
    for (auto& v : row) v = reduce(v);
  }
}

bool LieSuperAlgebra::is_free() const {
  for (const auto& o : orders_) {
    if (o != 0) return false;
  }
  return true;
}

SparseVec LieSuperAlgebra::reduce(const SparseVec& x) const {
  return reduce_mod_orders(domain_, x, orders_);
}

SparseVec LieSuperAlgebra::bracket(const SparseVec& x, const SparseVec& y) const {
  std::vector<Entry> terms;
  for (const auto& a : x) {
    for (const auto& b : y) {
      const Scalar c = a.value * b.value;
      for (const auto& e : table_[a.index][b.index]) terms.push_back(Entry{e.index, c * e.value});
    }
  }
  return reduce(vec::from_terms(domain_, std::move(terms)));
}

void LieSuperAlgebra::set_weights(std::vector<Weight> w) {
  if (!w.empty() && w.size() != rank()) {
    throw Error(ErrorCode::InvalidArgument, "weight list does not match rank");
  }
  weights_ = std::move(w);
}

ValidationReport validate_lie_superalgebra(const LieSuperAlgebra& l, unsigned seed) {
  ValidationReport r;
  const std::size_t n = l.rank();
  const Domain& d = l.domain();
  auto e = [](std::size_t i) { return vec::unit(static_cast<std::uint32_t>(i)); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec& b = l.bracket_basis(i, j);
      const Parity p = l.parity(i) + l.parity(j);
      for (const auto& x : b) {
        if (l.parity(x.index) != p) {
          r.fail("parity: [" + l.name(i) + "," + l.name(j) + "]");
          break;
        }
        if (l.has_weights() && l.weight(x.index) != add_weights(l.weight(i), l.weight(j))) {
          r.fail("weight: [" + l.name(i) + "," + l.name(j) + "] " + weight_string(l.weight(x.index)));
          break;
        }
      }
      SparseVec anti = vec::axpy(d, b, koszul(l.parity(i), l.parity(j)), l.bracket_basis(j, i));
      if (!l.reduce(anti).empty()) {
        r.fail("antisymmetry: [" + l.name(i) + "," + l.name(j) + "]");
      }
      if (l.order(i) != 0 && !l.reduce(vec::scale(d, Scalar(l.order(i)), b)).empty()) {
        r.fail("order: " + l.order(i).get_str() + "*[" + l.name(i) + "," + l.name(j) + "] != 0");
      }
    }
    if (l.parity(i) == Parity::Even && !l.bracket_basis(i, i).empty()) {
      r.fail("even square: [" + l.name(i) + "," + l.name(i) + "]");
    }
    if (l.parity(i) == Parity::Odd && !l.bracket(e(i), l.bracket_basis(i, i)).empty()) {
      r.fail("odd cube: [" + l.name(i) + ",[" + l.name(i) + "," + l.name(i) + "]]");
    }
  }
  std::mt19937 rng(seed);
  for (int t = 0; t < 20; ++t) {
    SparseVec x = random_even_combination(l, rng);
    if (!l.bracket(x, x).empty()) r.fail("even square on a random even combination");
  }
  // With antisymmetry in place the Jacobi expression is (anti)symmetric
  // under permutations, so unordered triples suffice.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const SparseVec& ij = l.bracket_basis(i, j);
      for (std::size_t k = j; k < n; ++k) {
        const Parity pi = l.parity(i), pj = l.parity(j), pk = l.parity(k);
        SparseVec s = vec::scale(d, koszul(pi, pk), l.bracket(ij, e(k)));
        s = vec::axpy(d, s, koszul(pi, pj), l.bracket(l.bracket_basis(j, k), e(i)));
        s = vec::axpy(d, s, koszul(pj, pk), l.bracket(l.bracket_basis(k, i), e(j)));
        if (!l.reduce(s).empty()) {
          r.fail("Jacobi: (" + l.name(i) + "," + l.name(j) + "," + l.name(k) + ")");
        }
      }
    }
  }
  return r;
}

bool is_perfect(const LieSuperAlgebra& l) {
  Span s(l.domain(), l.rank());
  for (std::size_t i = 0; i < l.rank(); ++i) {
    if (l.order(i) != 0) s.insert(vec::unit(static_cast<std::uint32_t>(i), Scalar(l.order(i))));
    for (std::size_t j = i; j < l.rank(); ++j) {
      if (!l.bracket_basis(i, j).empty()) s.insert(l.bracket_basis(i, j));
    }
  }
  for (std::uint32_t i = 0; i < l.rank(); ++i) {
    if (!s.contains(vec::unit(i))) return false;
  }
  return true;
}

GradedModuleInvariants module_invariants(const LieSuperAlgebra& l) {
  std::vector<Integer> ev, od;
  for (std::size_t i = 0; i < l.rank(); ++i) (l.parity(i) == Parity::Even ? ev : od).push_back(l.order(i));
  return {make_component(l.domain(), ev), make_component(l.domain(), od)};
}

// ---------------------------------------------------------------------------

std::size_t ChainData::c2_index(std::uint32_t i, std::uint32_t j) const {
  const std::int64_t k = index_.at(static_cast<std::size_t>(i) * n_ + j);
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "no such C2 symbol");
  return static_cast<std::size_t>(k);
}

SparseVec ChainData::wedge(const LieSuperAlgebra& l, const SparseVec& x, const SparseVec& y) const {
  std::vector<Entry> terms;
  for (const auto& a : x) {
    for (const auto& b : y) {
      const Scalar c = a.value * b.value;
      if (a.index < b.index) {
        terms.push_back(Entry{static_cast<std::uint32_t>(index_[a.index * n_ + b.index]), c});
      } else if (a.index > b.index) {
        const int s = -koszul(l.parity(a.index), l.parity(b.index));
        terms.push_back(Entry{static_cast<std::uint32_t>(index_[b.index * n_ + a.index]), s * c});
      } else if (l.parity(a.index) == Parity::Odd) {
        terms.push_back(Entry{static_cast<std::uint32_t>(index_[a.index * n_ + a.index]), c});
      }
    }
  }
  return vec::from_terms(l.domain(), std::move(terms));
}

namespace {

void build_c2(const LieSuperAlgebra& l, ChainData& c) {
  const std::size_t n = l.rank();
  c.n_ = n;
  c.index_.assign(n * n, -1);
  std::map<std::pair<Weight, int>, std::size_t> blocks;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i; j < n; ++j) {
      if (i == j && l.parity(i) == Parity::Even) continue;
      c.index_[static_cast<std::size_t>(i) * n + j] = static_cast<std::int64_t>(c.c2_basis.size());
      c.c2_basis.push_back({i, j});
      const Parity p = l.parity(i) + l.parity(j);
      c.c2_parity.push_back(p);
      Weight w = l.has_weights() ? add_weights(l.weight(i), l.weight(j)) : Weight{};
      auto it = blocks.emplace(std::make_pair(std::move(w), bit(p)), blocks.size()).first;
      c.c2_block.push_back(it->second);
      c.d2.push_back(l.bracket_basis(i, j));
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (l.order(i) == 0) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j && l.parity(i) == Parity::Even) continue;
      SparseVec t = c.wedge(l, vec::unit(i, Scalar(l.order(i))), vec::unit(j));
      if (!t.empty()) c.torsion.push_back(std::move(t));
    }
  }
}

SparseVec apply_d2(const LieSuperAlgebra& l, const ChainData& c, const SparseVec& x) {
  std::vector<Entry> terms;
  for (const auto& e : x) {
    for (const auto& t : c.d2[e.index]) terms.push_back(Entry{t.index, e.value * t.value});
  }
  return l.reduce(vec::from_terms(l.domain(), std::move(terms)));
}

}  // namespace

ChainData exterior_square(const LieSuperAlgebra& l) {
  ChainData c;
  build_c2(l, c);
  return c;
}

ChainData chain_data(const LieSuperAlgebra& l, std::size_t threads) {
  ChainData c;
  build_c2(l, c);
  const std::uint32_t n = static_cast<std::uint32_t>(l.rank());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i; j < n; ++j) {
      if (i == j && l.parity(i) == Parity::Even) continue;
      for (std::uint32_t k = j; k < n; ++k) {
        if (j == k && l.parity(j) == Parity::Even) continue;
        c.c3_basis.push_back({i, j, k});
      }
    }
  }
  const Domain& d = l.domain();
  c.d3.resize(c.c3_basis.size());
  std::vector<char> bad(c.c3_basis.size(), 0);
  parallel_for(c.c3_basis.size(), threads, [&](std::size_t s) {
    const auto [i, j, k] = c.c3_basis[s];
    const SparseVec ei = vec::unit(i), ej = vec::unit(j), ek = vec::unit(k);
    SparseVec v;
    if (i == j && j == k) {
      // odd x: [x,x]∧x (the Jacobi expression would give −3 times this)
      v = c.wedge(l, l.bracket_basis(i, i), ei);
    } else {
      const Parity pi = l.parity(i), pj = l.parity(j), pk = l.parity(k);
      v = vec::scale(d, koszul(pi, pk), c.wedge(l, l.bracket_basis(i, j), ek));
      v = vec::axpy(d, v, koszul(pi, pj), c.wedge(l, l.bracket_basis(j, k), ei));
      v = vec::axpy(d, v, koszul(pj, pk), c.wedge(l, l.bracket_basis(k, i), ej));
    }
    if (!apply_d2(l, c, v).empty()) bad[s] = 1;
    c.d3[s] = std::move(v);
  });
  for (std::size_t s = 0; s < bad.size(); ++s) {
    if (bad[s]) {
      const auto [i, j, k] = c.c3_basis[s];
      throw Error(ErrorCode::ChainInconsistency,
                  "d2(d3(" + l.name(i) + "^" + l.name(j) + "^" + l.name(k) + ")) != 0");
    }
  }
  return c;
}

namespace {

// Per C₂ block: local coordinates, cycles and relations.
struct BlockSplit {
  std::vector<std::vector<std::uint32_t>> members;
  std::vector<std::uint32_t> local;
  std::vector<std::vector<SparseVec>> relations;
};

BlockSplit split_blocks(const ChainData& c) {
  BlockSplit b;
  std::size_t nb = 0;
  for (auto x : c.c2_block) nb = std::max(nb, x + 1);
  b.members.resize(nb);
  b.relations.resize(nb);
  b.local.resize(c.c2_basis.size());
  for (std::uint32_t s = 0; s < c.c2_basis.size(); ++s) {
    auto& m = b.members[c.c2_block[s]];
    b.local[s] = static_cast<std::uint32_t>(m.size());
    m.push_back(s);
  }
  auto add = [&](const SparseVec& v) {
    if (v.empty()) return;
    const std::size_t blk = c.c2_block[v.front().index];
    SparseVec loc;
    for (const auto& e : v) {
      if (c.c2_block[e.index] != blk) {
        throw Error(ErrorCode::ChainInconsistency, "relation is not homogeneous");
      }
      loc.push_back(Entry{b.local[e.index], e.value});
    }
    b.relations[blk].push_back(std::move(loc));
  };
  for (const auto& v : c.d3) add(v);
  for (const auto& v : c.torsion) add(v);
  return b;
}

}  // namespace

GradedModuleInvariants ce_h2(const LieSuperAlgebra& l, std::size_t threads) {
  const ChainData c = chain_data(l, threads);
  const BlockSplit b = split_blocks(c);
  const Domain& d = l.domain();
  std::vector<GradedModuleInvariants> parts(b.members.size());
  parallel_for(b.members.size(), threads, [&](std::size_t blk) {
    const auto& mem = b.members[blk];
    std::vector<SparseVec> images;
    for (auto s : mem) images.push_back(c.d2[s]);
    std::vector<SparseVec> cycles = preimage_generators(d, l.rank(), images, l.orders());
    std::vector<Parity> par(mem.size(), c.c2_parity[mem.front()]);
    try {
      parts[blk] = quotient_invariants(d, mem.size(), cycles, b.relations[blk], par);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::RelationsNotContained) {
        throw Error(ErrorCode::ChainInconsistency, "boundaries are not cycles");
      }
      throw;
    }
  });
  GradedModuleInvariants h;
  for (const auto& p : parts) h = direct_sum(d, h, p);
  return h;
}

// ---------------------------------------------------------------------------

GradedModuleInvariants GradedModuleSpec::invariants(const Domain& d) const {
  std::vector<Integer> ev, od;
  for (std::size_t i = 0; i < names.size(); ++i) {
    (parity[i] == Parity::Even ? ev : od).push_back(orders[i]);
  }
  return {make_component(d, ev), make_component(d, od)};
}

SparseVec SuperTwoCocycle::eval(const Domain& d, const SparseVec& x, const SparseVec& y) const {
  std::vector<Entry> terms;
  for (const auto& a : x) {
    for (const auto& b : y) {
      const Scalar c = a.value * b.value;
      for (const auto& e : values[a.index][b.index]) terms.push_back(Entry{e.index, c * e.value});
    }
  }
  return reduce_mod_orders(d, vec::from_terms(d, std::move(terms)), target.orders);
}

ValidationReport check_super_2cocycle(const LieSuperAlgebra& l, const SuperTwoCocycle& psi,
                                      unsigned seed) {
  ValidationReport r;
  const Domain& d = l.domain();
  const std::size_t n = l.rank();
  const auto& wo = psi.target.orders;
  auto red = [&](const SparseVec& v) { return reduce_mod_orders(d, v, wo); };
  auto e = [](std::size_t i) { return vec::unit(static_cast<std::uint32_t>(i)); };
  if (psi.values.size() != n) {
    r.fail("value table does not match the source rank");
    return r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec v = red(psi.values[i][j]);
      const Parity p = l.parity(i) + l.parity(j);
      for (const auto& x : v) {
        if (psi.target.parity.at(x.index) != p) {
          r.fail("evenness: psi(" + l.name(i) + "," + l.name(j) + ")");
          break;
        }
      }
      SparseVec anti = vec::axpy(d, v, koszul(l.parity(i), l.parity(j)), psi.values[j][i]);
      if (!red(anti).empty()) r.fail("antisymmetry: psi(" + l.name(i) + "," + l.name(j) + ")");
      if (l.order(i) != 0 && !red(vec::scale(d, Scalar(l.order(i)), v)).empty()) {
        r.fail("order: psi(" + l.name(i) + "," + l.name(j) + ")");
      }
    }
    if (l.parity(i) == Parity::Even && !red(psi.values[i][i]).empty()) {
      r.fail("even square: psi(" + l.name(i) + "," + l.name(i) + ")");
    }
    if (l.parity(i) == Parity::Odd && !psi.eval(d, l.bracket_basis(i, i), e(i)).empty()) {
      r.fail("odd cube: psi([" + l.name(i) + "," + l.name(i) + "]," + l.name(i) + ")");
    }
  }
  std::mt19937 rng(seed);
  for (int t = 0; t < 20; ++t) {
    SparseVec x = random_even_combination(l, rng);
    if (!psi.eval(d, x, x).empty()) r.fail("even square on a random even combination");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Parity pi = l.parity(i), pj = l.parity(j), pk = l.parity(k);
        SparseVec s = vec::scale(d, koszul(pi, pk), psi.eval(d, l.bracket_basis(i, j), e(k)));
        s = vec::axpy(d, s, koszul(pi, pj), psi.eval(d, l.bracket_basis(j, k), e(i)));
        s = vec::axpy(d, s, koszul(pj, pk), psi.eval(d, l.bracket_basis(k, i), e(j)));
        if (!red(s).empty()) {
          r.fail("J(" + l.name(i) + "," + l.name(j) + "," + l.name(k) + ") != 0");
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

void fill_kernel(const LieSuperAlgebra& base, CentralExtension& ext) {
  const Domain& d = base.domain();
  const LieSuperAlgebra& t = ext.total;
  std::vector<SparseVec> gens = preimage_generators(d, base.rank(), ext.projection, base.orders());
  std::vector<SparseVec> rels;
  for (std::uint32_t i = 0; i < t.rank(); ++i) {
    if (t.order(i) != 0) {
      rels.push_back(vec::unit(i, Scalar(t.order(i))));
      gens.push_back(rels.back());
    }
  }
  gens = homogeneous_parts(gens, t.parities());
  ext.kernel_invariants = quotient_invariants(d, t.rank(), gens, rels, t.parities());
  ext.kernel_basis.clear();
  for (auto& g : gens) {
    SparseVec v = t.reduce(g);
    if (!v.empty()) ext.kernel_basis.push_back(std::move(v));
  }
}

SparseVec UniversalExtension::wedge_class(const SparseVec& x, const SparseVec& y) const {
  return quotient.project(chains.wedge(base, x, y));
}

UniversalExtension uce(const LieSuperAlgebra& l, std::size_t threads) {
  if (!is_perfect(l)) throw Error(ErrorCode::NotPerfect, "uce requires a perfect algebra");
  const Domain& d = l.domain();
  UniversalExtension u;
  u.base = l;
  u.chains = chain_data(l, threads);
  const ChainData& c = u.chains;
  std::vector<SparseVec> rels = c.d3;
  rels.insert(rels.end(), c.torsion.begin(), c.torsion.end());
  u.quotient = BlockQuotientModule::build(d, c.c2_block, rels, threads);
  const BlockQuotientModule& q = u.quotient;
  const std::size_t T = q.rank();

  std::vector<std::string> names(T);
  std::vector<Parity> parity(T);
  std::vector<Weight> weights;
  std::vector<SparseVec> proj(T);
  for (std::size_t t = 0; t < T; ++t) {
    const SparseVec& lift = q.lift(t);
    const Wedge2 w = c.c2_basis[lift.front().index];
    parity[t] = c.c2_parity[lift.front().index];
    if (lift.size() == 1 && lift.front().value == 1) {
      names[t] = "[" + l.name(w.i) + "," + l.name(w.j) + "]";
    } else {
      names[t] = "u" + std::to_string(t);
    }
    if (l.has_weights()) weights.push_back(add_weights(l.weight(w.i), l.weight(w.j)));
    proj[t] = apply_d2(l, c, lift);
  }
  std::vector<std::vector<SparseVec>> table(T, std::vector<SparseVec>(T));
  parallel_for(T, threads, [&](std::size_t s) {
    for (std::size_t t = 0; t < T; ++t) table[s][t] = q.project(c.wedge(l, proj[s], proj[t]));
  });
  u.ext.total = LieSuperAlgebra(d, std::move(names), std::move(parity), q.orders(), std::move(table));
  if (l.has_weights()) u.ext.total.set_weights(std::move(weights));
  u.ext.projection = std::move(proj);
  fill_kernel(l, u.ext);
  return u;
}

CentralExtension extension_from_cocycle(const LieSuperAlgebra& l, const SuperTwoCocycle& psi) {
  ValidationReport rep = check_super_2cocycle(l, psi);
  if (!rep.pass) throw Error(ErrorCode::CocycleInvalid, rep.violations.front());
  const Domain& d = l.domain();
  const std::size_t n = l.rank(), w = psi.target.rank();
  std::vector<std::string> names = l.names();
  names.insert(names.end(), psi.target.names.begin(), psi.target.names.end());
  std::vector<Parity> parity = l.parities();
  parity.insert(parity.end(), psi.target.parity.begin(), psi.target.parity.end());
  std::vector<Integer> orders = l.orders();
  orders.insert(orders.end(), psi.target.orders.begin(), psi.target.orders.end());
  std::vector<std::vector<SparseVec>> table(n + w, std::vector<SparseVec>(n + w));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec v = l.bracket_basis(i, j);
      for (const auto& e : reduce_mod_orders(d, psi.values[i][j], psi.target.orders)) {
        v.push_back(Entry{static_cast<std::uint32_t>(n + e.index), e.value});
      }
      table[i][j] = std::move(v);
    }
  }
  CentralExtension ext;
  ext.total = LieSuperAlgebra(d, std::move(names), std::move(parity), std::move(orders),
                              std::move(table));
  if (l.has_weights() && psi.target.weights.size() == w) {
    std::vector<Weight> ws = l.weights();
    ws.insert(ws.end(), psi.target.weights.begin(), psi.target.weights.end());
    ext.total.set_weights(std::move(ws));
  }
  ext.projection.resize(n + w);
  for (std::uint32_t i = 0; i < n; ++i) ext.projection[i] = vec::unit(i);
  fill_kernel(l, ext);
  return ext;
}

}  // namespace uce
