#include "uce/steinberg.hpp"

#include <map>
#include <sstream>

#include "uce/parallel.hpp"

namespace uce {

void RelationCheck::record(bool ok, const std::function<std::string()>& what) {
  ++instances;
  if (ok) return;
  ++failures;
  if (examples.size() < 5) examples.push_back(what());
}

bool CheckReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass()) return false;
  }
  return true;
}

RelationCheck& CheckReport::add(std::string name) {
  checks.push_back(RelationCheck{std::move(name), 0, 0, {}});
  return checks.back();
}

const RelationCheck* CheckReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string CheckReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << c.name << ": " << (c.instances - c.failures) << "/" << c.instances;
    if (!c.pass() && !c.examples.empty()) os << " (first failure " << c.examples.front() << ")";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

SparseVec SteinbergRealization::F(std::uint32_t i, std::uint32_t j, const SparseVec& a) const {
  std::vector<Entry> terms;
  for (const auto& e : a) {
    for (const auto& t : F_basis[sl.offdiag_index(i, j, e.index)]) {
      terms.push_back(Entry{t.index, e.value * t.value});
    }
  }
  return st.reduce(vec::from_terms(st.domain(), std::move(terms)));
}

SparseVec SteinbergRealization::H(std::uint32_t i, std::uint32_t j, const SparseVec& a,
                                  const SparseVec& b) const {
  return st.bracket(F(i, j, a), F(j, i, b));
}

SparseVec SteinbergRealization::h(const SparseVec& a, const SparseVec& b, std::uint32_t j) const {
  const SparseVec one = vec::unit(static_cast<std::uint32_t>(sl.A.unit_index()));
  const int s = koszul(sl.A.parity_of(a), sl.A.parity_of(b));
  return st.reduce(vec::axpy(st.domain(), H(0, j, a, b), -s, H(0, j, one, sl.A.multiply(b, a))));
}

SparseVec SteinbergRealization::phi_of(const SparseVec& x) const {
  std::vector<Entry> terms;
  for (const auto& e : x) {
    for (const auto& t : phi[e.index]) terms.push_back(Entry{t.index, e.value * t.value});
  }
  return sl.lie.reduce(vec::from_terms(st.domain(), std::move(terms)));
}

namespace {

std::uint32_t least_other(std::uint32_t i, std::uint32_t j) {
  std::uint32_t k = 0;
  while (k == i || k == j) ++k;
  return k;
}

std::vector<std::size_t> weight_blocks(const LieSuperAlgebra& l) {
  std::map<std::pair<Weight, int>, std::size_t> ids;
  std::vector<std::size_t> out(l.rank());
  for (std::size_t t = 0; t < l.rank(); ++t) {
    Weight w = l.has_weights() ? l.weight(t) : Weight{};
    out[t] = ids.emplace(std::make_pair(std::move(w), bit(l.parity(t))), ids.size()).first->second;
  }
  return out;
}

}  // namespace

SteinbergRealization build_st(int m, int n, const SuperAlgebra& a, const StOptions& opt) {
  SteinbergRealization s;
  s.options = opt;
  s.sl = build_sl(m, n, a);
  const MatrixLieAlgebra& sl = s.sl;
  const Domain& d = a.domain();
  const auto N = static_cast<std::uint32_t>(sl.size());
  const auto r = static_cast<std::uint32_t>(a.rank());
  const auto one = static_cast<std::uint32_t>(a.unit_index());
  UniversalExtension u = uce(sl.lie, opt.threads);
  const LieSuperAlgebra& T = u.ext.total;
  auto E = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    return vec::unit(static_cast<std::uint32_t>(sl.offdiag_index(i, j, k)));
  };

  // lifts of E_ij(e_k) in uce(sl)
  std::vector<SparseVec> lifts(sl.lie.rank());
  for (std::uint32_t i = 0; i < N; ++i) {
    for (std::uint32_t j = 0; j < N; ++j) {
      if (i == j) continue;
      const std::uint32_t l = least_other(i, j);
      for (std::uint32_t k = 0; k < r; ++k) {
        SparseVec v;
        if (opt.normalize_lifts) {
          v = u.wedge_class(sl.lie.bracket(E(i, l, one), E(l, i, one)), E(i, j, k));
        } else {
          v = u.wedge_class(E(i, l, one), E(l, j, k));
        }
        lifts[sl.offdiag_index(i, j, k)] = std::move(v);
      }
    }
  }

  if (!opt.quotient_central) {
    s.st = T;
    s.phi = u.ext.projection;
    s.F_basis = std::move(lifts);
  } else {
    std::vector<SparseVec> rels;
    for (std::uint32_t i = 0; i < N; ++i)
      for (std::uint32_t j = 0; j < N; ++j)
        for (std::uint32_t k = 0; k < N; ++k)
          for (std::uint32_t l = 0; l < N; ++l) {
            // every pair that (st3) declares to commute
            if (i == j || k == l || j == k || i == l) continue;
            for (std::uint32_t x = 0; x < r; ++x)
              for (std::uint32_t y = 0; y < r; ++y) {
                SparseVec c = u.wedge_class(E(i, j, x), E(k, l, y));
                if (!c.empty()) rels.push_back(std::move(c));
              }
          }
    s.central_generators = rels.size();
    for (std::uint32_t t = 0; t < T.rank(); ++t) {
      if (T.order(t) != 0) rels.push_back(vec::unit(t, Scalar(T.order(t))));
    }
    const BlockQuotientModule q = BlockQuotientModule::build(d, weight_blocks(T), rels, opt.threads);
    const std::size_t R = q.rank();
    std::vector<std::string> names(R);
    std::vector<Parity> parity(R);
    std::vector<Weight> weights;
    s.phi.resize(R);
    for (std::size_t t = 0; t < R; ++t) {
      const SparseVec& lf = q.lift(t);
      const std::size_t f = lf.front().index;
      names[t] = (lf.size() == 1 && lf.front().value == 1) ? T.name(f) : "s" + std::to_string(t);
      parity[t] = T.parity(f);
      if (T.has_weights()) weights.push_back(T.weight(f));
      std::vector<Entry> terms;
      for (const auto& e : lf) {
        for (const auto& p : u.ext.projection[e.index]) terms.push_back(Entry{p.index, e.value * p.value});
      }
      s.phi[t] = sl.lie.reduce(vec::from_terms(d, std::move(terms)));
    }
    std::vector<std::vector<SparseVec>> table(R, std::vector<SparseVec>(R));
    parallel_for(R, opt.threads, [&](std::size_t x) {
      for (std::size_t y = 0; y < R; ++y) table[x][y] = q.project(T.bracket(q.lift(x), q.lift(y)));
    });
    s.st = LieSuperAlgebra(d, std::move(names), std::move(parity), q.orders(), std::move(table));
    if (T.has_weights()) s.st.set_weights(std::move(weights));
    s.F_basis.resize(lifts.size());
    for (std::size_t t = 0; t < lifts.size(); ++t) {
      if (!lifts[t].empty()) s.F_basis[t] = q.project(lifts[t]);
    }
  }
  s.kernel.total = s.st;
  s.kernel.projection = s.phi;
  fill_kernel(sl.lie, s.kernel);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

struct Ctx {
  const SteinbergRealization& s;
  const SuperAlgebra& A;
  const Domain& d;
  std::uint32_t N, r;

  explicit Ctx(const SteinbergRealization& x)
      : s(x), A(x.sl.A), d(x.sl.A.domain()), N(static_cast<std::uint32_t>(x.sl.size())),
        r(static_cast<std::uint32_t>(x.sl.A.rank())) {}

  int p(std::uint32_t i) const { return bit(s.index_parity(i)); }
  int pa(std::uint32_t x) const { return bit(A.parity(x)); }
  static int sgn(int e) { return (e & 1) ? -1 : 1; }
  SparseVec e(std::uint32_t x) const { return vec::unit(x); }
  SparseVec mul(const SparseVec& x, const SparseVec& y) const { return A.multiply(x, y); }
  bool eq(const SparseVec& x, const SparseVec& y) const {
    return s.st.reduce(vec::sub(d, x, y)).empty();
  }
  std::string idx(std::initializer_list<std::uint32_t> v) const {
    std::string out;
    for (auto i : v) out += std::to_string(i + 1);
    return out;
  }
  std::string el(std::initializer_list<std::uint32_t> v) const {
    std::string out;
    for (auto x : v) out += (out.empty() ? "" : ",") + A.name(x);
    return out;
  }
};

}  // namespace

CheckReport verify_presentation(const SteinbergRealization& s) {
  const Ctx c(s);
  CheckReport rep;
  RelationCheck& st2 = rep.add("st2");
  RelationCheck& st3 = rep.add("st3");
  for (std::uint32_t i = 0; i < c.N; ++i)
    for (std::uint32_t j = 0; j < c.N; ++j) {
      if (i == j) continue;
      for (std::uint32_t x = 0; x < c.r; ++x)
        for (std::uint32_t y = 0; y < c.r; ++y) {
          const SparseVec a = c.e(x), b = c.e(y);
          for (std::uint32_t k = 0; k < c.N; ++k) {
            if (k == i || k == j) continue;
            st2.record(c.eq(s.st.bracket(s.F(i, j, a), s.F(j, k, b)), s.F(i, k, c.mul(a, b))),
                       [&] { return "[F" + c.idx({i, j}) + "(" + c.el({x}) + "),F" + c.idx({j, k}) + "(" +
                                    c.el({y}) + ")]"; });
          }
          for (std::uint32_t k = 0; k < c.N; ++k)
            for (std::uint32_t l = 0; l < c.N; ++l) {
              if (k == l || j == k || i == l) continue;
              st3.record(s.st.bracket(s.F(i, j, a), s.F(k, l, b)).empty(), [&] {
                return "[F" + c.idx({i, j}) + "(" + c.el({x}) + "),F" + c.idx({k, l}) + "(" + c.el({y}) +
                       ")]";
              });
            }
        }
    }
  return rep;
}

CheckReport verify_identities(const SteinbergRealization& s) {
  const Ctx c(s);
  const SteinbergRealization& S = s;
  CheckReport rep;
  RelationCheck& id1 = rep.add("id1");
  RelationCheck& id2 = rep.add("id2");
  RelationCheck& id3 = rep.add("id3");
  RelationCheck& id4 = rep.add("id4");
  RelationCheck& id5 = rep.add("id5");
  RelationCheck& id6 = rep.add("id6");
  RelationCheck& id7 = rep.add("id7");
  RelationCheck& id8 = rep.add("id8");
  RelationCheck& hj = rep.add("h-independent-of-j");
  const std::uint32_t N = c.N, r = c.r;

  for (std::uint32_t x = 0; x < r; ++x)
    for (std::uint32_t y = 0; y < r; ++y) {
      const SparseVec a = c.e(x), b = c.e(y);
      const int pa = c.pa(x), pb = c.pa(y);
      for (std::uint32_t i = 0; i < N; ++i)
        for (std::uint32_t j = 0; j < N; ++j) {
          if (i == j) continue;
          const SparseVec Hij = S.H(i, j, a, b);
          const int pij = c.p(i) + c.p(j);
          auto tag = [&](const char* what, std::initializer_list<std::uint32_t> ix,
                         std::initializer_list<std::uint32_t> el) {
            return std::string(what) + " i,j,.. = " + c.idx(ix) + " a,b,.. = " + c.el(el);
          };
          id1.record(c.eq(Hij, vec::scale(c.d, -Ctx::sgn((pij + pa) * (pij + pb)), S.H(j, i, b, a))),
                     [&] { return tag("id1", {i, j}, {x, y}); });
          for (std::uint32_t z = 0; z < r; ++z) {
            const SparseVec cc = c.e(z);
            const int pc = c.pa(z);
            const SparseVec abc = c.mul(c.mul(a, b), cc);
            const SparseVec cab = c.mul(c.mul(cc, a), b);
            const SparseVec cba = c.mul(c.mul(cc, b), a);
            {
              const int e = pij + pa * pb + pb * pc + pc * pa;
              id5.record(c.eq(S.st.bracket(Hij, S.F(i, j, cc)),
                              S.F(i, j, vec::axpy(c.d, abc, Ctx::sgn(e), cba))),
                         [&] { return tag("id5", {i, j}, {x, y, z}); });
            }
            for (std::uint32_t k = 0; k < N; ++k) {
              if (k == i || k == j) continue;
              id2.record(c.eq(S.st.bracket(Hij, S.F(i, k, cc)), S.F(i, k, abc)),
                         [&] { return tag("id2", {i, j, k}, {x, y, z}); });
              id3.record(c.eq(S.st.bracket(Hij, S.F(k, i, cc)),
                              vec::scale(c.d, -Ctx::sgn((pa + pb) * (c.p(i) + c.p(k) + pc)),
                                         S.F(k, i, cab))),
                         [&] { return tag("id3", {i, j, k}, {x, y, z}); });
              id4.record(c.eq(S.st.bracket(Hij, S.F(k, j, cc)),
                              vec::scale(c.d,
                                         Ctx::sgn((pij + pa) * (pij + pb) +
                                                  (pa + pb) * (c.p(j) + c.p(k) + pc)),
                                         S.F(k, j, cba))),
                         [&] { return tag("id4", {i, j, k}, {x, y, z}); });
              for (std::uint32_t l = 0; l < N; ++l) {
                if (l == i || l == j || l == k) continue;
                id6.record(S.st.bracket(Hij, S.F(k, l, cc)).empty(),
                           [&] { return tag("id6", {i, j, k, l}, {x, y, z}); });
              }
            }
          }
        }
      // h(a,b) with the first index fixed to 1
      const SparseVec hab = S.h(a, b, 1);
      for (std::uint32_t j = 2; j < N; ++j) {
        hj.record(c.eq(hab, S.h(a, b, j)), [&] { return "h(" + c.el({x, y}) + ") j=" + std::to_string(j + 1); });
      }
      const SparseVec comm = supercommutator(c.A, a, b);
      for (std::uint32_t z = 0; z < r; ++z) {
        const SparseVec cc = c.e(z);
        for (std::uint32_t i = 1; i < N; ++i) {
          id7.record(c.eq(S.st.bracket(hab, S.F(0, i, cc)), S.F(0, i, c.mul(comm, cc))),
                     [&] { return "id7 i=" + std::to_string(i + 1) + " a,b,c = " + c.el({x, y, z}); });
        }
        for (std::uint32_t j = 1; j < N; ++j)
          for (std::uint32_t k = 1; k < N; ++k) {
            if (j == k) continue;
            id8.record(S.st.bracket(hab, S.F(j, k, cc)).empty(), [&] {
              return "id8 j,k=" + c.idx({j, k}) + " a,b,c = " + c.el({x, y, z});
            });
          }
      }
    }
  return rep;
}

GradedModuleInvariants span_invariants(const LieSuperAlgebra& l, const std::vector<SparseVec>& vecs) {
  std::vector<SparseVec> rels;
  for (std::uint32_t t = 0; t < l.rank(); ++t) {
    if (l.order(t) != 0) rels.push_back(vec::unit(t, Scalar(l.order(t))));
  }
  std::vector<SparseVec> gens;
  for (const auto& v : vecs) {
    if (!v.empty()) gens.push_back(v);
  }
  gens.insert(gens.end(), rels.begin(), rels.end());
  return quotient_invariants(l.domain(), l.rank(), gens, rels, l.parities());
}

CheckReport verify_decomposition(const SteinbergRealization& s) {
  const Ctx c(s);
  const LieSuperAlgebra& st = s.st;
  const SparseVec one = c.e(static_cast<std::uint32_t>(c.A.unit_index()));
  std::vector<std::vector<SparseVec>> parts;
  std::vector<SparseVec> hp;
  for (std::uint32_t x = 0; x < c.r; ++x)
    for (std::uint32_t y = 0; y < c.r; ++y) hp.push_back(s.h(c.e(x), c.e(y)));
  parts.push_back(std::move(hp));
  for (std::uint32_t j = 1; j < c.N; ++j) {
    std::vector<SparseVec> p;
    for (std::uint32_t x = 0; x < c.r; ++x) p.push_back(s.H(0, j, one, c.e(x)));
    parts.push_back(std::move(p));
  }
  for (std::uint32_t i = 0; i < c.N; ++i)
    for (std::uint32_t j = 0; j < c.N; ++j) {
      if (i == j) continue;
      std::vector<SparseVec> p;
      for (std::uint32_t x = 0; x < c.r; ++x) p.push_back(s.F(i, j, c.e(x)));
      parts.push_back(std::move(p));
    }
  GradedModuleInvariants sum;
  std::vector<SparseVec> all;
  for (const auto& p : parts) {
    sum = direct_sum(c.d, sum, span_invariants(st, p));
    all.insert(all.end(), p.begin(), p.end());
  }
  const GradedModuleInvariants whole = span_invariants(st, all);
  const GradedModuleInvariants target = module_invariants(st);
  CheckReport rep;
  // A surjection between isomorphic finitely generated modules is injective,
  // so equal invariants make the sum direct.
  rep.add("sum-is-direct").record(sum == whole, [] { return std::string("invariants of the sum differ"); });
  std::vector<SparseVec> units, rels;
  for (std::uint32_t t = 0; t < st.rank(); ++t) {
    units.push_back(vec::unit(t));
    if (st.order(t) != 0) rels.push_back(vec::unit(t, Scalar(st.order(t))));
  }
  all.insert(all.end(), rels.begin(), rels.end());
  rep.add("sum-is-st").record(whole == target && spans_equal(c.d, st.rank(), all, units),
                              [] { return std::string("the parts do not span st"); });
  return rep;
}

GradedModuleInvariants hc1_kernel_oracle(const SuperAlgebra& a, std::size_t threads) {
  StOptions opt;
  opt.threads = threads;
  return build_st(3, 2, a, opt).kernel_invariants();
}

}  // namespace uce
