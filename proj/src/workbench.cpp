#include "uce/workbench.hpp"

#include <chrono>
#include <functional>
#include <mutex>

#include "json.hpp"
#include "uce/cocycle.hpp"
#include "uce/parallel.hpp"
#include "uce/steinberg.hpp"

namespace uce {

namespace {

using ojson = nlohmann::ordered_json;

ojson integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

ojson component_json(const ModuleComponent& c) {
  ojson j;
  j["free"] = c.free_rank;
  j["torsion"] = ojson::array();
  for (const auto& t : c.torsion) j["torsion"].push_back(integer_json(t));
  return j;
}

ojson invariants_json(const GradedModuleInvariants& g) {
  ojson j;
  j["even"] = component_json(g.even);
  j["odd"] = component_json(g.odd);
  return j;
}

}  // namespace

std::string format_invariants(const GradedModuleInvariants& g) {
  if (g.is_zero()) return "0";
  auto part = [](const ModuleComponent& c) {
    std::string s;
    if (c.free_rank > 0) s = "free " + std::to_string(c.free_rank);
    if (!c.torsion.empty()) {
      s += std::string(s.empty() ? "" : " + ") + "torsion (";
      for (std::size_t i = 0; i < c.torsion.size(); ++i) s += (i ? "," : "") + c.torsion[i].get_str();
      s += ")";
    }
    return s.empty() ? std::string("0") : s;
  };
  return "even: " + part(g.even) + "; odd: " + part(g.odd);
}

bool VerificationReport::pass() const {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

std::string VerificationReport::to_json(int indent) const {
  ojson j;
  j["version"] = version;
  j["domain"] = domain;
  j["algebra"] = algebra;
  j["results"] = ojson::array();
  for (const auto& r : results) {
    ojson x;
    x["check"] = r.check;
    x["m"] = r.m;
    x["n"] = r.n;
    if (r.expected) {
      x["expected"] = invariants_json(r.expected->value);
      x["expected"]["formula"] = r.expected->formula;
    } else {
      x["expected"] = nullptr;
    }
    x["computed"] = r.computed ? invariants_json(*r.computed) : ojson(nullptr);
    x["pass"] = r.pass;
    x["millis"] = static_cast<std::int64_t>(r.millis);
    if (!r.detail.empty()) x["detail"] = r.detail;
    j["results"].push_back(std::move(x));
  }
  return j.dump(indent);
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> c{"h2-sl",    "h2-st",      "h2-st-sharp", "hc1",
                                          "presentation", "identities", "decomposition", "membership",
                                          "cocycle",  "uce-compare"};
  return c;
}

std::vector<std::pair<int, int>> small_rank_shapes() { return {{2, 1}, {3, 1}, {2, 2}, {3, 0}, {4, 0}}; }

GradedModuleInvariants hc1_value(const SuperAlgebra& a, std::size_t threads) {
  if (a.domain().kind() == DomainKind::Rationals) return hc1_connes(a);
  return hc1_kernel_oracle(a, threads);
}

std::optional<Expected> expected_h2(const std::string& target, int m, int n, const SuperAlgebra& a,
                                    const GradedModuleInvariants& hc1) {
  const Domain& d = a.domain();
  Expected e;
  if (target == "st-sharp") {
    if (!((m == 3 && n == 1) || (m == 2 && n == 2))) return std::nullopt;
    e.formula = "0";
    return e;
  }
  if (target != "sl" && target != "st") return std::nullopt;
  auto Am = [&](unsigned long k) { return quotient_Am(a, k).invariants; };
  if (m + n >= 5 || (m == 2 && n == 1)) {
    e.formula = "0";
  } else if (m == 3 && n == 0) {
    e.formula = "A3^6";
    e.value = power(d, Am(3), 6);
  } else if (m == 4 && n == 0) {
    e.formula = "A2^6";
    e.value = power(d, Am(2), 6);
  } else if (m == 3 && n == 1) {
    e.formula = "Pi(A2)^6";
    e.value = power(d, parity_change(Am(2)), 6);
  } else if (m == 2 && n == 2) {
    e.formula = "A2^4 + A0^2";
    e.value = direct_sum(d, power(d, Am(2), 4), power(d, Am(0), 2));
  } else {
    return std::nullopt;
  }
  if (target == "sl") {
    e.formula = e.formula == "0" ? "HC1" : "HC1 + " + e.formula;
    e.value = direct_sum(d, hc1, e.value);
  }
  return e;
}

GradedModuleInvariants compute_h2(const std::string& target, int m, int n, const SuperAlgebra& a,
                                  std::size_t threads) {
  if (target == "sl") return ce_h2(build_sl(m, n, a).lie, threads);
  StOptions opt;
  opt.threads = threads;
  if (target == "st") return ce_h2(build_st(m, n, a, opt).st, threads);
  if (target == "st-sharp") {
    Variant v;
    if (m == 3 && n == 1) {
      v = Variant::V31;
    } else if (m == 2 && n == 2) {
      v = Variant::V22;
    } else {
      throw Error(ErrorCode::VariantNotSupported, "st-sharp is defined for (3,1) and (2,2) only");
    }
    return ce_h2(build_st_sharp(v, a, threads).ext.total, threads);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown target '" + target + "' (use sl, st or st-sharp)");
}

namespace {

bool applies(const std::string& check, int m, int n) {
  const bool rank4 = (m == 3 && n == 1) || (m == 2 && n == 2);
  if (check == "h2-st-sharp" || check == "cocycle") return rank4;
  if (check == "uce-compare") return rank4 || (m == 2 && n == 1);
  if (check == "membership") return m >= 1;
  if (check == "presentation" || check == "identities" || check == "decomposition") return m + n <= 4;
  return true;
}

std::string report_details(const CheckReport& r) {
  std::string s;
  for (const auto& c : r.checks) {
    if (!s.empty()) s += "; ";
    s += c.name + " " + std::to_string(c.instances - c.failures) + "/" + std::to_string(c.instances);
    if (!c.pass() && !c.examples.empty()) s += " first failure " + c.examples.front();
  }
  return s;
}

void run_check(CheckResult& r, const SuperAlgebra& a, std::size_t threads,
               const std::function<const GradedModuleInvariants&()>& hc1) {
  const int m = r.m, n = r.n;
  const std::string& c = r.check;
  if (c.rfind("h2-", 0) == 0) {
    const std::string target = c.substr(3);
    r.computed = compute_h2(target, m, n, a, threads);
    r.expected = expected_h2(target, m, n, a, target == "sl" ? hc1() : GradedModuleInvariants{});
    r.pass = !r.expected || r.expected->value == *r.computed;
  } else if (c == "hc1") {
    StOptions opt;
    opt.threads = threads;
    r.computed = build_st(m, n, a, opt).kernel_invariants();
    r.expected = Expected{"HC1", hc1()};
    r.pass = r.expected->value == *r.computed;
    r.detail = "kernel of st -> sl";
  } else if (c == "presentation" || c == "identities" || c == "decomposition") {
    StOptions opt;
    opt.threads = threads;
    const SteinbergRealization s = build_st(m, n, a, opt);
    const CheckReport rep = c == "presentation" ? verify_presentation(s)
                            : c == "identities" ? verify_identities(s)
                                                : verify_decomposition(s);
    r.pass = rep.pass();
    r.detail = report_details(rep);
  } else if (c == "membership") {
    const MembershipReport rep = sl_membership_check(m, n, a);
    r.pass = rep.pass && rep.basis_matches;
    r.detail = "derived rank " + std::to_string(rep.derived_rank) + ", Str-condition rank " +
               std::to_string(rep.supertrace_rank) + (rep.basis_matches ? "" : ", sl basis mismatch");
  } else if (c == "cocycle") {
    const PsiData p = build_psi(m == 3 ? Variant::V31 : Variant::V22, a);
    const ValidationReport rep = check_super_2cocycle(p.sl.lie, p.psi);
    r.pass = rep.pass;
    r.detail = rep.pass ? "psi is a super 2-cocycle" : rep.violations.front();
  } else if (c == "uce-compare") {
    UceComparison cmp;
    if (m == 2 && n == 1) {
      cmp = compare_st21_with_uce(a, threads);
    } else {
      const StSharp s = build_st_sharp(m == 3 ? Variant::V31 : Variant::V22, a, threads);
      cmp = compare_with_uce(s, threads);
      if (!s.relations.pass()) {
        cmp.isomorphic = false;
        cmp.notes.push_back(report_details(s.relations));
      }
    }
    r.computed = cmp.candidate_kernel;
    r.expected = Expected{"ker(uce(sl) -> sl)", cmp.uce_kernel};
    r.pass = cmp.pass();
    r.detail = cmp.isomorphic ? "isomorphic" : "";
    for (const auto& note : cmp.notes) r.detail += (r.detail.empty() ? "" : "; ") + note;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown check '" + c + "'");
  }
}

}  // namespace

VerificationReport run_suite(const SuiteConfig& config) {
  VerificationReport rep;
  rep.version = "1";
  rep.domain = config.algebra.domain().name();
  rep.algebra = config.label;
  const std::vector<std::string>& checks = config.checks.empty() ? known_checks() : config.checks;
  for (const auto& c : checks) {
    for (const auto& [m, n] : config.shapes) {
      if (applies(c, m, n) || (!config.checks.empty() && c.rfind("h2-", 0) == 0)) {
        CheckResult r;
        r.check = c;
        r.m = m;
        r.n = n;
        rep.results.push_back(std::move(r));
      }
    }
  }
  const SuperAlgebra& a = config.algebra;
  std::once_flag hc1_once;
  GradedModuleInvariants hc1;
  auto get_hc1 = [&]() -> const GradedModuleInvariants& {
    std::call_once(hc1_once, [&] { hc1 = hc1_value(a, config.threads); });
    return hc1;
  };
  const std::size_t pool = std::max<std::size_t>(1, config.threads);
  const std::size_t inner = rep.results.size() > 1 ? 1 : pool;
  parallel_for(rep.results.size(), pool, [&](std::size_t i) {
    CheckResult& r = rep.results[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run_check(r, a, inner, get_hc1);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.millis = config.timing ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0;
  });
  return rep;
}

}  // namespace uce
