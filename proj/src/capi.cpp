#include "uce/uce_c.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "json.hpp"
#include "uce/algebra_text.hpp"
#include "uce/cocycle.hpp"
#include "uce/parallel.hpp"
#include "uce/workbench.hpp"

struct uce_algebra {
  uce::SuperAlgebra algebra;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
uce_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return UCE_OK;
  } catch (const uce::Error& e) {
    last_error = e.what();
    return static_cast<uce_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    return UCE_ERR_INTERNAL;
  }
}

uce_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return UCE_ERR_NULL_ARGUMENT;
}

std::size_t worker_count(unsigned requested) {
  const std::size_t bound = uce::default_threads();
  if (requested == 0) return bound;
  if (std::getenv("UCE_THREADS")) return std::min<std::size_t>(requested, bound);
  return requested;
}

std::vector<std::pair<int, int>> parse_shapes(const char* text) {
  if (!text || !*text) return uce::small_rank_shapes();
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    int m = -1, n = -1;
    char comma = 0;
    std::istringstream is(item);
    if (!(is >> m >> comma >> n) || comma != ',' || m < 0 || n < 0) {
      throw uce::Error(uce::ErrorCode::InvalidArgument, "bad shape '" + item + "' (expected m,n)");
    }
    out.emplace_back(m, n);
  }
  return out;
}

std::vector<std::string> parse_checks(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

extern "C" {

const char* uce_version(void) { return "1.0.0"; }

const char* uce_status_name(uce_status status) {
  switch (status) {
    case UCE_OK: return "ok";
    case UCE_ERR_NULL_ARGUMENT: return "null-argument";
    case UCE_ERR_INTERNAL: return "internal-error";
    default:
      if (status >= UCE_ERR_SYNTAX && status <= UCE_ERR_IO) {
        return uce::error_code_name(static_cast<uce::ErrorCode>(status));
      }
      return "unknown";
  }
}

const char* uce_last_error(void) { return last_error.c_str(); }

void uce_string_free(char* s) { std::free(s); }

uce_status uce_algebra_parse(const char* text, uce_algebra** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new uce_algebra{uce::parse_algebra(text)}; });
}

uce_status uce_algebra_load(const char* path, uce_algebra** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new uce_algebra{uce::load_algebra(path)}; });
}

uce_status uce_algebra_builtin(const char* key, uce_algebra** out) {
  if (!key) return null_argument("key");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new uce_algebra{uce::corpus_algebra(key)}; });
}

void uce_algebra_free(uce_algebra* a) { delete a; }

uce_status uce_algebra_describe(const uce_algebra* a, char** json_out) {
  if (!a) return null_argument("algebra");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    const uce::SuperAlgebra& A = a->algebra;
    nlohmann::ordered_json j;
    j["domain"] = A.domain().name();
    j["rank"] = A.rank();
    j["unit"] = A.name(A.unit_index());
    j["basis"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < A.rank(); ++i) {
      j["basis"].push_back({{"name", A.name(i)}, {"parity", uce::bit(A.parity(i))}});
    }
    *json_out = dup(j.dump(2));
  });
}

uce_status uce_algebra_serialize(const uce_algebra* a, char** text_out) {
  if (!a) return null_argument("algebra");
  if (!text_out) return null_argument("text_out");
  return guarded([&] { *text_out = dup(uce::serialize_algebra(a->algebra)); });
}

uce_status uce_run_checks(const uce_algebra* a, const char* label, const char* shapes, const char* checks,
                          unsigned threads, int timing, char** json_out, int* all_pass) {
  if (!a) return null_argument("algebra");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    uce::SuiteConfig c;
    c.algebra = a->algebra;
    c.label = label ? label : "";
    c.shapes = parse_shapes(shapes);
    c.checks = parse_checks(checks);
    c.threads = worker_count(threads);
    c.timing = timing != 0;
    const uce::VerificationReport rep = uce::run_suite(c);
    *json_out = dup(rep.to_json());
    if (all_pass) *all_pass = rep.pass() ? 1 : 0;
  });
}

uce_status uce_h2(const uce_algebra* a, const char* label, int m, int n, const char* target,
                  unsigned threads, char** json_out, int* pass) {
  if (!target) return null_argument("target");
  const std::string t(target);
  if (t != "sl" && t != "st" && t != "st-sharp") {
    last_error = "unknown target '" + t + "' (use sl, st or st-sharp)";
    return UCE_ERR_INVALID_ARGUMENT;
  }
  const std::string shape = std::to_string(m) + "," + std::to_string(n);
  const std::string check = "h2-" + t;
  return uce_run_checks(a, label, shape.c_str(), check.c_str(), threads, 1, json_out, pass);
}

uce_status uce_cocycle_check(const uce_algebra* a, const char* variant, char** json_out, int* pass) {
  if (!a) return null_argument("algebra");
  if (!variant) return null_argument("variant");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    const uce::Variant v = uce::parse_variant(variant);
    const uce::PsiData p = uce::build_psi(v, a->algebra);
    const uce::ValidationReport rep = uce::check_super_2cocycle(p.sl.lie, p.psi);
    const uce::GradedModuleInvariants w = p.psi.target.invariants(a->algebra.domain());
    nlohmann::ordered_json j;
    j["variant"] = uce::variant_name(v);
    j["domain"] = a->algebra.domain().name();
    j["source_rank"] = p.sl.lie.rank();
    j["target"] = {{"even", {{"free", w.even.free_rank}, {"torsion", nlohmann::ordered_json::array()}}},
                   {"odd", {{"free", w.odd.free_rank}, {"torsion", nlohmann::ordered_json::array()}}}};
    for (const auto& t : w.even.torsion) j["target"]["even"]["torsion"].push_back(t.get_str());
    for (const auto& t : w.odd.torsion) j["target"]["odd"]["torsion"].push_back(t.get_str());
    j["pass"] = rep.pass;
    j["violations"] = rep.violations;
    *json_out = dup(j.dump(2));
    if (pass) *pass = rep.pass ? 1 : 0;
  });
}

}  // extern "C"
