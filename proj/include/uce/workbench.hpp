#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uce/exactlin.hpp"
#include "uce/superalg.hpp"

namespace uce {

/// Closed-form value of an H₂ or kernel check, instantiated for one A.
struct Expected {
  std::string formula;  // e.g. "HC1 + A2^4 + A0^2"
  GradedModuleInvariants value;
};

struct CheckResult {
  std::string check;
  int m = 0, n = 0;
  std::optional<Expected> expected;
  std::optional<GradedModuleInvariants> computed;
  bool pass = false;
  double millis = 0;
  std::string detail;
};

struct VerificationReport {
  std::string version;
  std::string domain;
  std::string algebra;
  std::vector<CheckResult> results;

  bool pass() const;
  std::string to_json(int indent = 2) const;
};

struct SuiteConfig {
  SuperAlgebra algebra;
  std::string label;
  std::vector<std::pair<int, int>> shapes;
  std::vector<std::string> checks;  // empty = all that apply
  std::size_t threads = 1;
  bool timing = true;  // false: millis reported as 0 (byte-stable reports)
};

/// h2-sl, h2-st, h2-st-sharp, hc1, presentation, identities, decomposition,
/// membership, cocycle, uce-compare.
const std::vector<std::string>& known_checks();
/// (2,1), (3,1), (2,2), (3,0), (4,0).
std::vector<std::pair<int, int>> small_rank_shapes();

/// HC₁(A): the Connes complex over ℚ, otherwise ker(st(3,2,A) → sl).
GradedModuleInvariants hc1_value(const SuperAlgebra& a, std::size_t threads = 1);

/// Closed form for H₂ of sl ("sl"), st ("st") or st♯ ("st-sharp"), if the
/// shape has a table row. `hc1` is used for the sl rows.
std::optional<Expected> expected_h2(const std::string& target, int m, int n, const SuperAlgebra& a,
                                    const GradedModuleInvariants& hc1);

/// H₂ of sl, st or st♯ (st-sharp only for (3,1) and (2,2)).
GradedModuleInvariants compute_h2(const std::string& target, int m, int n, const SuperAlgebra& a,
                                  std::size_t threads = 1);

/// Runs every selected check on every shape it applies to; errors are
/// recorded in the result, never thrown.
VerificationReport run_suite(const SuiteConfig& config);

std::string format_invariants(const GradedModuleInvariants& g);

}  // namespace uce
