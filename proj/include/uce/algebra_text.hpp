#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "uce/superalg.hpp"

namespace uce {

/// Parses the line-oriented algebra format:
///
///   ring Z|Q|GF(p)|Z/m
///   basis <name>+
///   parity <name> 0|1
///   unit <name>
///   mul <name> <name> = <term> (+ <term>)*     term: [<coeff>*]<name> | 0
///
/// `#` starts a comment. Syntax errors report line and column; the parsed
/// algebra must pass validate_superalgebra (validation-error otherwise).
SuperAlgebra parse_algebra(std::string_view text);
SuperAlgebra load_algebra(const std::string& path);
std::string serialize_algebra(const SuperAlgebra& a);

/// Built-in corpus entry.
struct CorpusEntry {
  std::string key;
  std::string description;
  std::string source;
};
const std::vector<CorpusEntry>& builtin_corpus();
SuperAlgebra corpus_algebra(const std::string& key);

}  // namespace uce
