#include "uce/algebra_text.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace uce {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

[[noreturn]] void syntax(std::size_t line, std::size_t column, const std::string& msg,
                         const std::string& token) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << msg;
  if (!token.empty()) os << " '" << token << "'";
  throw Error(ErrorCode::SyntaxError, os.str());
}

// Splits on whitespace; '=', '+' and '*' are separate tokens.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '=' || c == '+' || c == '*') {
      out.push_back({std::string(1, c), i + 1});
      ++i;
    } else {
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
             line[j] != '=' && line[j] != '+' && line[j] != '*') {
        ++j;
      }
      out.push_back({line.substr(i, j - i), i + 1});
      i = j;
    }
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.')) {
      return false;
    }
  }
  return true;
}

}  // namespace

SuperAlgebra parse_algebra(std::string_view text) {
  std::optional<Domain> domain;
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  std::vector<Parity> parity;
  std::optional<std::size_t> unit;
  struct Product {
    std::size_t line, column, i, j;
    std::vector<std::pair<Scalar, std::size_t>> terms;
  };
  std::vector<Product> products;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  auto lookup = [&](const Token& t) {
    auto it = index.find(t.text);
    if (it == index.end()) syntax(lineno, t.column, "undeclared basis name", t.text);
    return it->second;
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tok = tokenize(raw);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;
    if (kw == "ring") {
      if (domain) syntax(lineno, tok[0].column, "duplicate", "ring");
      if (tok.size() != 2) syntax(lineno, tok[0].column, "expected 'ring <K>'", "");
      try {
        domain = Domain::parse(tok[1].text);
      } catch (const Error& e) {
        syntax(lineno, tok[1].column, e.what(), tok[1].text);
      }
    } else if (kw == "basis") {
      if (!names.empty()) syntax(lineno, tok[0].column, "duplicate", "basis");
      if (tok.size() < 2) syntax(lineno, tok[0].column, "empty basis", "");
      for (std::size_t k = 1; k < tok.size(); ++k) {
        if (!valid_name(tok[k].text)) syntax(lineno, tok[k].column, "bad basis name", tok[k].text);
        if (index.count(tok[k].text)) syntax(lineno, tok[k].column, "repeated basis name", tok[k].text);
        index[tok[k].text] = names.size();
        names.push_back(tok[k].text);
      }
      parity.assign(names.size(), Parity::Even);
    } else if (kw == "parity") {
      if (tok.size() != 3) syntax(lineno, tok[0].column, "expected 'parity <name> 0|1'", "");
      const std::size_t i = lookup(tok[1]);
      if (tok[2].text == "0") {
        parity[i] = Parity::Even;
      } else if (tok[2].text == "1") {
        parity[i] = Parity::Odd;
      } else {
        syntax(lineno, tok[2].column, "parity must be 0 or 1, got", tok[2].text);
      }
    } else if (kw == "unit") {
      if (tok.size() != 2) syntax(lineno, tok[0].column, "expected 'unit <name>'", "");
      if (unit) syntax(lineno, tok[0].column, "duplicate", "unit");
      unit = lookup(tok[1]);
    } else if (kw == "mul") {
      if (!domain) syntax(lineno, tok[0].column, "'ring' must precede", "mul");
      if (tok.size() < 5 || tok[3].text != "=") {
        syntax(lineno, tok[0].column, "expected 'mul <a> <b> = <terms>'", "");
      }
      Product p{lineno, tok[0].column, lookup(tok[1]), lookup(tok[2]), {}};
      if (auto [it, fresh] = seen.emplace(std::make_pair(p.i, p.j), lineno); !fresh) {
        syntax(lineno, tok[1].column, "product already defined on line " +
                                          std::to_string(it->second) + " for",
               tok[1].text + " " + tok[2].text);
      }
      std::size_t k = 4;
      for (;;) {
        if (k >= tok.size()) syntax(lineno, tok.back().column, "missing term after", tok.back().text);
        if (k + 2 < tok.size() && tok[k + 1].text == "*") {
          Scalar c;
          try {
            c = domain->parse_literal(tok[k].text);
          } catch (const Error& e) {
            syntax(lineno, tok[k].column, e.what(), tok[k].text);
          }
          p.terms.emplace_back(c, lookup(tok[k + 2]));
          k += 3;
        } else if (tok[k].text == "0") {
          k += 1;
        } else {
          if (tok[k].text == "+" || tok[k].text == "*" || tok[k].text == "=") {
            syntax(lineno, tok[k].column, "unexpected", tok[k].text);
          }
          p.terms.emplace_back(Scalar(1), lookup(tok[k]));
          k += 1;
        }
        if (k == tok.size()) break;
        if (tok[k].text != "+") syntax(lineno, tok[k].column, "expected '+', got", tok[k].text);
        ++k;
      }
      products.push_back(std::move(p));
    } else {
      syntax(lineno, tok[0].column, "unknown directive", kw);
    }
  }
  if (!domain) syntax(lineno + 1, 1, "missing 'ring' line", "");
  if (names.empty()) syntax(lineno + 1, 1, "missing 'basis' line", "");
  if (!unit) syntax(lineno + 1, 1, "missing 'unit' line", "");

  const std::size_t n = names.size();
  std::vector<std::vector<SparseVec>> mul(n, std::vector<SparseVec>(n));
  for (auto& p : products) {
    std::vector<Entry> terms;
    for (auto& [c, k] : p.terms) terms.push_back(Entry{static_cast<std::uint32_t>(k), c});
    mul[p.i][p.j] = vec::from_terms(*domain, std::move(terms));
  }
  SuperAlgebra a(*domain, names, parity, *unit, std::move(mul));
  ValidationReport rep = validate_superalgebra(a);
  if (!rep.pass) {
    throw Error(ErrorCode::ValidationError, "algebra fails validation: " + rep.violations.front());
  }
  return a;
}

SuperAlgebra load_algebra(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_algebra(ss.str());
}

std::string serialize_algebra(const SuperAlgebra& a) {
  std::ostringstream os;
  const Domain& d = a.domain();
  os << "ring " << d.name() << "\n";
  os << "basis";
  for (const auto& n : a.names()) os << " " << n;
  os << "\n";
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a.parity(i) == Parity::Odd) os << "parity " << a.name(i) << " 1\n";
  }
  os << "unit " << a.name(a.unit_index()) << "\n";
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < a.rank(); ++j) {
      const SparseVec& p = a.product(i, j);
      if (p.empty()) continue;
      os << "mul " << a.name(i) << " " << a.name(j) << " =";
      bool first = true;
      for (const auto& e : p) {
        os << (first ? " " : " + ");
        first = false;
        if (e.value != 1) os << d.format(e.value) << "*";
        os << a.name(e.index);
      }
      os << "\n";
    }
  }
  return os.str();
}

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> corpus = {
      {"Z", "integers", "ring Z\nbasis 1\nunit 1\nmul 1 1 = 1\n"},
      {"Q", "rationals", "ring Q\nbasis 1\nunit 1\nmul 1 1 = 1\n"},
      {"GF2", "field with two elements", "ring GF(2)\nbasis 1\nunit 1\nmul 1 1 = 1\n"},
      {"GF3", "field with three elements", "ring GF(3)\nbasis 1\nunit 1\nmul 1 1 = 1\n"},
      {"Z4", "integers mod 4", "ring Z/4\nbasis 1\nunit 1\nmul 1 1 = 1\n"},
      {"Q[eps]", "dual numbers, eps even, eps^2 = 0",
       "ring Q\nbasis 1 eps\nunit 1\nmul 1 1 = 1\nmul 1 eps = eps\nmul eps 1 = eps\n"},
      {"Z[eps]", "dual numbers over Z",
       "ring Z\nbasis 1 eps\nunit 1\nmul 1 1 = 1\nmul 1 eps = eps\nmul eps 1 = eps\n"},
      {"GF2[theta]", "Grassmann algebra on one odd generator over GF(2)",
       "ring GF(2)\nbasis 1 theta\nparity theta 1\nunit 1\n"
       "mul 1 1 = 1\nmul 1 theta = theta\nmul theta 1 = theta\n"},
      {"Q[theta]", "Grassmann algebra on one odd generator over Q",
       "ring Q\nbasis 1 theta\nparity theta 1\nunit 1\n"
       "mul 1 1 = 1\nmul 1 theta = theta\nmul theta 1 = theta\n"},
      {"Z[theta]", "Grassmann algebra on one odd generator over Z",
       "ring Z\nbasis 1 theta\nparity theta 1\nunit 1\n"
       "mul 1 1 = 1\nmul 1 theta = theta\nmul theta 1 = theta\n"},
      {"Z[C2]", "group algebra of the cyclic group of order 2",
       "ring Z\nbasis 1 g\nunit 1\nmul 1 1 = 1\nmul 1 g = g\nmul g 1 = g\nmul g g = 1\n"},
  };
  return corpus;
}

SuperAlgebra corpus_algebra(const std::string& key) {
  for (const auto& e : builtin_corpus()) {
    if (e.key == key) return parse_algebra(e.source);
  }
  throw Error(ErrorCode::InvalidArgument, "no corpus algebra named '" + key + "'");
}

}  // namespace uce
