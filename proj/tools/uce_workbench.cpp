// uce-workbench: command-line front end over the C API.
//
//   uce-workbench parse <file>
//   uce-workbench h2 --algebra <file> --m 2 --n 2 --target sl --report out.json
//   uce-workbench verify --algebra <file> --suite small-rank --report out.json
//   uce-workbench cocycle-check --algebra <file> --variant 3,1
//
// --algebra also accepts builtin:KEY (see `uce-workbench corpus`).
// Exit status: 0 all checks pass, 1 some check failed, 2 usage/input error.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "uce/uce_c.h"

namespace {

constexpr int kFail = 1;
constexpr int kError = 2;

struct AlgebraDeleter {
  void operator()(uce_algebra* a) const { uce_algebra_free(a); }
};
using AlgebraPtr = std::unique_ptr<uce_algebra, AlgebraDeleter>;

// Takes ownership of a C string from the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  uce_string_free(s);
  return out;
}

int report_error(uce_status st) {
  std::cerr << "error [" << uce_status_name(st) << "]: " << uce_last_error() << "\n";
  return kError;
}

const char* kBuiltinPrefix = "builtin:";

std::string label_of(const std::string& spec) {
  if (spec.rfind(kBuiltinPrefix, 0) == 0) return spec.substr(std::strlen(kBuiltinPrefix));
  return std::filesystem::path(spec).stem().string();
}

uce_status open_algebra(const std::string& spec, AlgebraPtr& out) {
  uce_algebra* raw = nullptr;
  const uce_status st = spec.rfind(kBuiltinPrefix, 0) == 0
                            ? uce_algebra_builtin(spec.c_str() + std::strlen(kBuiltinPrefix), &raw)
                            : uce_algebra_load(spec.c_str(), &raw);
  out.reset(raw);
  return st;
}

bool write_report(const std::string& path, const std::string& json) {
  if (path.empty()) return true;
  if (path == "-") {
    std::cout << json << "\n";
    return true;
  }
  std::ofstream f(path);
  f << json << "\n";
  if (!f) {
    std::cerr << "error: cannot write report to " << path << "\n";
    return false;
  }
  return true;
}

std::string component(const nlohmann::json& c) {
  std::string s;
  if (c["free"].get<long>() > 0) s = "free " + std::to_string(c["free"].get<long>());
  if (!c["torsion"].empty()) {
    s += s.empty() ? "torsion (" : " + torsion (";
    bool first = true;
    for (const auto& t : c["torsion"]) {
      s += (first ? "" : ",") + (t.is_string() ? t.get<std::string>() : std::to_string(t.get<long>()));
      first = false;
    }
    s += ")";
  }
  return s.empty() ? "0" : s;
}

std::string invariants(const nlohmann::json& g) {
  if (g.is_null()) return "-";
  const std::string e = component(g["even"]), o = component(g["odd"]);
  if (e == "0" && o == "0") return "0";
  return "even " + e + "; odd " + o;
}

// One line per result; returns the overall verdict.
bool print_results(const std::string& json, bool quiet) {
  const auto j = nlohmann::json::parse(json);
  bool all = true;
  for (const auto& r : j["results"]) {
    const bool pass = r["pass"].get<bool>();
    all = all && pass;
    if (quiet && pass) continue;
    std::string line = std::string(pass ? "PASS " : "FAIL ") + r["check"].get<std::string>() + " (" +
                       std::to_string(r["m"].get<int>()) + "," + std::to_string(r["n"].get<int>()) + ")";
    if (!r["computed"].is_null()) line += "  computed: " + invariants(r["computed"]);
    if (!r["expected"].is_null()) {
      line += "  expected " + r["expected"]["formula"].get<std::string>() + " = " + invariants(r["expected"]);
    }
    if (r.contains("detail")) line += "  [" + r["detail"].get<std::string>() + "]";
    line += "  " + std::to_string(r["millis"].get<long>()) + " ms";
    std::cout << line << "\n";
  }
  std::cout << (all ? "all checks passed" : "some checks FAILED") << " (" << j["results"].size()
            << " results, " << j["domain"].get<std::string>() << ")\n";
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal central extensions of matrix Lie superalgebras: exact H2 computations and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(uce_version()));
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = UCE_THREADS or hardware concurrency)");

  std::string algebra, report;
  bool quiet = false;

  auto* parse = app.add_subcommand("parse", "parse and validate an algebra file, print its description");
  std::string parse_file;
  bool print_canonical = false;
  parse->add_option("file", parse_file, "algebra file or builtin:KEY")->required();
  parse->add_flag("--canonical", print_canonical, "print the serialized canonical form instead");

  app.add_subcommand("corpus", "list the built-in algebras");

  auto* h2 = app.add_subcommand("h2", "second homology of sl, st or st-sharp");
  int m = 0, n = 0;
  std::string target = "sl";
  h2->add_option("--algebra", algebra, "algebra file or builtin:KEY")->required();
  h2->add_option("--m", m, "even size")->required()->check(CLI::NonNegativeNumber);
  h2->add_option("--n", n, "odd size")->required()->check(CLI::NonNegativeNumber);
  h2->add_option("--target", target, "sl | st | st-sharp")->check(CLI::IsMember({"sl", "st", "st-sharp"}));
  h2->add_option("--report", report, "write the JSON report here ('-' = stdout)");

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::string suite = "small-rank", shapes, checks;
  bool no_timing = false;
  verify->add_option("--algebra", algebra, "algebra file or builtin:KEY")->required();
  verify->add_option("--suite", suite, "small-rank")->check(CLI::IsMember({"small-rank"}));
  verify->add_option("--shapes", shapes, "override shapes, e.g. \"2,1;3,1\"");
  verify->add_option("--checks", checks, "comma list of check ids (default: all that apply)");
  verify->add_option("--report", report, "write the JSON report here ('-' = stdout)");
  verify->add_flag("--no-timing", no_timing, "report millis as 0 (byte-stable output)");
  verify->add_flag("-q,--quiet", quiet, "print failing results only");

  auto* cocycle = app.add_subcommand("cocycle-check", "cocycle axioms for the (3,1) or (2,2) cocycle");
  std::string variant;
  cocycle->add_option("--algebra", algebra, "algebra file or builtin:KEY")->required();
  cocycle->add_option("--variant", variant, "3,1 | 2,2")->required();
  cocycle->add_option("--report", report, "write the JSON result here ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("corpus")) {
    for (const char* key : {"Z", "Q", "GF2", "GF3", "Z4", "Q[eps]", "Z[eps]", "GF2[theta]", "Q[theta]", "Z[theta]",
                            "Z[C2]"}) {
      AlgebraPtr a;
      if (open_algebra(std::string(kBuiltinPrefix) + key, a) != UCE_OK) continue;
      char* desc = nullptr;
      uce_algebra_describe(a.get(), &desc);
      const auto j = nlohmann::json::parse(take(desc));
      std::cout << "builtin:" << key << "  " << j["domain"].get<std::string>() << ", rank " << j["rank"] << "\n";
    }
    return 0;
  }

  if (parse->parsed()) {
    AlgebraPtr a;
    if (uce_status st = open_algebra(parse_file, a); st != UCE_OK) return report_error(st);
    char* out = nullptr;
    const uce_status st = print_canonical ? uce_algebra_serialize(a.get(), &out) : uce_algebra_describe(a.get(), &out);
    if (st != UCE_OK) return report_error(st);
    std::cout << take(out) << "\n";
    return 0;
  }

  AlgebraPtr a;
  if (uce_status st = open_algebra(algebra, a); st != UCE_OK) return report_error(st);
  const std::string label = label_of(algebra);
  char* out = nullptr;
  int pass = 0;

  if (h2->parsed()) {
    const uce_status st = uce_h2(a.get(), label.c_str(), m, n, target.c_str(), threads, &out, &pass);
    if (st != UCE_OK) return report_error(st);
    const std::string json = take(out);
    if (!write_report(report, json)) return kError;
    if (report != "-") print_results(json, false);
    return pass ? 0 : kFail;
  }

  if (verify->parsed()) {
    const uce_status st = uce_run_checks(a.get(), label.c_str(), shapes.c_str(), checks.c_str(), threads,
                                         no_timing ? 0 : 1, &out, &pass);
    if (st != UCE_OK) return report_error(st);
    const std::string json = take(out);
    if (!write_report(report, json)) return kError;
    if (report != "-") print_results(json, quiet);
    return pass ? 0 : kFail;
  }

  if (cocycle->parsed()) {
    const uce_status st = uce_cocycle_check(a.get(), variant.c_str(), &out, &pass);
    if (st != UCE_OK) return report_error(st);
    const std::string json = take(out);
    if (!write_report(report, json)) return kError;
    if (report != "-") {
      const auto j = nlohmann::json::parse(json);
      std::cout << (pass ? "PASS" : "FAIL") << " psi_" << j["variant"].get<std::string>() << " over "
                << label << ": target W = " << invariants(j["target"]) << "\n";
      for (const auto& v : j["violations"]) std::cout << "  " << v.get<std::string>() << "\n";
    }
    return pass ? 0 : kFail;
  }
  return kError;
}
