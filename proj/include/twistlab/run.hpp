#pragma once

// Batch runner: configuration (file + command line), the verification
// suites, JSON reports and matrix dumps.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistlab/algebra.hpp"
#include "twistlab/carrier.hpp"
#include "twistlab/check_report.hpp"
#include "twistlab/error.hpp"
#include "twistlab/transcription.hpp"
#include "twistlab/twist.hpp"
#include "twistlab/verify.hpp"
#include "twistlab/yangian.hpp"

namespace twistlab {

inline constexpr const char* kVersion = "1.0.0";

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"hopf", "coproducts", "rmatrix", "classical", "yangian"};
  return names;
}

/// Exit status of a run.
enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitConfig = 2, kExitError = 3 };

/// One factor of a chain given in a configuration file.
struct CustomFactor {
  std::string kind;  // "jordanian" or "extension"
  std::vector<std::string> fields;
  std::size_t line = 0;
};

struct RunConfig {
  std::string algebra;                   // "so5" or "sl4"; may come from the chain prefix
  std::string chain;                     // preset tag or full name, "custom" or "none"
  std::vector<CustomFactor> factors;     // for chain = custom
  std::vector<std::string> suites;       // empty: every suite that applies
  bool h_mode = false;                   // also verify the cocycle identically in h
  std::vector<std::pair<Rational, Rational>> samples = {
      {Rational(2), Rational(3)}, {ratio(1, 2), ratio(5, 3)}, {Rational(-1), Rational(4)}};
  std::size_t sites = 3;
  std::size_t max_workspace = 625;
  std::string report;                    // empty: stdout
  std::string data_dir;                  // root holding coproducts/<chain>/*.txt
  std::size_t jobs = 1;
  bool negative_controls = true;
  bool timing = true;
  NegativeRootConvention negative_roots = NegativeRootConvention::kConjugateTranspose;

  /// "so5:BJEJ" etc. after validation.
  std::string chain_name() const {
    if (chain == "custom" || chain == "none") return algebra + ":" + chain;
    const std::string canon = canonical_preset(chain);
    return canon.find(':') == std::string::npos ? algebra + ":" + canon : canon;
  }
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

inline Rational parse_rational_field(const std::string& text, const std::string& source, std::size_t line) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw ParseError(source, line, "'" + text + "' is not a rational number");
  }
}

inline std::size_t parse_count(const std::string& text, const std::string& key, const std::string& source,
                               std::size_t line) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text[0] == '-')
    throw ParseError(source, line, key + ": expected a non-negative integer, got '" + text + "'");
  return v;
}

inline bool parse_bool(const std::string& text, const std::string& key, const std::string& source, std::size_t line) {
  if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
  if (text == "false" || text == "no" || text == "off" || text == "0") return false;
  throw ParseError(source, line, key + ": expected true or false, got '" + text + "'");
}

}  // namespace detail

/// "(u,v);(u,v);..." with exact rationals.
inline std::vector<std::pair<Rational, Rational>> parse_samples(const std::string& text,
                                                               const std::string& source = "--samples",
                                                               std::size_t line = 0) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const std::string& item : detail::split_list(text, ";")) {
    std::string s = item;
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
      throw ParseError(source, line, "sample '" + item + "' is not of the form (u,v)");
    const auto parts = detail::split_list(std::string_view(s).substr(1, s.size() - 2), ",");
    if (parts.size() != 2) throw ParseError(source, line, "sample '" + item + "' needs exactly two values");
    out.emplace_back(detail::parse_rational_field(parts[0], source, line),
                     detail::parse_rational_field(parts[1], source, line));
  }
  if (out.empty()) throw ParseError(source, line, "empty sample grid");
  return out;
}

/// Applies one key/value pair; shared by the config file and the CLI.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value, const std::string& source,
                          std::size_t line) {
  if (key == "algebra") {
    c.algebra = value;
  } else if (key == "chain") {
    c.chain = value;
  } else if (key == "suite" || key == "suites") {
    for (const auto& s : detail::split_list(value, ", ")) c.suites.push_back(s);
  } else if (key == "param") {
    if (value == "h")
      c.h_mode = true;
    else if (value == "none" || value == "1")
      c.h_mode = false;
    else
      throw ParseError(source, line, "param: expected 'h' or 'none', got '" + value + "'");
  } else if (key == "samples") {
    c.samples = parse_samples(value, source, line);
  } else if (key == "sites") {
    c.sites = detail::parse_count(value, key, source, line);
  } else if (key == "max-workspace") {
    c.max_workspace = detail::parse_count(value, key, source, line);
  } else if (key == "report") {
    c.report = value;
  } else if (key == "data") {
    c.data_dir = value;
  } else if (key == "jobs") {
    c.jobs = std::max<std::size_t>(1, detail::parse_count(value, key, source, line));
  } else if (key == "negative-controls") {
    c.negative_controls = detail::parse_bool(value, key, source, line);
  } else if (key == "timing") {
    c.timing = detail::parse_bool(value, key, source, line);
  } else if (key == "negative-roots") {
    if (value == "conjugate-transpose")
      c.negative_roots = NegativeRootConvention::kConjugateTranspose;
    else if (value == "cartan-dual")
      c.negative_roots = NegativeRootConvention::kCartanDual;
    else
      throw ParseError(source, line, "negative-roots: expected conjugate-transpose or cartan-dual");
  } else if (key == "factor") {
    auto fields = detail::split_list(value, "|");
    if (fields.empty()) throw ParseError(source, line, "factor: empty description");
    CustomFactor f{fields.front(), {fields.begin() + 1, fields.end()}, line};
    if (f.kind == "jordanian" && f.fields.size() != 2)
      throw ParseError(source, line, "factor: jordanian | CARTAN | E");
    else if (f.kind == "extension" && f.fields.size() != 3)
      throw ParseError(source, line, "factor: extension | A | B | E_perp");
    else if (f.kind != "jordanian" && f.kind != "extension")
      throw ParseError(source, line, "factor: unknown kind '" + f.kind + "'");
    c.factors.push_back(std::move(f));
  } else {
    throw ParseError(source, line, "unknown key '" + key + "'");
  }
}

/// Plain "key = value" lines; '#' comments. Later lines override earlier
/// ones except for the list-valued suite and factor keys.
inline RunConfig parse_config(std::istream& in, const std::string& source, RunConfig c = {}) {
  std::string raw;
  std::size_t n = 0;
  bool suites_seen = false;
  while (std::getline(in, raw)) {
    ++n;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string t = detail::trim(raw);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(source, n, "expected 'key = value'");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (value.empty()) throw ParseError(source, n, key + ": missing value");
    if ((key == "suite" || key == "suites") && !suites_seen) {
      c.suites.clear();
      suites_seen = true;
    }
    apply_setting(c, key, value, source, n);
  }
  return c;
}

inline RunConfig load_config(const std::filesystem::path& path, RunConfig c = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open config file");
  return parse_config(in, path.string(), std::move(c));
}

/// Rejects unknown names and fills the algebra from the chain prefix.
inline RunConfig validate_config(RunConfig c) {
  const std::string where = "config";
  if (c.chain.empty()) throw ParseError(where, 0, "chain: no chain given");
  const bool named = c.chain != "custom" && c.chain != "none";
  if (named) {
    const std::string canon = canonical_preset(c.chain);
    const bool full = canon.find(':') != std::string::npos;
    if (full) {
      const std::string alg = preset_algebra(canon);
      if (!c.algebra.empty() && c.algebra != alg)
        throw ParseError(where, 0, "chain " + c.chain + " does not belong to algebra " + c.algebra);
      c.algebra = alg;
    }
  }
  if (c.algebra != "so5" && c.algebra != "sl4")
    throw ParseError(where, 0, "algebra: expected sl4 or so5, got '" + c.algebra + "'");
  if (c.chain == "none") {
    if (!c.factors.empty()) throw ParseError(where, 0, "factor lines need chain = custom");
  } else if (c.chain == "custom") {
    if (c.factors.empty()) throw ParseError(where, 0, "chain = custom needs at least one factor line");
  } else {
    const std::string full = c.chain_name();
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), full) == names.end())
      throw ParseError(where, 0, "unknown chain '" + c.chain + "' for " + c.algebra);
    c.chain = full;
  }
  std::vector<std::string> suites;
  for (const auto& s : c.suites) {
    const auto& known = suite_names();
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw ParseError(where, 0, "unknown suite '" + s + "'");
    if (s == "yangian" && c.algebra != "so5")
      throw ParseError(where, 0, "suite yangian needs so(M); algebra is " + c.algebra);
    if (std::find(suites.begin(), suites.end(), s) == suites.end()) suites.push_back(s);
  }
  if (suites.empty())
    for (const auto& s : suite_names())
      if (s != "yangian" || c.algebra == "so5") suites.push_back(s);
  // canonical order keeps reports independent of how suites were listed
  std::vector<std::string> ordered;
  for (const auto& s : suite_names())
    if (std::find(suites.begin(), suites.end(), s) != suites.end()) ordered.push_back(s);
  c.suites = ordered;
  if (c.sites < 1) throw ParseError(where, 0, "sites: must be at least 1");
  return c;
}

/// The chain a validated config describes; `with_param` scales by h.
inline TwistChain build_chain(const RunConfig& c, const AlgebraRep& rep, bool with_param = false) {
  if (c.chain == "none") return TwistChain{c.chain_name(), {}};
  if (c.chain != "custom") return preset_chain(c.chain, with_param);
  SymbolTable symbols = SymbolTable::for_algebra(rep);
  TwistChain chain;
  chain.name = c.chain_name();
  for (const auto& f : c.factors) {
    if (f.kind == "jordanian") {
      if (!rep.is_cartan(f.fields[0]))
        throw ParseError("config", f.line, "'" + f.fields[0] + "' is not a Cartan generator of " + rep.name);
      chain.factors.push_back(jordanian(f.fields[0], parse_expr(f.fields[1], symbols, "config", f.line), with_param));
    } else {
      const Expr a = parse_expr(f.fields[0], symbols, "config", f.line);
      const Expr b = parse_expr(f.fields[1], symbols, "config", f.line);
      Expr e = parse_expr(f.fields[2], symbols, "config", f.line);
      chain.factors.push_back(extension({{a, b}}, sigma(with_param ? Expr::param() * e : e), with_param));
    }
  }
  return chain;
}

/// A check tagged with its suite.
struct SuiteEntry {
  std::string suite;
  CheckReport check;
};

struct Report {
  RunConfig config;
  std::vector<SuiteEntry> entries;
  std::vector<std::pair<std::string, double>> timing;  // suite -> seconds

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [s](const SuiteEntry& e) { return e.check.status == s; }));
  }
  std::size_t unexpected() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const SuiteEntry& e) { return !e.check.as_expected(); }));
  }
  int exit_code() const {
    bool failure = false;
    for (const auto& e : entries) {
      if (e.check.as_expected()) continue;
      if (e.check.status == Status::kError) return kExitError;
      failure = true;
    }
    return failure ? kExitFailure : kExitPass;
  }
};

/// Primitivity expectations for the presets: after EJ-type chains the
/// deformed carrier {H, E_B} is primitive. For BJ chains the check runs on
/// the inner stage (the chain without its leading Jordanian factor), which
/// is what makes the BJ factor a twist.
inline std::vector<std::pair<std::string, Expectation>> primitive_expectations(const std::string& chain) {
  if (chain == "so5:EJ" || chain == "so5:BJEJ") return {{"H_{1-2}", Expectation::kPass}, {"E_BO", Expectation::kPass}};
  if (chain == "sl4:E'EJ" || chain == "sl4:BJE'EJ") return {{"H_{23}", Expectation::kPass}, {"E_B", Expectation::kPass}};
  if (chain == "sl4:EJ") return {{"H_{23}", Expectation::kInformational}, {"E_B", Expectation::kInformational}};
  return {};
}

namespace detail {

inline bool has_bj_factor(const TwistChain& chain) {
  std::size_t jordanian = 0;
  for (const auto& f : chain.factors) jordanian += f.kind == TwistFactor::Kind::kJordanian;
  return jordanian > 1;
}

inline std::vector<CheckReport> hopf_suite(const RunConfig& c, const AlgebraRep& rep, const TwistChain& chain) {
  std::vector<CheckReport> out;
  if (c.chain != "custom" && c.chain != "none") {
    const CarrierValidation v = validate_carrier(rep, carrier_config(rep.name));
    for (CheckReport l : v.lines) {
      l.name = "carrier " + rep.name + ": " + l.name;
      out.push_back(std::move(l));
    }
  }
  out.push_back(check_cocycle(chain, rep));
  out.push_back(check_counit(chain, rep));
  if (c.h_mode) {
    CheckReport r;
    const std::string name = "cocycle[h] " + chain.name;
    const std::string anchor = "F12 (Delta x id)F = F23 (id x Delta)F in Q(i,r2)[h]";
    try {
      const TwistChain ch = build_chain(c, rep, true);
      const auto rho = promote(rep.rho());
      const auto delta = primitive_coproduct(rho);
      const PolyMatrix id = PolyMatrix::identity(rep.dim);
      const PolyMatrix f = evaluate_chain(ch, rho, rho);
      r = residual_check(name, anchor,
                         kron(f, id) * evaluate_chain(ch, delta, rho) - kron(id, f) * evaluate_chain(ch, rho, delta));
    } catch (const Error& e) {
      r = error_check(name, anchor, e.what());
    }
    out.push_back(std::move(r));
  }
  SymbolTable symbols = SymbolTable::for_algebra(rep);
  TwistChain stage = chain;
  if (has_bj_factor(chain)) {
    stage.factors.erase(stage.factors.begin());
    stage.name = chain.name.substr(0, chain.name.find(':') + 1) + (rep.name == "so5" ? "EJ" : "E'EJ");
  }
  for (const auto& [g, expectation] : primitive_expectations(chain.name)) {
    CheckReport r = check_primitive(stage, *symbols.find(g), rep, g);
    if (stage.name != chain.name) r.name += " (inner stage of " + chain.name + ")";
    r.expectation = expectation;
    out.push_back(std::move(r));
  }
  if (c.negative_controls) {
    try {
      const TwistChain bad = flip_extension_sign(chain);
      CheckReport r = check_cocycle(bad, rep);
      r.name = "negative control: " + r.name;
      r.expectation = Expectation::kFail;
      out.push_back(std::move(r));
    } catch (const LookupError&) {
      // no extension factor to corrupt
    }
  }
  return out;
}

inline std::vector<CheckReport> coproduct_suite(const RunConfig& c, const AlgebraRep& rep, const TwistChain& chain) {
  std::vector<CheckReport> out;
  if (c.chain == "custom" || c.chain == "none" || c.data_dir.empty()) return out;
  std::vector<ExpectedCoproduct> formulas;
  try {
    formulas = load_transcriptions(std::filesystem::path(c.data_dir) / "coproducts", chain.name);
  } catch (const ParseError& e) {
    out.push_back(error_check("transcriptions " + chain.name, c.data_dir, e.what()));
    return out;
  }
  EvaluatedTwist<FieldElem> f;
  try {
    f = evaluate_twist(chain, rep);
  } catch (const Error& e) {
    out.push_back(error_check("twist " + chain.name, "F", e.what()));
    return out;
  }
  for (const auto& x : formulas) {
    CheckReport r = compare_coproduct(f, chain, x, rep);
    if (x.long_formula) {
      r.expectation = Expectation::kInformational;
      const std::string conv = std::string("negative roots: ") + to_string(c.negative_roots);
      r.note = r.passed() ? "long formula reproduced; " + conv
                          : "long formula differs from F Delta(x) F^-1 (conjugation is ground truth); " + conv;
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<CheckReport> rmatrix_suite(const AlgebraRep& rep, const TwistChain& chain) {
  std::vector<CheckReport> out;
  FieldMatrix r;
  try {
    r = r_matrix(chain, rep);
  } catch (const Error& e) {
    out.push_back(error_check("R-matrix " + chain.name, "R_F = F21 F^-1", e.what()));
    return out;
  }
  out.push_back(boolean_check("unipotent R " + chain.name, "R_F - 1 nilpotent", is_unipotent(r)));
  out.push_back(check_qybe(r, chain.name));
  out.push_back(check_unitarity(r, chain.name));
  return out;
}

}  // namespace detail

/// h^1 coefficient of F from the first-order terms of each factor; the
/// truncated-series reference for classical_r.
inline FieldMatrix first_order_oracle(const TwistChain& chain_with_h, const AlgebraRep& rep) {
  const auto rho = promote(rep.rho());
  Evaluator<PolyParam> ev(rho);
  FieldMatrix out(rep.dim * rep.dim, rep.dim * rep.dim);
  for (const auto& f : chain_with_h.factors)
    for (const auto& [l, r] : f.summands) {
      const PolyMatrix lm = ev(l);
      const PolyMatrix rm = ev(r);
      // (l0 + h l1)(x)(r0 + h r1): the h^1 part of the exponent
      out += kron(coefficient(lm, 1), coefficient(rm, 0)) + kron(coefficient(lm, 0), coefficient(rm, 1));
    }
  return out;
}

namespace detail {

inline std::vector<CheckReport> classical_suite(const RunConfig& c, const AlgebraRep& rep) {
  std::vector<CheckReport> out;
  const std::string label = c.chain_name();
  try {
    const TwistChain chain = build_chain(c, rep, true);
    const ClassicalR cr = classical_r(chain, rep);
    CheckReport oracle = residual_check("first order " + label, "F = 1 + h F1 + ..., F1 from truncated series",
                                        cr.first_order - first_order_oracle(chain, rep));
    out.push_back(std::move(oracle));
    CheckReport skew = check_skew(cr.r, label);
    CheckReport cybe = check_cybe(cr.r, rep.dim, label);
    if (cr.degenerate) {
      skew.expectation = cybe.expectation = Expectation::kInformational;
      cybe.note = "chain has no h-dependence: r = 0";
    }
    out.push_back(std::move(skew));
    out.push_back(std::move(cybe));
  } catch (const Error& e) {
    out.push_back(error_check("classical r " + label, "F = 1 + 1/2 h r + ...", e.what()));
  }
  return out;
}

inline std::vector<CheckReport> yangian_suite(const RunConfig& c, const AlgebraRep& rep, const TwistChain& chain) {
  std::vector<CheckReport> out;
  std::vector<SpectralRMatrix> rs;
  rs.emplace_back(rep.dim);
  try {
    rs.push_back(twisted_yangian(chain, rep));
  } catch (const Error& e) {
    out.push_back(error_check("twisted R(u) " + chain.name, "F21 R(u) F^-1", e.what()));
  }
  for (const auto& r : rs) {
    for (const auto& [u, v] : c.samples) out.push_back(check_spectral_ybe(r, u, v));
    out.push_back(check_regularity(r));
    CheckReport unit = check_unitarity_scalar(r, c.samples.front().first);
    if (r.twisted()) unit.expectation = Expectation::kInformational;
    out.push_back(std::move(unit));
    const auto& [u, v] = c.samples.front();
    std::set<std::size_t> site_counts = {2, c.sites};
    for (std::size_t n : site_counts) out.push_back(check_transfer_commute(r, u, v, n, c.max_workspace));
  }
  return out;
}

}  // namespace detail

/// Executes the selected suites of a validated config.
inline Report run(const RunConfig& config) {
  Report report;
  report.config = config;
  const AlgebraRep rep = config.algebra == "so5" ? build_so5(config.negative_roots) : build_sl4();
  const TwistChain chain = build_chain(config, rep);

  auto run_suite = [&](const std::string& suite) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckReport> checks;
    if (suite == "hopf") checks = detail::hopf_suite(config, rep, chain);
    if (suite == "coproducts") checks = detail::coproduct_suite(config, rep, chain);
    if (suite == "rmatrix") checks = detail::rmatrix_suite(rep, chain);
    if (suite == "classical") checks = detail::classical_suite(config, rep);
    if (suite == "yangian") checks = detail::yangian_suite(config, rep, chain);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::make_pair(std::move(checks), secs);
  };

  std::vector<std::pair<std::vector<CheckReport>, double>> results(config.suites.size());
  if (config.jobs <= 1) {
    for (std::size_t k = 0; k < config.suites.size(); ++k) results[k] = run_suite(config.suites[k]);
  } else {
    for (std::size_t begin = 0; begin < config.suites.size(); begin += config.jobs) {
      const std::size_t end = std::min(config.suites.size(), begin + config.jobs);
      std::vector<std::future<std::pair<std::vector<CheckReport>, double>>> pending;
      for (std::size_t k = begin; k < end; ++k)
        pending.push_back(std::async(std::launch::async, run_suite, config.suites[k]));
      for (std::size_t k = begin; k < end; ++k) results[k] = pending[k - begin].get();
    }
  }
  for (std::size_t k = 0; k < config.suites.size(); ++k) {
    for (auto& c : results[k].first) report.entries.push_back({config.suites[k], std::move(c)});
    report.timing.emplace_back(config.suites[k], results[k].second);
  }
  return report;
}

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["status"] = to_string(r.status);
  j["expectation"] = to_string(r.expectation);
  j["as_expected"] = r.as_expected();
  j["residual"] = r.residual;
  if (r.witness)
    j["witness"] = {{"row", r.witness->row}, {"col", r.witness->col}, {"value", r.witness->value}};
  else
    j["witness"] = nullptr;
  j["anchor"] = r.anchor;
  j["note"] = r.note;
  return j;
}

inline nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["algebra"] = c.algebra;
  j["chain"] = c.chain_name();
  if (c.chain == "custom") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : c.factors) {
      std::string s = f.kind;
      for (const auto& x : f.fields) s += " | " + x;
      arr.push_back(s);
    }
    j["factors"] = arr;
  }
  j["suites"] = c.suites;
  j["param"] = c.h_mode ? "h" : "none";
  auto samples = nlohmann::ordered_json::array();
  for (const auto& [u, v] : c.samples) samples.push_back({u.get_str(), v.get_str()});
  j["samples"] = samples;
  j["sites"] = c.sites;
  j["max_workspace"] = c.max_workspace;
  j["negative_roots"] = to_string(c.negative_roots);
  j["negative_controls"] = c.negative_controls;
  return j;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["tool"] = "twistlab";
  j["version"] = kVersion;
  j["config"] = config_json(r.config);
  auto checks = nlohmann::ordered_json::array();
  for (const auto& e : r.entries) {
    nlohmann::ordered_json c;
    c["suite"] = e.suite;
    c.update(to_json(e.check));
    checks.push_back(c);
  }
  j["checks"] = checks;
  std::size_t expected_fail = 0;
  std::size_t informational = 0;
  for (const auto& e : r.entries) {
    expected_fail += e.check.expectation == Expectation::kFail && e.check.as_expected();
    informational += e.check.expectation == Expectation::kInformational;
  }
  j["summary"] = {{"total", r.entries.size()},
                  {"pass", r.count(Status::kPass)},
                  {"fail", r.count(Status::kFail)},
                  {"error", r.count(Status::kError)},
                  {"expected_fail", expected_fail},
                  {"informational", informational},
                  {"unexpected", r.unexpected()},
                  {"exit_code", r.exit_code()}};
  if (r.config.timing) {
    nlohmann::ordered_json t;
    for (const auto& [suite, secs] : r.timing) t[suite] = secs;
    j["timing"] = t;
  }
  return j;
}

// ---------------------------------------------------------------------------
// dumps

/// Header plus one "row col value" line per nonzero entry, 0-based.
inline void write_dump(std::ostream& out, const FieldMatrix& m, const std::string& title) {
  out << "# " << title << "\n";
  out << "dims " << m.rows() << " " << m.cols() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out << i << " " << j << " " << m(i, j).to_canonical() << "\n";
}

inline FieldMatrix read_dump(std::istream& in, const std::string& source = "<dump>") {
  std::string line;
  std::size_t n = 0;
  std::optional<FieldMatrix> m;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!m) {
      std::string tag;
      std::size_t r = 0, c = 0;
      if (!(ls >> tag >> r >> c) || tag != "dims") throw ParseError(source, n, "expected 'dims ROWS COLS'");
      m.emplace(r, c);
      continue;
    }
    std::size_t i = 0, j = 0;
    if (!(ls >> i >> j)) throw ParseError(source, n, "expected 'row col value'");
    std::string rest;
    std::getline(ls, rest);
    if (i >= m->rows() || j >= m->cols()) throw ParseError(source, n, "entry outside the matrix");
    try {
      (*m)(i, j) = FieldElem::parse_canonical(detail::trim(rest));
    } catch (const std::exception& e) {
      throw ParseError(source, n, e.what());
    }
  }
  if (!m) throw ParseError(source, n, "missing dims header");
  return *m;
}

/// twist-matrix | coproduct <gen> | rmatrix | density.
inline FieldMatrix dump_matrix(const RunConfig& c, const std::string& what, const std::string& argument = {}) {
  const AlgebraRep rep = c.algebra == "so5" ? build_so5(c.negative_roots) : build_sl4();
  const TwistChain chain = build_chain(c, rep);
  if (what == "twist-matrix") return evaluate_twist(chain, rep).twist;
  if (what == "rmatrix") return r_matrix(chain, rep);
  if (what == "density") {
    if (c.algebra != "so5") throw LookupError("density needs so(M); algebra is " + c.algebra);
    return hamiltonian_density(chain, rep);
  }
  if (what == "coproduct") {
    if (argument.empty()) throw LookupError("coproduct dump needs a generator name");
    SymbolTable symbols = SymbolTable::for_algebra(rep);
    const Expr* x = symbols.find(argument);
    if (!x) throw LookupError("unknown generator '" + argument + "' for " + rep.name);
    return twisted_coproduct(chain, *x, rep);
  }
  throw LookupError("unknown dump target '" + what + "' (twist-matrix, coproduct, rmatrix, density)");
}

}  // namespace twistlab
