#pragma once

// Reader for transcribed coproduct formulas.
//
// A transcription file is line oriented; '#' starts a comment.
//
//   chain:     so5:BJEJ
//   generator: E_2                      label of x; also its expression unless
//   element:   E_{1-2} + ...            an element line gives one
//   long:      true                     optional, marks the long formulas
//   source:    free text                optional caption
//   term:      LEFT (x) RIGHT           one summand per line, any number
//
// Expression grammar (both tensor legs):
//
//   expr    := [+|-] product {(+|-) product}
//   product := power {[*] power}              juxtaposition multiplies
//   power   := primary [^ INT | ^{INT}]
//   primary := INT [/ INT] | ident | i | r2 | ( expr )
//            | exp( expr ) | log1p( expr ) | sigma[ expr ]
//   ident   := letters digits [ _ (alnum... | {...}) ]
//
// Identifiers resolve against the algebra's generators (E_12 and E_{12}
// are the same name) and a macro table: E_BO / E_B for the deformed
// generator, sigma_X for ln(1 + E_X). The tensor sign is "(x)" or U+2297.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twistlab/algebra.hpp"
#include "twistlab/carrier.hpp"
#include "twistlab/error.hpp"
#include "twistlab/expr.hpp"
#include "twistlab/twist.hpp"
#include "twistlab/verify.hpp"

namespace twistlab {

/// Names an expression may refer to.
class SymbolTable {
 public:
  SymbolTable() = default;

  /// Generators of `rep` plus its deformed carrier generator (E_BO for
  /// so5, E_B for sl4) when a carrier configuration exists.
  static SymbolTable for_algebra(const AlgebraRep& rep) {
    SymbolTable t;
    for (const auto& [name, m] : rep.gens) t.define(name, gen(name));
    const CarrierConfig c = carrier_config(rep.name);
    const Expr deformed = deformed_generator(rep, c);
    if (rep.name == "so5") {
      t.define("E_BO", deformed);
      t.define("E_{BO}", deformed);
    } else {
      t.define("E_B", deformed);
    }
    return t;
  }

  void define(const std::string& name, Expr e) { symbols_.insert_or_assign(name, std::move(e)); }

  const Expr* find(const std::string& name) const {
    for (const std::string& n : spellings(name))
      if (auto it = symbols_.find(n); it != symbols_.end()) return &it->second;
    return nullptr;
  }

  /// sigma_X = ln(1 + E_X) for any resolvable E_X.
  const Expr* find_sigma(const std::string& suffix) {
    if (auto it = sigmas_.find(suffix); it != sigmas_.end()) return &it->second;
    const Expr* base = find("E_" + suffix);
    if (!base) return nullptr;
    return &sigmas_.emplace(suffix, sigma(*base)).first->second;
  }

 private:
  // X_{ab} <-> X_ab
  static std::vector<std::string> spellings(const std::string& name) {
    std::vector<std::string> out = {name};
    const auto us = name.find('_');
    if (us == std::string::npos) return out;
    const std::string head = name.substr(0, us + 1);
    const std::string tail = name.substr(us + 1);
    if (tail.size() >= 2 && tail.front() == '{' && tail.back() == '}')
      out.push_back(head + tail.substr(1, tail.size() - 2));
    else
      out.push_back(head + "{" + tail + "}");
    return out;
  }

  std::map<std::string, Expr> symbols_;
  std::map<std::string, Expr> sigmas_;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, SymbolTable& symbols, std::string source, std::size_t line)
      : text_(text), symbols_(symbols), source_(std::move(source)), line_(line) {}

  Expr parse_all() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_, line_, what + " at column " + std::to_string(pos_ + 1));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Expr e = product();
    if (negate) e = -e;
    for (;;) {
      if (accept('+'))
        e = e + product();
      else if (accept('-'))
        e = e - product();
      else
        return e;
    }
  }

  bool starts_primary() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  Expr product() {
    Expr e = power();
    for (;;) {
      if (accept('*')) {
        e = e * power();
      } else if (starts_primary()) {
        e = e * power();
      } else {
        return e;
      }
    }
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    const bool braced = accept('{');
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    const unsigned k = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    if (braced) expect('}');
    return twistlab::power(base, k);
  }

  Rational integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Rational(std::string(text_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (text_.substr(start, pos_ - start) == "log" && text_.substr(pos_, 2) == "1p") {
      pos_ += 2;
      return "log1p";
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '_') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '{') {
        const auto close = text_.find('}', pos_);
        if (close == std::string_view::npos) fail("unterminated '{' in identifier");
        pos_ = close + 1;
      } else {
        const std::size_t tail = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (tail == pos_) fail("empty identifier suffix");
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q = integer();
      if (accept('/')) {
        skip_space();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected a denominator");
        const Rational d = integer();
        if (sgn(d) == 0) fail("zero denominator");
        q /= d;
      }
      q.canonicalize();
      return Expr::scalar(FieldElem(q));
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    const std::size_t at = pos_;
    const std::string name = identifier();
    if (name == "exp" || name == "log1p") {
      expect('(');
      Expr arg = expr();
      expect(')');
      return name == "exp" ? exp(arg) : log1p(arg);
    }
    if (name == "sigma" && peek('[')) {
      expect('[');
      Expr arg = expr();
      expect(']');
      return sigma(arg);
    }
    if (name == "i") return Expr::scalar(FieldElem::i());
    if (name == "r2") return Expr::scalar(FieldElem::sqrt2());
    if (const Expr* e = symbols_.find(name)) return *e;
    if (name.rfind("sigma_", 0) == 0) {
      if (const Expr* s = symbols_.find_sigma(name.substr(6))) return *s;
    }
    pos_ = at;
    fail("unknown symbol '" + name + "'");
  }

  std::string_view text_;
  SymbolTable& symbols_;
  std::string source_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Splits at the single top-level tensor sign.
inline std::pair<std::string, std::string> split_tensor(const std::string& text, const std::string& source,
                                                        std::size_t line) {
  static const std::vector<std::string> signs = {"(x)", "\xE2\x8A\x97"};
  int depth = 0;
  std::size_t at = std::string::npos;
  std::size_t width = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    bool matched = false;
    if (depth == 0) {
      for (const auto& s : signs) {
        if (text.compare(k, s.size(), s) == 0) {
          if (at != std::string::npos) throw ParseError(source, line, "more than one tensor sign in term");
          at = k;
          width = s.size();
          k += s.size() - 1;
          matched = true;
          break;
        }
      }
    }
    if (matched) continue;
    if (text[k] == '(' || text[k] == '[') ++depth;
    if (text[k] == ')' || text[k] == ']') --depth;
    if (depth < 0) throw ParseError(source, line, "unbalanced ')'");
  }
  if (depth != 0) throw ParseError(source, line, "unbalanced '('");
  if (at == std::string::npos) throw ParseError(source, line, "term has no tensor sign '(x)'");
  return {trim(text.substr(0, at)), trim(text.substr(at + width))};
}

}  // namespace detail

inline Expr parse_expr(std::string_view text, SymbolTable& symbols, const std::string& source = "<expr>",
                       std::size_t line = 1) {
  return detail::ExprParser(text, symbols, source, line).parse_all();
}

/// One left (x) right summand.
inline std::pair<Expr, Expr> parse_term(const std::string& text, SymbolTable& symbols,
                                        const std::string& source = "<term>", std::size_t line = 1) {
  const auto [l, r] = detail::split_tensor(text, source, line);
  if (l.empty() || r.empty()) throw ParseError(source, line, "empty tensor leg");
  return {parse_expr(l, symbols, source, line), parse_expr(r, symbols, source, line)};
}

/// Header of a transcription file, readable before the algebra is known.
struct TranscriptionHeader {
  std::string chain;
  std::string generator;
};

namespace detail {

struct RawLine {
  std::size_t number;
  std::string key;
  std::string value;
};

inline std::vector<RawLine> read_lines(std::istream& in, const std::string& source) {
  std::vector<RawLine> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError(source, n, "expected 'key: value'");
    out.push_back({n, trim(t.substr(0, colon)), trim(t.substr(colon + 1))});
  }
  return out;
}

}  // namespace detail

/// Parses a whole transcription; the chain's algebra defines the symbols.
inline ExpectedCoproduct parse_transcription(std::istream& in, const std::string& source) {
  const auto lines = detail::read_lines(in, source);
  ExpectedCoproduct out;
  out.source = source;
  std::string element_text;
  std::size_t element_line = 0;
  std::vector<const detail::RawLine*> terms;
  for (const auto& l : lines) {
    if (l.key == "chain") {
      out.chain = canonical_preset(l.value);
    } else if (l.key == "generator") {
      out.generator = l.value;
    } else if (l.key == "element") {
      element_text = l.value;
      element_line = l.number;
    } else if (l.key == "long") {
      if (l.value != "true" && l.value != "false")
        throw ParseError(source, l.number, "long: expected true or false, got '" + l.value + "'");
      out.long_formula = l.value == "true";
    } else if (l.key == "source" || l.key == "title") {
      out.source = source + " (" + l.value + ")";
    } else if (l.key == "term") {
      terms.push_back(&l);
    } else {
      throw ParseError(source, l.number, "unknown key '" + l.key + "'");
    }
  }
  if (out.chain.empty()) throw ParseError(source, 0, "missing 'chain:' line");
  if (out.generator.empty()) throw ParseError(source, 0, "missing 'generator:' line");
  if (terms.empty()) throw ParseError(source, 0, "no 'term:' lines");
  AlgebraRep rep;
  try {
    rep = build_algebra(preset_algebra(out.chain));
  } catch (const LookupError& e) {
    throw ParseError(source, 0, e.what());
  }
  SymbolTable symbols = SymbolTable::for_algebra(rep);
  out.element = element_text.empty() ? parse_expr(out.generator, symbols, source, 0)
                                     : parse_expr(element_text, symbols, source, element_line);
  for (const auto* l : terms) out.summands.push_back(parse_term(l->value, symbols, source, l->number));
  return out;
}

inline ExpectedCoproduct parse_transcription(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_transcription(in, source);
}

inline ExpectedCoproduct load_transcription(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open transcription file");
  return parse_transcription(in, path.string());
}

/// Every transcription under dir/<chain with ':' -> '_'>/, sorted by path.
inline std::vector<ExpectedCoproduct> load_transcriptions(const std::filesystem::path& dir, const std::string& chain) {
  std::string sub = canonical_preset(chain);
  for (auto& ch : sub)
    if (ch == ':') ch = '_';
  const auto folder = dir / sub;
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(folder))
    for (const auto& entry : std::filesystem::directory_iterator(folder))
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<ExpectedCoproduct> out;
  for (const auto& f : files) out.push_back(load_transcription(f));
  return out;
}

}  // namespace twistlab
