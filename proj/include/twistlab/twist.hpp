#pragma once

// Twist factors exp(sum_k X_k (x) Y_k) with expression legs, ordered chains
// of them, the deformed carrier generators, and evaluation of twists and
// twisted coproducts in tensor powers of a representation.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twistlab/algebra.hpp"
#include "twistlab/carrier.hpp"
#include "twistlab/error.hpp"
#include "twistlab/expr.hpp"
#include "twistlab/matrix.hpp"

namespace twistlab {

/// exp(sum_k left_k (x) right_k).
struct TwistFactor {
  enum class Kind { kJordanian, kExtension };
  Kind kind = Kind::kExtension;
  std::string label;
  std::vector<std::pair<Expr, Expr>> summands;
};

/// Ordered product of factors, written left to right as F = Phi_1 Phi_2 ...;
/// the rightmost factor is the one applied first.
struct TwistChain {
  std::string name;
  std::vector<TwistFactor> factors;

  bool empty() const { return factors.empty(); }

  friend TwistChain operator+(TwistChain a, const TwistChain& b) {
    a.name = a.name.empty() ? b.name : (b.name.empty() ? a.name : a.name + "*" + b.name);
    a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
    return a;
  }
};

/// Phi_J = exp(H (x) ln(1 + E)); with `with_param` the argument is h E.
inline TwistFactor jordanian(const std::string& cartan, const Expr& e, bool with_param = false) {
  const Expr arg = with_param ? Expr::param() * e : e;
  return {TwistFactor::Kind::kJordanian, "exp(" + cartan + " (x) log1p(" + arg.to_string() + "))",
          {{gen(cartan), sigma(arg)}}};
}

/// exp(sum_k A_k (x) B_k e^{-sigma/2}) as one factor; with `with_param`
/// every summand carries an extra h.
inline TwistFactor extension(const std::vector<std::pair<Expr, Expr>>& pairs, const Expr& sigma_expr,
                             bool with_param = false) {
  TwistFactor f;
  const Expr damp = neg_half_exp(sigma_expr);
  std::string label;
  for (const auto& [a, b] : pairs) {
    const Expr left = with_param ? Expr::param() * a : a;
    f.summands.emplace_back(left, b * damp);
    if (!label.empty()) label += " + ";
    label += left.to_string() + " (x) " + b.to_string() + " e^{-sigma/2}";
  }
  f.label = "exp(" + (label.empty() ? std::string("0") : label) + ")";
  return f;
}

/// The deformed Borel generator: E_B = E + L_{lp - tl} L_{lp - l} e^{-sigma}
/// in the generic case, E_BO = E + 1/2 (L_{lp - l})^2 e^{-sigma} in the
/// coincident case, E itself when the config is undeformed (xi = 0).
inline Expr deformed_generator(const AlgebraRep& rep, const CarrierConfig& c, bool with_param = false) {
  const CarrierValidation v = validate_carrier(rep, c);
  if (!v.passed()) {
    std::string why;
    for (const auto& l : v.lines)
      if (!l.as_expected()) why += (why.empty() ? "" : "; ") + l.name;
    throw ConstructionError("carrier validation failed for " + c.algebra + ": " + why);
  }
  const Expr e = c.borel.expr();
  if (!c.deformed) return e;
  const Expr damp = exp(-perp_sigma(c, with_param));
  auto right_for = [&](const Root& r) -> Expr {
    for (const auto& p : c.extensions)
      if (rep.root(p.left.name) == r) return p.right.expr();
    throw ConstructionError("no extension pair carries root " + r.to_string());
  };
  // the grading that scales the extension factor by h scales the quadratic
  // term by h relative to E
  const Expr weight = with_param ? Expr::param() : Expr::one();
  const Expr b_upper = right_for(*v.lambda_prime);
  if (v.kind == CarrierCase::kCoincident)
    return e + FieldElem(Rational(1, 2)) * (weight * b_upper * b_upper * damp);
  const Expr b_lower = right_for(*v.lambda_tilde);
  return e + weight * b_lower * b_upper * damp;
}

/// Jordanian factor on L_{lambda0_perp} followed by one extension factor per
/// pair, as separate factors in the config's order: Phi_E... Phi_J.
inline TwistChain extended_jordanian(const CarrierConfig& c, std::size_t n_extensions, bool with_param = false) {
  TwistChain chain;
  const Expr s = perp_sigma(c, with_param);
  const std::size_t total = c.extensions.size();
  for (std::size_t k = total - n_extensions; k < total; ++k) {
    const auto& p = c.extensions[k];
    chain.factors.push_back(extension({{p.left.expr(), p.right.expr()}}, s, with_param));
  }
  chain.factors.push_back(jordanian(c.perp_cartan, c.perp_root_vector.expr(), with_param));
  return chain;
}

inline std::vector<std::string> preset_names() {
  return {"so5:EJ", "so5:BJEJ", "sl4:EJ", "sl4:E'EJ", "sl4:BJE'EJ"};
}

/// Canonical preset spelling: accepts E_EJ / E′EJ for E'EJ.
inline std::string canonical_preset(std::string_view raw) {
  std::string s(raw);
  for (const std::string_view prime : {"′", "_"}) {
    for (std::size_t pos = s.find(prime); pos != std::string::npos; pos = s.find(prime))
      s.replace(pos, prime.size(), "'");
  }
  return s;
}

/// The preset chains: so5:EJ, so5:BJEJ, sl4:EJ, sl4:E'EJ, sl4:BJE'EJ.
inline TwistChain preset_chain(std::string_view raw_name, bool with_param = false) {
  const std::string name = canonical_preset(raw_name);
  const auto colon = name.find(':');
  if (colon == std::string::npos) throw LookupError("unknown preset chain '" + std::string(raw_name) + "'");
  const std::string alg = name.substr(0, colon);
  const std::string tag = name.substr(colon + 1);
  TwistChain chain;
  if (alg == "so5" && (tag == "EJ" || tag == "BJEJ")) {
    const CarrierConfig c = carrier_config("so5");
    chain = extended_jordanian(c, 1, with_param);
    if (tag == "BJEJ") {
      const AlgebraRep rep = build_so5();
      chain.factors.insert(chain.factors.begin(), jordanian(c.cartan, deformed_generator(rep, c, with_param), with_param));
    }
  } else if (alg == "sl4" && (tag == "EJ" || tag == "E'EJ" || tag == "BJE'EJ")) {
    const CarrierConfig c = carrier_config("sl4");
    chain = extended_jordanian(c, tag == "EJ" ? 1 : 2, with_param);
    if (tag == "BJE'EJ") {
      const AlgebraRep rep = build_sl4();
      chain.factors.insert(chain.factors.begin(), jordanian(c.cartan, deformed_generator(rep, c, with_param), with_param));
    }
  } else {
    throw LookupError("unknown preset chain '" + std::string(raw_name) + "'");
  }
  chain.name = alg + ":" + tag;
  return chain;
}

/// Algebra a preset chain lives on ("so5:EJ" -> "so5").
inline std::string preset_algebra(std::string_view raw_name) {
  const std::string name = canonical_preset(raw_name);
  return name.substr(0, name.find(':'));
}

/// Negative control: the chain with the sign of every extension factor flipped.
inline TwistChain flip_extension_sign(TwistChain chain) {
  bool flipped = false;
  for (auto& f : chain.factors) {
    if (f.kind != TwistFactor::Kind::kExtension) continue;
    for (auto& [l, r] : f.summands) l = -l;
    f.label = "sign-flipped " + f.label;
    flipped = true;
  }
  if (!flipped) throw LookupError("chain " + chain.name + " has no extension factor to corrupt");
  chain.name += "[sign-flipped extension]";
  return chain;
}

template <Scalar S>
Matrix<S> factor_exponent(const TwistFactor& f, Evaluator<S>& left, Evaluator<S>& right) {
  const std::size_t d = left.morphism().dim() * right.morphism().dim();
  Matrix<S> x(d, d);
  for (const auto& [a, b] : f.summands) x += kron(left(a), right(b));
  return x;
}

template <Scalar S>
struct EvaluatedTwist {
  Matrix<S> twist;
  Matrix<S> inverse;
};

/// F and F^{-1} in leg1 (x) leg2; the inverse is the reversed product of
/// exp(-X_k), exact because every exponent is nilpotent.
template <Scalar S>
EvaluatedTwist<S> evaluate_chain_with_inverse(const TwistChain& chain, const Morphism<S>& leg1,
                                              const Morphism<S>& leg2) {
  Evaluator<S> left(leg1);
  Evaluator<S> right(leg2);
  const std::size_t d = leg1.dim() * leg2.dim();
  EvaluatedTwist<S> out{Matrix<S>::identity(d), Matrix<S>::identity(d)};
  for (const auto& f : chain.factors) {
    const Matrix<S> x = factor_exponent(f, left, right);
    const std::string where = f.label + " in " + leg1.label() + " (x) " + leg2.label();
    out.twist = out.twist * exp_nilpotent(x, where);
    out.inverse = exp_nilpotent(-x, where) * out.inverse;
  }
  return out;
}

template <Scalar S>
Matrix<S> evaluate_chain(const TwistChain& chain, const Morphism<S>& leg1, const Morphism<S>& leg2) {
  Evaluator<S> left(leg1);
  Evaluator<S> right(leg2);
  Matrix<S> f = Matrix<S>::identity(leg1.dim() * leg2.dim());
  for (const auto& factor : chain.factors)
    f = f * exp_nilpotent(factor_exponent(factor, left, right),
                          factor.label + " in " + leg1.label() + " (x) " + leg2.label());
  return f;
}

/// rho (x) rho evaluation of F in the plain field.
inline EvaluatedTwist<FieldElem> evaluate_twist(const TwistChain& chain, const AlgebraRep& rep) {
  const auto rho = rep.rho();
  return evaluate_chain_with_inverse(chain, rho, rho);
}

/// Delta_F(x) = F (rho(x) (x) 1 + 1 (x) rho(x)) F^{-1}; composite x is pushed
/// through the primitive coproduct leaf by leaf.
inline FieldMatrix twisted_coproduct(const EvaluatedTwist<FieldElem>& f, const Expr& x, const AlgebraRep& rep) {
  const FieldMatrix dx = evaluate(x, primitive_coproduct(rep.rho()));
  return f.twist * dx * f.inverse;
}

inline FieldMatrix twisted_coproduct(const TwistChain& chain, const Expr& x, const AlgebraRep& rep) {
  return twisted_coproduct(evaluate_twist(chain, rep), x, rep);
}

}  // namespace twistlab
