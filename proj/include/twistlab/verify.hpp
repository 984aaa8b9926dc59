#pragma once

// Hopf-algebraic checks of twists in tensor powers of a representation:
// cocycle, counit, primitivity, coproduct tables, triangular R-matrices and
// the classical limit.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/algebra.hpp"
#include "twistlab/check_report.hpp"
#include "twistlab/error.hpp"
#include "twistlab/expr.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

/// F12 (Delta (x) id)F - F23 (id (x) Delta)F in rho^{(x)3}.
inline CheckReport check_cocycle(const TwistChain& chain, const AlgebraRep& rep) {
  const std::string name = "cocycle " + chain.name;
  const std::string anchor = "F12 (Delta x id)F = F23 (id x Delta)F";
  try {
    const auto rho = rep.rho();
    const auto delta = primitive_coproduct(rho);
    const FieldMatrix id = FieldMatrix::identity(rep.dim);
    const FieldMatrix f = evaluate_chain(chain, rho, rho);
    const FieldMatrix lhs = kron(f, id) * evaluate_chain(chain, delta, rho);
    const FieldMatrix rhs = kron(id, f) * evaluate_chain(chain, rho, delta);
    return residual_check(name, anchor, lhs - rhs);
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// (eps (x) id)F = 1 and (id (x) eps)F = 1.
inline CheckReport check_counit(const TwistChain& chain, const AlgebraRep& rep) {
  const std::string name = "counit " + chain.name;
  const std::string anchor = "(eps x id)F = (id x eps)F = 1";
  try {
    const auto rho = rep.rho();
    const auto eps = counit_of(rho);
    const FieldMatrix id = FieldMatrix::identity(rep.dim);
    CheckReport left = residual_check(name, anchor, evaluate_chain(chain, eps, rho) - id);
    CheckReport right = residual_check(name, anchor, evaluate_chain(chain, rho, eps) - id);
    if (!left.passed()) return left.with_note("(eps x id)F != 1");
    if (!right.passed()) return right.with_note("(id x eps)F != 1");
    return left;
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// Delta_F(x) - (x (x) 1 + 1 (x) x); x may be a nonlinear element such as
/// E_BO, in which case Delta_F(x) is F Delta(x) F^{-1} with Delta multiplicative.
inline CheckReport check_primitive(const TwistChain& chain, const Expr& x, const AlgebraRep& rep,
                                   const std::string& label = {}) {
  const std::string name = "primitive " + (label.empty() ? x.to_string() : label) + " under " + chain.name;
  const std::string anchor = "Delta_F(x) = x (x) 1 + 1 (x) x";
  try {
    const FieldMatrix rx = evaluate(x, rep.rho());
    const FieldMatrix id = FieldMatrix::identity(rep.dim);
    return residual_check(name, anchor, twisted_coproduct(chain, x, rep) - kron(rx, id) - kron(id, rx));
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// A transcribed coproduct formula Delta_F(x) = sum_k left_k (x) right_k.
struct ExpectedCoproduct {
  std::string generator;  // label of x
  Expr element;           // x itself (a generator or a composite such as E_BO)
  std::string chain;      // preset name
  std::vector<std::pair<Expr, Expr>> summands;
  std::string source;     // file or citation text
  bool long_formula = false;
};

inline FieldMatrix evaluate_summands(const std::vector<std::pair<Expr, Expr>>& summands,
                                     const Morphism<FieldElem>& rho) {
  Evaluator<FieldElem> ev(rho);
  FieldMatrix out(rho.dim() * rho.dim(), rho.dim() * rho.dim());
  for (const auto& [l, r] : summands) out += kron(ev(l), ev(r));
  return out;
}

/// Delta_F(x) - (transcribed formula) in rho (x) rho.
inline CheckReport compare_coproduct(const EvaluatedTwist<FieldElem>& f, const TwistChain& chain,
                                     const ExpectedCoproduct& expected, const AlgebraRep& rep) {
  const std::string name = "coproduct " + expected.generator + " under " + chain.name;
  const std::string anchor = expected.source.empty() ? "Delta_F(" + expected.generator + ")" : expected.source;
  try {
    const FieldMatrix got = twisted_coproduct(f, expected.element, rep);
    return residual_check(name, anchor, got - evaluate_summands(expected.summands, rep.rho()));
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

inline CheckReport compare_coproduct(const TwistChain& chain, const ExpectedCoproduct& expected,
                                     const AlgebraRep& rep) {
  try {
    return compare_coproduct(evaluate_twist(chain, rep), chain, expected, rep);
  } catch (const Error& e) {
    return error_check("coproduct " + expected.generator + " under " + chain.name, expected.source, e.what());
  }
}

/// R_F = F21 F^{-1} = P F P F^{-1} in rho (x) rho.
inline FieldMatrix r_matrix(const EvaluatedTwist<FieldElem>& f, std::size_t d) {
  const FieldMatrix p = build_P(d);
  return p * f.twist * p * f.inverse;
}

inline FieldMatrix r_matrix(const TwistChain& chain, const AlgebraRep& rep) {
  return r_matrix(evaluate_twist(chain, rep), rep.dim);
}

namespace detail {

inline std::size_t leg_dim(std::size_t n, const char* what) {
  const auto d = exact_sqrt(n);
  if (!d || *d < 1) throw DomainError(std::string(what) + ": dimension " + std::to_string(n) + " is not a square");
  return *d;
}

/// X12, X13, X23 for X acting on C^d (x) C^d.
template <Scalar S>
struct ThreeLegs {
  Matrix<S> x12, x13, x23;
};

template <Scalar S>
ThreeLegs<S> three_legs(const Matrix<S>& x, std::size_t d) {
  const Matrix<S> id = Matrix<S>::identity(d);
  const Matrix<S> p23 = kron(id, build_P<S>(d));
  ThreeLegs<S> out{kron(x, id), {}, kron(id, x)};
  out.x13 = p23 * out.x12 * p23;
  return out;
}

}  // namespace detail

/// R12 R13 R23 - R23 R13 R12.
inline CheckReport check_qybe(const FieldMatrix& r, const std::string& label = "R") {
  const std::string name = "QYBE " + label;
  const std::string anchor = "R12 R13 R23 = R23 R13 R12";
  try {
    if (!r.is_square()) throw DomainError("QYBE: R is " + r.shape());
    const auto legs = detail::three_legs(r, detail::leg_dim(r.rows(), "QYBE"));
    return residual_check(name, anchor, legs.x12 * legs.x13 * legs.x23 - legs.x23 * legs.x13 * legs.x12);
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// R21 R - 1 with R21 = P R P.
inline CheckReport check_unitarity(const FieldMatrix& r, const std::string& label = "R") {
  const std::string name = "unitarity " + label;
  const std::string anchor = "R21 R = 1";
  try {
    if (!r.is_square()) throw DomainError("unitarity: R is " + r.shape());
    const FieldMatrix p = build_P(detail::leg_dim(r.rows(), "unitarity"));
    return residual_check(name, anchor, p * r * p * r - FieldMatrix::identity(r.rows()));
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// R - 1 nilpotent.
inline bool is_unipotent(const FieldMatrix& r) {
  if (!r.is_square()) return false;
  const FieldMatrix n = r - FieldMatrix::identity(r.rows());
  return nilpotency_index(n).has_value();
}

struct ClassicalR {
  FieldMatrix first_order;  // F^(1), the h^1 coefficient of F
  FieldMatrix r;            // F^(1) - P F^(1) P
  bool degenerate = false;  // F has no h-dependence
};

/// First-order data of a chain built with the deformation parameter enabled.
inline ClassicalR classical_r(const TwistChain& chain_with_h, const AlgebraRep& rep) {
  const auto rho = promote(rep.rho());
  const PolyMatrix f = evaluate_chain(chain_with_h, rho, rho);
  ClassicalR out;
  out.first_order = coefficient(f, 1);
  const FieldMatrix p = build_P(rep.dim);
  out.r = out.first_order - p * out.first_order * p;
  bool constant = true;
  for (const auto& x : f.data()) constant = constant && x.degree() <= 0;
  out.degenerate = constant;
  return out;
}

/// r + P r P.
inline CheckReport check_skew(const FieldMatrix& r, const std::string& label = "r") {
  const std::string name = "skew " + label;
  const std::string anchor = "r = -r21";
  try {
    const FieldMatrix p = build_P(detail::leg_dim(r.rows(), "skew"));
    return residual_check(name, anchor, r + p * r * p);
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

/// [r12, r13] + [r12, r23] + [r13, r23].
inline CheckReport check_cybe(const FieldMatrix& r, std::size_t rep_dim, const std::string& label = "r") {
  const std::string name = "CYBE " + label;
  const std::string anchor = "[r12,r13] + [r12,r23] + [r13,r23] = 0";
  try {
    if (r.rows() != rep_dim * rep_dim || !r.is_square())
      throw DomainError("CYBE: r is " + r.shape() + " for leg dimension " + std::to_string(rep_dim));
    const auto l = detail::three_legs(r, rep_dim);
    return residual_check(name, anchor,
                          commutator(l.x12, l.x13) + commutator(l.x12, l.x23) + commutator(l.x13, l.x23));
  } catch (const Error& e) {
    return error_check(name, anchor, e.what());
  }
}

}  // namespace twistlab
