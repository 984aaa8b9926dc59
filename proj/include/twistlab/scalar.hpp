#pragma once

// Exact scalars: the number field Q(i, sqrt 2) and polynomials over it in a
// single formal deformation parameter h.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twistlab/error.hpp"

namespace twistlab {

using Rational = mpq_class;

inline Rational abs(const Rational& q) { return ::abs(q); }

/// n/d in lowest terms.
inline Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "a", "-a" or "a/b" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  Rational q;
  std::string s(text);
  if (s.empty() || q.set_str(s, 10) != 0) throw DomainError("invalid rational '" + s + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Element a + b i + c sqrt2 + d i sqrt2 of Q(i, sqrt 2).
///
/// Components are GMP rationals, so they are always in lowest terms with a
/// positive denominator.
class FieldElem {
 public:
  enum Component : int { kOne = 0, kI = 1, kSqrt2 = 2, kISqrt2 = 3 };

  FieldElem() = default;
  FieldElem(int n) { c_[kOne] = n; }  // NOLINT(google-explicit-constructor)
  FieldElem(long n) { c_[kOne] = n; }  // NOLINT(google-explicit-constructor)
  FieldElem(const Rational& q) { c_[kOne] = q; c_[kOne].canonicalize(); }  // NOLINT(google-explicit-constructor)
  FieldElem(Rational a, Rational b, Rational c, Rational d)
      : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    for (auto& x : c_) x.canonicalize();
  }

  static FieldElem i() { return {0, 1, 0, 0}; }
  static FieldElem sqrt2() { return {0, 0, 1, 0}; }
  static FieldElem i_sqrt2() { return {0, 0, 0, 1}; }

  const Rational& operator[](int k) const { return c_[k]; }

  bool is_zero() const {
    return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
  }
  bool is_one() const {
    return c_[0] == 1 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
  }
  bool is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }

  /// Complex conjugation (i -> -i, sqrt2 fixed).
  FieldElem conj() const { return {c_[0], -c_[1], c_[2], -c_[3]}; }
  /// The Galois automorphism sqrt2 -> -sqrt2.
  FieldElem conj_sqrt2() const { return {c_[0], c_[1], -c_[2], -c_[3]}; }

  FieldElem operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

  FieldElem& operator+=(const FieldElem& o) {
    for (int k = 0; k < 4; ++k)
      if (sgn(o.c_[k]) != 0) c_[k] += o.c_[k];
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) {
    for (int k = 0; k < 4; ++k)
      if (sgn(o.c_[k]) != 0) c_[k] -= o.c_[k];
    return *this;
  }
  FieldElem& operator*=(const FieldElem& o) {
    FieldElem r;
    r.addmul(*this, o);
    *this = std::move(r);
    return *this;
  }
  FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    FieldElem r;
    r.addmul(a, b);
    return r;
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1] && a.c_[2] == b.c_[2] && a.c_[3] == b.c_[3];
  }

  /// *this += a * b, touching only nonzero component pairs.
  void addmul(const FieldElem& a, const FieldElem& b) {
    // basis product table: target component and integer factor
    static constexpr int kTarget[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int kFactor[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, 2, 2}, {1, -1, 2, -2}};
    thread_local Rational tmp;
    for (int p = 0; p < 4; ++p) {
      if (sgn(a.c_[p]) == 0) continue;
      for (int q = 0; q < 4; ++q) {
        if (sgn(b.c_[q]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), a.c_[p].get_mpq_t(), b.c_[q].get_mpq_t());
        const int f = kFactor[p][q];
        if (f == 2 || f == -2) mpq_mul_2exp(tmp.get_mpq_t(), tmp.get_mpq_t(), 1);
        Rational& t = c_[kTarget[p][q]];
        if (f > 0)
          mpq_add(t.get_mpq_t(), t.get_mpq_t(), tmp.get_mpq_t());
        else
          mpq_sub(t.get_mpq_t(), t.get_mpq_t(), tmp.get_mpq_t());
      }
    }
  }

  /// Multiplicative inverse via the norm to Q; throws DomainError on zero.
  FieldElem inverse() const {
    if (is_zero()) throw DomainError("division by zero in Q(i,sqrt2)");
    // x * conj_sqrt2(x) lies in Q(i); multiplying by its complex conjugate lands in Q.
    const FieldElem s = conj_sqrt2();
    const FieldElem n1 = *this * s;
    const FieldElem n1c = n1.conj();
    const Rational norm = (n1 * n1c)[kOne];
    FieldElem r = s * n1c;
    for (auto& x : r.c_) x /= norm;
    return r;
  }

  /// Largest absolute value among the four rational components.
  Rational height() const {
    Rational h = 0;
    for (const auto& x : c_) h = std::max(h, Rational(::abs(x)));
    return h;
  }

  /// Human-readable form, e.g. "1/2 - i + 3/2*r2" (r2 denotes sqrt 2).
  std::string to_string() const {
    static constexpr std::array<const char*, 4> kUnit = {"", "i", "r2", "i*r2"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
      if (sgn(c_[k]) == 0) continue;
      Rational mag = ::abs(c_[k]);
      if (!out.empty())
        out += sgn(c_[k]) < 0 ? " - " : " + ";
      else if (sgn(c_[k]) < 0)
        out += "-";
      if (k == 0)
        out += mag.get_str();
      else if (mag == 1)
        out += kUnit[k];
      else
        out += mag.get_str() + "*" + kUnit[k];
    }
    return out.empty() ? "0" : out;
  }

  /// Canonical serialization "a/b + c/d i + e/f r2 + g/h i r2".
  std::string to_canonical() const {
    auto part = [](const Rational& q) {
      return q.get_num().get_str() + "/" + q.get_den().get_str();
    };
    return part(c_[0]) + " + " + part(c_[1]) + " i + " + part(c_[2]) + " r2 + " + part(c_[3]) +
           " i r2";
  }

  /// Inverse of to_canonical().
  static FieldElem parse_canonical(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string a, plus1, b, u1, plus2, c, u2, plus3, d, u3, u4;
    in >> a >> plus1 >> b >> u1 >> plus2 >> c >> u2 >> plus3 >> d >> u3 >> u4;
    if (!in || plus1 != "+" || plus2 != "+" || plus3 != "+" || u1 != "i" || u2 != "r2" ||
        u3 != "i" || u4 != "r2")
      throw DomainError("malformed canonical scalar '" + std::string(text) + "'");
    return {parse_rational(a), parse_rational(b), parse_rational(c), parse_rational(d)};
  }

 private:
  std::array<Rational, 4> c_{};
};

inline std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.to_string(); }

inline FieldElem field_mul(const FieldElem& x, const FieldElem& y) { return x * y; }
inline FieldElem field_inv(const FieldElem& x) { return x.inverse(); }

/// Polynomial in the deformation parameter h with FieldElem coefficients.
///
/// Stored without trailing zero coefficients; the zero polynomial is empty.
class PolyParam {
 public:
  PolyParam() = default;
  PolyParam(int n) : PolyParam(FieldElem(n)) {}  // NOLINT(google-explicit-constructor)
  PolyParam(const FieldElem& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) coeffs_.push_back(c);
  }
  explicit PolyParam(std::vector<FieldElem> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static PolyParam h() { return PolyParam(std::vector<FieldElem>{FieldElem(0), FieldElem(1)}); }

  /// Coefficient of h^k; zero beyond the degree.
  const FieldElem& coeff(std::size_t k) const {
    static const FieldElem kZero;
    return k < coeffs_.size() ? coeffs_[k] : kZero;
  }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  PolyParam operator-() const {
    PolyParam r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  PolyParam& operator+=(const PolyParam& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  PolyParam& operator-=(const PolyParam& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  PolyParam& operator*=(const PolyParam& o) {
    PolyParam r;
    r.addmul(*this, o);
    *this = std::move(r);
    return *this;
  }
  PolyParam& operator/=(const PolyParam& o) {
    if (o.degree() != 0) throw DomainError("division by a non-constant polynomial in h");
    const FieldElem inv = o.coeffs_[0].inverse();
    for (auto& c : coeffs_) c *= inv;
    return *this;
  }

  friend PolyParam operator+(PolyParam a, const PolyParam& b) { return a += b; }
  friend PolyParam operator-(PolyParam a, const PolyParam& b) { return a -= b; }
  friend PolyParam operator*(const PolyParam& a, const PolyParam& b) {
    PolyParam r;
    r.addmul(a, b);
    return r;
  }
  friend PolyParam operator/(PolyParam a, const PolyParam& b) { return a /= b; }
  friend bool operator==(const PolyParam& a, const PolyParam& b) { return a.coeffs_ == b.coeffs_; }

  void addmul(const PolyParam& a, const PolyParam& b) {
    if (a.is_zero() || b.is_zero()) return;
    const std::size_t n = a.coeffs_.size() + b.coeffs_.size() - 1;
    if (coeffs_.size() < n) coeffs_.resize(n);
    for (std::size_t p = 0; p < a.coeffs_.size(); ++p) {
      if (a.coeffs_[p].is_zero()) continue;
      for (std::size_t q = 0; q < b.coeffs_.size(); ++q) coeffs_[p + q].addmul(a.coeffs_[p], b.coeffs_[q]);
    }
    trim();
  }

  PolyParam conj() const {
    PolyParam r = *this;
    for (auto& c : r.coeffs_) c = c.conj();
    return r;
  }

  FieldElem eval(const FieldElem& h0) const {
    FieldElem r;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * h0 + *it;
    return r;
  }

  Rational height() const {
    Rational m = 0;
    for (const auto& c : coeffs_) m = std::max(m, c.height());
    return m;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeffs_[k].to_string() + ")";
      if (k > 0) out += k == 1 ? "*h" : "*h^" + std::to_string(k);
    }
    return out;
  }

  /// Renormalizes: drops trailing zero coefficients.
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

 private:
  std::vector<FieldElem> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const PolyParam& p) { return os << p.to_string(); }

inline FieldElem poly_coeff(const PolyParam& p, std::size_t k) { return p.coeff(k); }

/// Scalar kinds admitted as matrix entries.
template <class S>
concept Scalar = std::regular<S> && requires(S a, const S& b, const FieldElem& f) {
  { b.is_zero() } -> std::convertible_to<bool>;
  a.addmul(b, b);
  a += b;
  a -= b;
  { -b } -> std::convertible_to<S>;
  { b.conj() } -> std::convertible_to<S>;
  { b.height() } -> std::convertible_to<Rational>;
  { b.to_string() } -> std::convertible_to<std::string>;
  S(f);
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<FieldElem> {
  static constexpr const char* kName = "field";
  /// The deformation parameter is specialized to h = 1 on the plain-field path.
  static FieldElem param() { return 1; }
  static FieldElem inverse(const FieldElem& x) { return x.inverse(); }
};

template <>
struct ScalarTraits<PolyParam> {
  static constexpr const char* kName = "poly";
  static PolyParam param() { return PolyParam::h(); }
  static PolyParam inverse(const PolyParam& x) {
    if (x.degree() != 0) throw DomainError("polynomial in h is not a unit");
    return PolyParam(x.coeff(0).inverse());
  }
};

static_assert(Scalar<FieldElem>);
static_assert(Scalar<PolyParam>);

}  // namespace twistlab
