#include <array>

#include <gtest/gtest.h>

#include "twistlab/scalar.hpp"

using namespace twistlab;

namespace {

const FieldElem kI = FieldElem::i();
const FieldElem kR2 = FieldElem::sqrt2();

FieldElem q(long n, long d = 1) { return FieldElem(ratio(n, d)); }

// Coefficients of x * y in the basis {1, i, r2, i r2}, written out by hand:
// multiplication by x as a 4x4 rational matrix acting on y.
std::array<std::array<Rational, 4>, 4> mult_matrix(const FieldElem& x) {
  const Rational a = x[0], b = x[1], c = x[2], d = x[3];
  // columns: x*1, x*i, x*r2, x*i r2
  return {{{a, -b, 2 * c, -2 * d}, {b, a, 2 * d, 2 * c}, {c, -d, a, -b}, {d, c, b, a}}};
}

// Solves M y = e_1 by Gauss-Jordan over Q.
std::array<Rational, 4> solve_unit(std::array<std::array<Rational, 4>, 4> m) {
  std::array<Rational, 4> rhs{1, 0, 0, 0};
  for (int col = 0; col < 4; ++col) {
    int p = col;
    while (sgn(m[p][col]) == 0) ++p;
    std::swap(m[p], m[col]);
    std::swap(rhs[p], rhs[col]);
    const Rational inv = 1 / m[col][col];
    for (int k = 0; k < 4; ++k) m[col][k] *= inv;
    rhs[col] *= inv;
    for (int r = 0; r < 4; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col];
      for (int k = 0; k < 4; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (auto& x : rhs) x.canonicalize();
  return rhs;
}

}  // namespace

TEST(FieldElem, DefiningRelations) {
  EXPECT_EQ(kI * kI, q(-1));
  EXPECT_EQ(kR2 * kR2, q(2));
  EXPECT_EQ((q(1) + kR2) * (q(1) - kR2), q(-1));
  EXPECT_EQ((kR2 * q(1, 2)) * kR2, q(1));
  EXPECT_EQ(kI * kR2, FieldElem::i_sqrt2());
}

TEST(FieldElem, MultiplicationMatchesHandTable) {
  const FieldElem x(ratio(3, 2), ratio(-1, 3), 2, ratio(5, 7));
  const FieldElem y(-1, ratio(2, 5), ratio(1, 4), -3);
  const auto m = mult_matrix(x);
  for (int r = 0; r < 4; ++r) {
    Rational s = 0;
    for (int k = 0; k < 4; ++k) s += m[r][k] * y[k];
    s.canonicalize();
    EXPECT_EQ((x * y)[r], s) << "component " << r;
  }
}

TEST(FieldElem, InverseSimple) {
  EXPECT_EQ(field_inv(q(1) + kI), (q(1) - kI) * q(1, 2));
  EXPECT_EQ(field_inv(kR2), kR2 * q(1, 2));
  EXPECT_EQ(field_inv(q(-3, 4)), q(-4, 3));
}

TEST(FieldElem, InverseMatchesLinearSolve) {
  for (const FieldElem& x : {q(1) + kI + kR2, FieldElem(ratio(2, 3), -1, ratio(1, 5), 4),
                             FieldElem(0, 0, 1, 1), FieldElem(7, 0, 0, ratio(-1, 2))}) {
    const auto y = solve_unit(mult_matrix(x));
    const FieldElem inv = field_inv(x);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(inv[k], y[k]) << x.to_string() << " component " << k;
    EXPECT_TRUE((x * inv).is_one());
  }
}

TEST(FieldElem, InverseOfZeroThrows) {
  EXPECT_THROW(field_inv(FieldElem()), DomainError);
}

TEST(FieldElem, RationalsAreCanonical) {
  EXPECT_EQ(q(-4, 4), q(-1));
  EXPECT_EQ(q(6, 8)[0].get_str(), "3/4");
  EXPECT_EQ(FieldElem(Rational(10, 4)).to_string(), "5/2");
}

TEST(FieldElem, CanonicalRoundTrip) {
  const FieldElem x(ratio(-3, 2), ratio(1, 7), 0, 5);
  EXPECT_EQ(x.to_canonical(), "-3/2 + 1/7 i + 0/1 r2 + 5/1 i r2");
  EXPECT_EQ(FieldElem::parse_canonical(x.to_canonical()), x);
  EXPECT_THROW(FieldElem::parse_canonical("1/2 + i"), DomainError);
}

TEST(FieldElem, HeightAndConjugates) {
  const FieldElem x(ratio(-3, 2), ratio(1, 7), 0, 5);
  EXPECT_EQ(x.height(), Rational(5));
  EXPECT_EQ(x.conj(), FieldElem(ratio(-3, 2), ratio(-1, 7), 0, -5));
  EXPECT_EQ(x.conj_sqrt2(), FieldElem(ratio(-3, 2), ratio(1, 7), 0, -5));
}

TEST(PolyParam, Coefficients) {
  const PolyParam p = PolyParam(1) + PolyParam(2) * PolyParam::h();
  EXPECT_EQ(poly_coeff(p, 0), q(1));
  EXPECT_EQ(poly_coeff(p, 1), q(2));
  EXPECT_EQ(poly_coeff(p, 5), q(0));
  EXPECT_EQ(p.degree(), 1);
}

TEST(PolyParam, ArithmeticAndEvaluation) {
  const PolyParam h = PolyParam::h();
  const PolyParam p = (PolyParam(1) + h) * (PolyParam(1) - h);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.coeff(2), q(-1));
  EXPECT_EQ(p.eval(q(3)), q(-8));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
}

TEST(PolyParam, UnitsOnlyInvertAtDegreeZero) {
  EXPECT_EQ(ScalarTraits<PolyParam>::inverse(PolyParam(q(4))), PolyParam(q(1, 4)));
  EXPECT_THROW(ScalarTraits<PolyParam>::inverse(PolyParam::h()), DomainError);
}
