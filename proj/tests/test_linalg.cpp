#include <random>

#include <gtest/gtest.h>

#include "twistlab/algebra.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

namespace {

FieldMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  FieldMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = FieldElem(v);
    ++i;
  }
  return m;
}

FieldMatrix random_matrix(std::mt19937& gen, std::size_t n) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = FieldElem(ratio(num(gen), den(gen)), ratio(num(gen), den(gen)), ratio(num(gen), den(gen)), 0);
  return m;
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(FieldMatrix::identity(2), FieldMatrix::identity(3)), FieldMatrix::identity(6));
}

TEST(Kron, MixedProduct) {
  std::mt19937 gen(20240611);
  for (int trial = 0; trial < 5; ++trial) {
    const FieldMatrix a = random_matrix(gen, 2), b = random_matrix(gen, 2);
    const FieldMatrix c = random_matrix(gen, 2), d = random_matrix(gen, 2);
    EXPECT_EQ(kron(a, b) * kron(c, d), kron(a * c, b * d));
  }
}

TEST(Kron, EntryLayout) {
  const FieldMatrix a = from_rows({{1, 2}, {3, 4}});
  const FieldMatrix b = from_rows({{0, 5}, {6, 7}});
  const FieldMatrix k = kron(a, b);
  EXPECT_EQ(k(0, 1), FieldElem(5));
  EXPECT_EQ(k(3, 2), FieldElem(24));
  EXPECT_EQ(k(2, 3), FieldElem(20));
}

TEST(Rank, KroneckerOfRootVectors) {
  const AlgebraRep so5 = build_so5();
  const FieldMatrix e2 = so5.gen("E_2");
  const FieldMatrix e1 = so5.gen("E_1");
  const FieldMatrix k = kron(e2, e1);
  EXPECT_EQ(k.rows(), 25u);
  EXPECT_EQ(rank(k), rank(e2) * rank(e1));
  EXPECT_EQ(rank(e2), 2u);
}

TEST(Rank, Basics) {
  EXPECT_EQ(rank(FieldMatrix::identity(4)), 4u);
  EXPECT_EQ(rank(FieldMatrix(3, 3)), 0u);
  EXPECT_EQ(rank(from_rows({{1, 2}, {2, 4}})), 1u);
}

TEST(Exp, Trivial) {
  EXPECT_EQ(exp_nilpotent(from_rows({{0, 1}, {0, 0}})), from_rows({{1, 1}, {0, 1}}));
  EXPECT_EQ(exp_nilpotent(FieldMatrix(3, 3)), FieldMatrix::identity(3));
}

TEST(Exp, NonNilpotentIsGuarded) {
  EXPECT_THROW(exp_nilpotent(FieldMatrix::identity(2), "I"), GuardError);
  EXPECT_THROW(exp_nilpotent(FieldMatrix(2, 3)), DomainError);
}

TEST(Exp, JordanianExponentIsInvertible) {
  const AlgebraRep so5 = build_so5();
  const FieldMatrix sigma = log1p_nilpotent(so5.gen("E_{1+2}"));
  const FieldMatrix x = kron(so5.gen("H_{1+2}"), sigma);
  ASSERT_TRUE(nilpotency_index(x).has_value());
  EXPECT_EQ(exp_nilpotent(x) * exp_nilpotent(-x), FieldMatrix::identity(25));
}

TEST(Log, Trivial) {
  EXPECT_EQ(log_unipotent(from_rows({{1, 1}, {0, 1}})), from_rows({{0, 1}, {0, 0}}));
  EXPECT_TRUE(log_unipotent(FieldMatrix::identity(4)).is_zero());
  EXPECT_THROW(log_unipotent(from_rows({{2, 0}, {0, 1}})), GuardError);
}

TEST(Log, TruncatesAtNilpotencyIndex) {
  const AlgebraRep so5 = build_so5();
  const FieldMatrix e = so5.gen("E_{1+2}");
  const auto index = nilpotency_index(e);
  ASSERT_TRUE(index.has_value());
  EXPECT_LE(*index, 5u);
  FieldMatrix series(5, 5);
  FieldMatrix p = FieldMatrix::identity(5);
  for (std::size_t k = 1; k < *index; ++k) {
    p = p * e;
    series += p * FieldElem(ratio(k % 2 ? 1 : -1, static_cast<long>(k)));
  }
  EXPECT_EQ(log_unipotent(FieldMatrix::identity(5) + e), series);
  EXPECT_EQ(exp_nilpotent(series), FieldMatrix::identity(5) + e);
}

TEST(Invert, Identity) {
  EXPECT_EQ(invert(FieldMatrix::identity(3)), FieldMatrix::identity(3));
  EXPECT_THROW(invert(from_rows({{1, 2}, {2, 4}})), DomainError);
}

TEST(Invert, UnipotentAgreesWithGroupInverse) {
  const AlgebraRep so5 = build_so5();
  const FieldMatrix u = exp_nilpotent(kron(so5.gen("E_2"), so5.gen("E_1")) * FieldElem(-1));
  EXPECT_EQ(invert(u), exp_nilpotent(-log_unipotent(u)));
}

TEST(Invert, FullTwistMatrix) {
  const AlgebraRep so5 = build_so5();
  const auto f = evaluate_twist(preset_chain("so5:BJEJ"), so5);
  const FieldMatrix inv = invert(f.twist);
  EXPECT_EQ(f.twist * inv, FieldMatrix::identity(25));
  EXPECT_EQ(inv, f.inverse);
}

TEST(Invert, FieldEntries) {
  FieldMatrix a(2, 2);
  a(0, 0) = FieldElem::i();
  a(0, 1) = FieldElem::sqrt2();
  a(1, 0) = FieldElem(1);
  a(1, 1) = FieldElem(1);
  EXPECT_EQ(a * invert(a), FieldMatrix::identity(2));
}

TEST(FlipAndK, ActionOnBasis) {
  const FieldMatrix p = build_P(2);
  // e1 (x) e2 is basis index 1, e2 (x) e1 is index 2
  FieldMatrix v(4, 1);
  v(1, 0) = 1;
  FieldMatrix w(4, 1);
  w(2, 0) = 1;
  EXPECT_EQ(p * v, w);
}

TEST(FlipAndK, Relations) {
  const FieldMatrix p = build_P(5);
  const FieldMatrix k = build_K(5);
  EXPECT_EQ(p * p, FieldMatrix::identity(25));
  EXPECT_EQ(k * k, k * FieldElem(5));
  EXPECT_EQ(p * k, k);
  EXPECT_EQ(partial_transpose_first(p, 5, 5), k);
  EXPECT_THROW(build_P(0), DomainError);
}

TEST(PartialTrace, FlipTracesToIdentity) {
  EXPECT_EQ(partial_trace_first(build_P(3), 3), FieldMatrix::identity(3));
  const FieldMatrix a = from_rows({{1, 2}, {3, 4}});
  const FieldMatrix b = from_rows({{0, 5}, {6, 7}});
  EXPECT_EQ(partial_trace_first(kron(a, b), 2), b * FieldElem(5));
}

TEST(Nilpotency, Index) {
  EXPECT_EQ(nilpotency_index(from_rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})), 3u);
  EXPECT_FALSE(nilpotency_index(FieldMatrix::identity(2)).has_value());
}

TEST(PolyMatrix, CoefficientExtraction) {
  PolyMatrix m(1, 2);
  m(0, 0) = PolyParam(std::vector<FieldElem>{1, 2, 3});
  m(0, 1) = PolyParam::h();
  const FieldMatrix c1 = coefficient(m, 1);
  EXPECT_EQ(c1(0, 0), FieldElem(2));
  EXPECT_EQ(c1(0, 1), FieldElem(1));
  EXPECT_EQ(evaluate_at(m, FieldElem(2))(0, 0), FieldElem(17));
}
