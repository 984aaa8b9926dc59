#include <gtest/gtest.h>

#include "twistlab/algebra.hpp"
#include "twistlab/carrier.hpp"

using namespace twistlab;

namespace {

const AlgebraRep& sl4() {
  static const AlgebraRep r = build_sl4();
  return r;
}

const AlgebraRep& so5() {
  static const AlgebraRep r = build_so5();
  return r;
}

FieldMatrix br(const AlgebraRep& rep, const char* a, const char* b) { return commutator(rep.gen(a), rep.gen(b)); }

}  // namespace

TEST(Sl4, CartanNormalization) {
  EXPECT_EQ(br(sl4(), "H_{14}", "E_{14}"), sl4().gen("E_{14}"));
  EXPECT_EQ(br(sl4(), "H_{14}", "E_{12}"), sl4().gen("E_{12}") * FieldElem(ratio(1, 2)));
  EXPECT_EQ(br(sl4(), "H_{14}", "E_{24}"), sl4().gen("E_{24}") * FieldElem(ratio(1, 2)));
  EXPECT_TRUE((sl4().gen("E_{14}") * sl4().gen("E_{14}")).is_zero());
  EXPECT_FALSE(sl4().first_violation().has_value());
}

TEST(Sl4, Dimensions) {
  EXPECT_EQ(sl4().dim, 4u);
  EXPECT_EQ(sl4().basis.size(), 15u);
  EXPECT_EQ(sl4().root_system.roots.size(), 12u);
}

TEST(So5, PrintedCartansNormalizeTheirRoots) {
  EXPECT_EQ(br(so5(), "H_{1+2}", "E_{1+2}"), so5().gen("E_{1+2}"));
  EXPECT_EQ(br(so5(), "H_{1-2}", "E_{1-2}"), so5().gen("E_{1-2}"));
  EXPECT_EQ(br(so5(), "H_{1-2}", "E_1"), so5().gen("E_1") * FieldElem(ratio(1, 2)));
  EXPECT_EQ(br(so5(), "H_{1-2}", "E_2"), so5().gen("E_2") * FieldElem(ratio(-1, 2)));
  EXPECT_FALSE(so5().first_violation().has_value());
}

TEST(So5, MatricesAreAntisymmetricOkuboCombinations) {
  for (const auto& g : so5().basis) {
    const FieldMatrix m = so5().gen(g);
    EXPECT_EQ(m.transpose(), -m) << g;
  }
  EXPECT_EQ(so5().basis.size(), 10u);
  EXPECT_EQ(so5().dim, 5u);
}

TEST(So5, RootVectorsAreNilpotent) {
  const FieldMatrix e = so5().gen("E_{1+2}");
  EXPECT_TRUE((e * e).is_zero());
  for (const char* g : {"E_1", "E_2", "E_{1-2}", "E_{-1}"}) EXPECT_TRUE(nilpotency_index(so5().gen(g)).has_value()) << g;
}

TEST(So5, NegativeRootsPairToCartans) {
  // conjugate-transpose: E_{-a} = E_a^dagger
  for (const auto& [pos, neg] : {std::pair{"E_1", "E_{-1}"}, std::pair{"E_{1+2}", "E_{-1-2}"}}) {
    EXPECT_EQ(so5().gen(neg), so5().gen(pos).conj().transpose()) << pos;
    const FieldMatrix h = br(so5(), pos, neg);
    EXPECT_FALSE(h.is_zero()) << pos;
    EXPECT_TRUE(commutator(h, so5().gen("H_{1+2}")).is_zero()) << pos;
    EXPECT_TRUE(commutator(h, so5().gen("H_{1-2}")).is_zero()) << pos;
  }
  const AlgebraRep dual = build_so5(NegativeRootConvention::kCartanDual);
  EXPECT_EQ(commutator(dual.gen("E_{1+2}"), dual.gen("E_{-1-2}")), dual.gen("H_{1+2}"));
  EXPECT_EQ(commutator(dual.gen("E_{1-2}"), dual.gen("E_{2-1}")), dual.gen("H_{1-2}"));
}

TEST(StructureConstants, Sl4Normalization) {
  // E_12 with the sign-fixed E = -E_23 lands on E_13 with coefficient -1
  const RootNormalization norm = {{Root{0, 1, -1, 0}, SignedGenerator{"E_{23}", -1}}};
  EXPECT_EQ(structure_constant(sl4(), Root{1, -1, 0, 0}, Root{0, 1, -1, 0}, Root{1, 0, -1, 0}, norm), FieldElem(-1));
  EXPECT_EQ(structure_constant(sl4(), Root{1, -1, 0, 0}, Root{0, 1, -1, 0}, Root{1, 0, -1, 0}), FieldElem(1));
}

TEST(StructureConstants, NonRootSumVanishes) {
  EXPECT_TRUE(structure_constant(sl4(), Root{1, -1, 0, 0}, Root{1, 0, -1, 0}, Root{2, -1, -1, 0}).is_zero());
  EXPECT_TRUE(structure_constant(so5(), Root{1, 1}, Root{1, 0}, Root{2, 1}).is_zero());
}

TEST(StructureConstants, So5AgreesWithCommutator) {
  const FieldElem c = structure_constant(so5(), Root{1, 0}, Root{0, 1}, Root{1, 1});
  EXPECT_FALSE(c.is_zero());
  EXPECT_EQ(br(so5(), "E_1", "E_2"), so5().gen("E_{1+2}") * c);
}

TEST(Roots, SeriesAndSystems) {
  const RootSystem b2 = root_system_B2();
  EXPECT_EQ(b2.roots.size(), 8u);
  EXPECT_EQ(b2.series(Root{1, 1}, Root{0, -1}).size(), 3u);
  EXPECT_EQ(b2.series(Root{1, 0}, Root{1, -1}).size(), 2u);
  EXPECT_EQ(root_system_A(3).roots.size(), 12u);
  EXPECT_EQ(dot(Root{1, 1}, Root{1, -1}), Rational(0));
  EXPECT_EQ(Root::from_twice({1, -1}).to_string(), "1/2e1-1/2e2");
}

TEST(ConstituentRoots, So5) {
  const ConstituentSet s = constituent_roots(root_system_B2(), Root{1, 1});
  ASSERT_EQ(s.size(), 1u);
  const bool either = (s.pi_prime[0] == Root{0, 1} && s.pi_double_prime[0] == Root{1, 0}) ||
                      (s.pi_prime[0] == Root{1, 0} && s.pi_double_prime[0] == Root{0, 1});
  EXPECT_TRUE(either);
  const ConstituentSet o = orient_by_shift(root_system_B2(), s, Root{1, -1});
  EXPECT_EQ(o.pi_prime[0], (Root{0, 1}));
  EXPECT_EQ(o.pi_double_prime[0], (Root{1, 0}));
}

TEST(ConstituentRoots, Sl4) {
  const ConstituentSet s =
      orient_by_shift(root_system_A(3), constituent_roots(root_system_A(3), Root{1, 0, 0, -1}), Root{0, 1, -1, 0});
  ASSERT_EQ(s.size(), 2u);
  std::vector<std::pair<Root, Root>> pairs;
  for (std::size_t k = 0; k < s.size(); ++k) pairs.emplace_back(s.pi_prime[k], s.pi_double_prime[k]);
  const std::pair<Root, Root> a{Root{1, -1, 0, 0}, Root{0, 1, 0, -1}};
  const std::pair<Root, Root> b{Root{0, 0, 1, -1}, Root{1, 0, -1, 0}};
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), a), pairs.end());
  EXPECT_NE(std::find(pairs.begin(), pairs.end(), b), pairs.end());
}

TEST(ConstituentRoots, A1HasNone) {
  const RootSystem a1 = root_system_A(1);
  EXPECT_EQ(constituent_roots(a1, Root{1, -1}).size(), 0u);
}

TEST(Carrier, So5IsCoincident) {
  const CarrierValidation v = validate_carrier(so5(), carrier_config("so5"));
  for (const auto& l : v.lines) EXPECT_TRUE(l.passed()) << l.name << " " << l.note;
  EXPECT_EQ(v.kind, CarrierCase::kCoincident);
  EXPECT_EQ(*v.lambda_prime, (Root{0, 1}));
}

TEST(Carrier, Sl4IsGeneric) {
  const CarrierValidation v = validate_carrier(sl4(), carrier_config("sl4"));
  for (const auto& l : v.lines) EXPECT_TRUE(l.passed()) << l.name << " " << l.note;
  EXPECT_EQ(v.kind, CarrierCase::kGeneric);
  EXPECT_EQ(*v.lambda_tilde, (Root{0, 0, 1, -1}));
}

TEST(Carrier, EigenvalueSumTwoFails) {
  CarrierConfig c = carrier_config("so5");
  c.cartan = "H_{1+2}";
  c.b_factors = {{"E_{1+2}", 1}, {"E_{1+2}", 1}};
  const CarrierValidation v = validate_carrier(so5(), c);
  const CheckReport* line = v.line("eigenvalue sum beta_i+beta^i=1");
  ASSERT_NE(line, nullptr);
  EXPECT_EQ(line->status, Status::kFail);
  EXPECT_EQ(line->residual, "1");
  EXPECT_FALSE(v.passed());
}

TEST(Carrier, UnknownAlgebra) {
  EXPECT_THROW(carrier_config("g2"), LookupError);
  EXPECT_THROW(build_algebra("so7"), LookupError);
  EXPECT_THROW(so5().gen("E_3"), LookupError);
}
