#include <filesystem>

#include <gtest/gtest.h>

#include "twistlab/transcription.hpp"

using namespace twistlab;

namespace {

const AlgebraRep& so5() {
  static const AlgebraRep r = build_so5();
  return r;
}

FieldMatrix eval(const Expr& e) { return evaluate(e, so5().rho()); }

FieldMatrix parsed(const std::string& text) {
  SymbolTable s = SymbolTable::for_algebra(so5());
  return eval(parse_expr(text, s));
}

const std::filesystem::path kData = std::filesystem::path(TWISTLAB_DATA_DIR) / "coproducts";

}  // namespace

TEST(Grammar, ScalarsAndArithmetic) {
  const FieldMatrix id = FieldMatrix::identity(5);
  EXPECT_EQ(parsed("1"), id);
  EXPECT_EQ(parsed("-3/4"), id * FieldElem(ratio(-3, 4)));
  EXPECT_EQ(parsed("i r2"), id * FieldElem::i_sqrt2());
  EXPECT_EQ(parsed("2 - 1/2 + (1 + 1)"), id * FieldElem(ratio(7, 2)));
}

TEST(Grammar, GeneratorSpellings) {
  EXPECT_EQ(parsed("E_{1+2}"), so5().gen("E_{1+2}"));
  EXPECT_EQ(parsed("E_1+2"), so5().gen("E_1") + FieldMatrix::identity(5) * FieldElem(2));
  EXPECT_EQ(parsed("E_{-1-2}"), so5().gen("E_{-1-2}"));
  SymbolTable t = SymbolTable::for_algebra(build_sl4());
  EXPECT_EQ(evaluate(parse_expr("E_12", t), build_sl4().rho()), build_sl4().gen("E_{12}"));
}

TEST(Grammar, ProductsAndPowers) {
  const FieldMatrix e1 = so5().gen("E_1");
  const FieldMatrix h = so5().gen("H_{1-2}");
  EXPECT_EQ(parsed("E_1^2"), e1 * e1);
  EXPECT_EQ(parsed("E_1^{2}"), e1 * e1);
  EXPECT_EQ(parsed("H_{1-2} E_1"), h * e1);
  EXPECT_EQ(parsed("H_{1-2}*E_1"), h * e1);
  EXPECT_EQ(parsed("-H_{1-2} E_1 + E_1 H_{1-2}"), commutator(e1, h));
}

TEST(Grammar, Functions) {
  const FieldMatrix e = so5().gen("E_{1+2}");
  const FieldMatrix sigma_m = log1p_nilpotent(e);
  EXPECT_EQ(parsed("sigma_{1+2}"), sigma_m);
  EXPECT_EQ(parsed("sigma[E_{1+2}]"), sigma_m);
  EXPECT_EQ(parsed("log1p(E_{1+2})"), sigma_m);
  EXPECT_EQ(parsed("exp(sigma_{1+2})"), FieldMatrix::identity(5) + e);
  EXPECT_EQ(parsed("exp(-1/2 (sigma_{1+2} + sigma_{1+2}))"), invert(FieldMatrix::identity(5) + e));
}

TEST(Grammar, DeformedGeneratorMacros) {
  const Expr e_bo = deformed_generator(so5(), carrier_config("so5"));
  EXPECT_EQ(parsed("E_BO"), eval(e_bo));
  EXPECT_EQ(parsed("E_{BO}"), eval(e_bo));
  EXPECT_EQ(parsed("sigma_BO"), log1p_nilpotent(eval(e_bo)));
}

TEST(Grammar, Errors) {
  SymbolTable s = SymbolTable::for_algebra(so5());
  EXPECT_THROW(parse_expr("E_7", s), ParseError);
  EXPECT_THROW(parse_expr("(E_1", s), ParseError);
  EXPECT_THROW(parse_expr("E_1 +", s), ParseError);
  EXPECT_THROW(parse_expr("1/0", s), ParseError);
  EXPECT_THROW(parse_expr("sigma_7", s), ParseError);
}

TEST(Terms, TensorSplit) {
  SymbolTable s = SymbolTable::for_algebra(so5());
  const auto [l, r] = parse_term("E_2 (x) E_1 exp(-1/2 sigma_{1+2})", s);
  EXPECT_EQ(eval(l), so5().gen("E_2"));
  const auto [l2, r2] = parse_term("E_2 \xE2\x8A\x97 E_1", s);
  EXPECT_EQ(eval(r2), so5().gen("E_1"));
  EXPECT_THROW(parse_term("E_2 E_1", s), ParseError);
  EXPECT_THROW(parse_term("E_2 (x) E_1 (x) E_1", s), ParseError);
  EXPECT_THROW(parse_term(" (x) E_1", s), ParseError);
}

TEST(Files, HeaderAndTerms) {
  const ExpectedCoproduct x = parse_transcription(std::string("chain: so5:EJ\n"
                                                              "generator: E_{1+2}\n"
                                                              "# comment\n"
                                                              "term: E_{1+2} (x) exp(sigma_{1+2})\n"
                                                              "term: 1 (x) E_{1+2}\n"),
                                                  "inline");
  EXPECT_EQ(x.chain, "so5:EJ");
  EXPECT_EQ(x.summands.size(), 2u);
  EXPECT_FALSE(x.long_formula);
  EXPECT_TRUE(compare_coproduct(preset_chain("so5:EJ"), x, so5()).passed());
}

TEST(Files, ErrorsCarryLineNumbers) {
  try {
    parse_transcription(std::string("chain: so5:EJ\ngenerator: E_1\nterm: E_1 (x) E_9\n"), "bad.txt");
    FAIL() << "expected a ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.txt:3"), std::string::npos);
  }
  EXPECT_THROW(parse_transcription(std::string("chain: so5:EJ\nterm: 1 (x) E_1\n"), "x"), ParseError);
  EXPECT_THROW(parse_transcription(std::string("chain: so5:EJ\ngenerator: E_1\n"), "x"), ParseError);
  EXPECT_THROW(parse_transcription(std::string("chain: g2:EJ\ngenerator: E_1\nterm: 1 (x) E_1\n"), "x"),
               ParseError);
  EXPECT_THROW(parse_transcription(std::string("chain: so5:EJ\ncolour: red\n"), "x"), ParseError);
  EXPECT_THROW(parse_transcription(std::string("chain: so5:EJ\nlong: maybe\n"), "x"), ParseError);
  EXPECT_THROW(load_transcription("/nonexistent/file.txt"), ParseError);
}

TEST(Data, EJTableHasSixFormulasThatAllReproduce) {
  const auto table = load_transcriptions(kData, "so5:EJ");
  ASSERT_EQ(table.size(), 6u);
  const auto f = evaluate_twist(preset_chain("so5:EJ"), so5());
  for (const auto& x : table) {
    EXPECT_FALSE(x.long_formula) << x.source;
    const CheckReport r = compare_coproduct(f, preset_chain("so5:EJ"), x, so5());
    EXPECT_TRUE(r.passed()) << x.source << " residual " << r.residual;
  }
}

TEST(Data, BJEJShortAndLongFormulas) {
  const auto table = load_transcriptions(kData, "so5:BJEJ");
  ASSERT_EQ(table.size(), 11u);
  const TwistChain chain = preset_chain("so5:BJEJ");
  const auto f = evaluate_twist(chain, so5());
  std::size_t long_count = 0;
  for (const auto& x : table) {
    long_count += x.long_formula;
    const CheckReport r = compare_coproduct(f, chain, x, so5());
    EXPECT_TRUE(r.passed()) << x.source << " residual " << r.residual;
  }
  EXPECT_EQ(long_count, 4u);
}

TEST(Data, LongFormulasDependOnNegativeRootNormalization) {
  // expressions refer to generators by name, so the same table evaluates
  // under either so(5) normalization
  const AlgebraRep dual = build_so5(NegativeRootConvention::kCartanDual);
  const TwistChain chain = preset_chain("so5:BJEJ");
  const auto f = evaluate_twist(chain, dual);
  std::vector<std::string> failing;
  for (const auto& x : load_transcriptions(kData, "so5:BJEJ")) {
    const CheckReport r = compare_coproduct(f, chain, x, dual);
    if (!x.long_formula) EXPECT_TRUE(r.passed()) << x.generator;
    if (r.status == Status::kFail) failing.push_back(x.generator);
  }
  std::sort(failing.begin(), failing.end());
  EXPECT_EQ(failing, (std::vector<std::string>{"E_{-1-2}", "E_{-1}", "E_{2-1}"}));
}

TEST(Data, MissingChainDirectoryIsEmpty) {
  EXPECT_TRUE(load_transcriptions(kData, "sl4:EJ").empty());
}
