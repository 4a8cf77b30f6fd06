#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "random_ast.hpp"

using namespace fpure;
using namespace fpure::lang;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InputError parse_error(const std::string& src) {
  try {
    parse(src);
  } catch (const InputError& e) {
    return e;
  }
  ADD_FAILURE() << "expected an input error for: " << src;
  return InputError(InputError::Kind::syntax, 0, 0, "none");
}

}  // namespace

TEST(Parse, CubicNormalizesSigns) {
  auto file = parse("p=2; ring S=[a,b,c]; ideal I = a^3 + a*b*c - b^2;");
  ASSERT_EQ(file.characteristic(), 2u);
  const IdealDecl* I = file.find<IdealDecl>("I");
  ASSERT_NE(I, nullptr);
  ASSERT_EQ(I->generators.size(), 1u);
  EXPECT_EQ(I->generators[0].to_string(), "a^3 + a*b*c + b^2");
  EXPECT_NE(print(file).find("b^2"), std::string::npos);
  EXPECT_EQ(print(file).find("-"), std::string::npos);
}

TEST(Parse, ZeroIdeal) {
  auto file = parse("p=3; ring S=[x]; ideal Z = 0;");
  EXPECT_TRUE(file.find<IdealDecl>("Z")->generators.empty());
  EXPECT_TRUE(file.ideal("Z").is_zero());
  EXPECT_NE(print(file).find("ideal Z = 0;"), std::string::npos);
}

TEST(Parse, PairWithExactRational) {
  auto file = parse("p=5; ring S=[x,y]; ideal B = x, y; pair A = (B, 5/6);");
  const PairDecl* A = file.find<PairDecl>("A");
  ASSERT_NE(A, nullptr);
  ASSERT_EQ(A->factors.size(), 1u);
  EXPECT_EQ(A->factors[0].ideal, "B");
  EXPECT_EQ(A->factors[0].exponent, Rational(BigInt(5), BigInt(6)));
  EXPECT_EQ(parse("p=5; ring S=[x,y]; ideal B = x; pair A = (B, 10/12);").find<PairDecl>("A")->factors[0].exponent,
            Rational(BigInt(5), BigInt(6)));
}

TEST(Parse, OrdersAndQuotients) {
  auto file = parse("p=7; ring S=[x,y,z] order lex; ideal I = x*y - z; quotient R = S / I; check_fpure R;");
  EXPECT_EQ(file.find<RingDecl>("S")->ring->order().kind, OrderKind::lex);
  const QuotientDecl* R = file.find<QuotientDecl>("R");
  ASSERT_NE(R, nullptr);
  EXPECT_EQ(R->ideal_name, "I");
  auto cmd = std::get<Command>(file.statements.back());
  EXPECT_EQ(cmd.name, "check_fpure");
  EXPECT_EQ(cmd.positional(), (std::vector<std::string>{"R"}));
}

TEST(Parse, CommandOptions) {
  auto file = parse("p=2; ring S=[x,y]; ideal I = x*y; quotient R = S / I; splitting_prime R, emax=4;");
  auto cmd = std::get<Command>(file.statements.back());
  EXPECT_EQ(cmd.option("emax"), "4");
  EXPECT_FALSE(cmd.option("window").has_value());
}

TEST(Print, ZeroAndSigns) {
  auto file = parse("p=2; ring S=[b]; ideal Z = 0; ideal J = -b^2;");
  std::string text = print(file);
  EXPECT_NE(text.find("ideal Z = 0;"), std::string::npos);
  EXPECT_NE(text.find("ideal J = b^2;"), std::string::npos);
  auto f7 = parse("p=7; ring S=[x]; ideal J = -3*x + 9;");
  EXPECT_NE(print(f7).find("4*x + 2"), std::string::npos);
}

TEST(RoundTrip, SuiteFiles) {
  std::size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FPURE_PROBLEMS_DIR)) {
    if (entry.path().extension() != ".fpure") continue;
    std::string src = slurp(entry.path());
    ProblemFile file;
    try {
      file = parse(src);
    } catch (const InputError& e) {
      // the deliberately invalid sample
      EXPECT_EQ(e.kind(), InputError::Kind::semantic) << entry.path();
      continue;
    }
    ++n;
    std::string once = print(file);
    EXPECT_EQ(parse(once), file) << entry.path();
    EXPECT_EQ(print(parse(once)), once) << entry.path();
  }
  EXPECT_GE(n, 8u);
}

TEST(RoundTrip, RandomAsts) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 500; ++i) {
    ProblemFile file = fpure::testing::random_problem_file(rng);
    std::string text = print(file);
    ProblemFile back;
    ASSERT_NO_THROW(back = parse(text)) << text;
    ASSERT_EQ(back, file) << text;
  }
}

TEST(Errors, NonPrimeCharacteristic) {
  auto e = parse_error("p=4;");
  EXPECT_EQ(e.kind(), InputError::Kind::semantic);
  EXPECT_EQ(e.line(), 1u);
  EXPECT_NE(std::string(e.what()).find("4 is not prime"), std::string::npos);
}

TEST(Errors, UnknownName) {
  auto e = parse_error("p=2;\nring S=[x];\nideal I = x*q;");
  EXPECT_EQ(e.kind(), InputError::Kind::semantic);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 13u);
  auto c = parse_error("p=2; ring S=[x]; check_fpure R;");
  EXPECT_EQ(c.kind(), InputError::Kind::semantic);
}

TEST(Errors, NegativeExponent) {
  auto e = parse_error("p=2; ring S=[x]; ideal I = x^-1;");
  EXPECT_EQ(e.kind(), InputError::Kind::semantic);
}

TEST(Errors, Redeclaration) {
  auto e = parse_error("p=2; ring S=[x]; ideal I = x; ideal I = x^2;");
  EXPECT_EQ(e.kind(), InputError::Kind::semantic);
  EXPECT_EQ(e.column(), 37u);
  EXPECT_EQ(parse_error("p=2; p=3;").kind(), InputError::Kind::semantic);
}

TEST(Errors, JuxtapositionNeedsStarForLongNames) {
  auto e = parse_error("p=2; ring S=[a1, b2]; ideal I = a1 b2;");
  EXPECT_EQ(e.kind(), InputError::Kind::syntax);
  EXPECT_NE(std::string(e.what()).find("juxtaposition"), std::string::npos);
  auto ok = parse("p=2; ring S=[x, y]; ideal I = x y;");
  EXPECT_EQ(ok.find<IdealDecl>("I")->generators[0].to_string(), "x*y");
}

TEST(Errors, SyntaxPositions) {
  auto e = parse_error("p=2;\nring S=[x;");
  EXPECT_EQ(e.kind(), InputError::Kind::syntax);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 10u);
  EXPECT_EQ(parse_error("p=2; frobnicate;").kind(), InputError::Kind::syntax);
  EXPECT_EQ(parse_error("p 2;").kind(), InputError::Kind::syntax);
}

TEST(Errors, Deterministic) {
  const std::string bad = "p=3; ring S=[x,y]; ideal I = x^2 +* y;";
  std::string first = parse_error(bad).what();
  for (int i = 0; i < 5; ++i) EXPECT_EQ(parse_error(bad).what(), first);
}
