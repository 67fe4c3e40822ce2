#include <doctest.h>

#include <numeric>
#include <random>

#include "sigma3/abelian.hpp"

using namespace sigma3;

namespace {

mpz_class gcd_all(const std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

// Determinantal divisors of a 3x3 matrix: gcd of the k x k minors.
std::vector<mpz_class> determinantal_divisors(const IntMatrix& m) {
  std::vector<mpz_class> d1, d2;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) d1.push_back(m(r, c));
  for (int r1 = 0; r1 < 3; ++r1)
    for (int r2 = r1 + 1; r2 < 3; ++r2)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = c1 + 1; c2 < 3; ++c2) d2.push_back(m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1));
  return {gcd_all(d1), gcd_all(d2), abs(m.determinant())};
}

}  // namespace

TEST_CASE("smith form against determinantal divisors") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> val(-20, 20);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = val(rng);
    SmithForm s = smith_normal_form(m);
    CHECK(verify_smith_form(m, s));
    auto dd = determinantal_divisors(m);
    auto diag = s.diagonal();
    mpz_class prod = 1;
    for (int k = 0; k < 3; ++k) {
      prod *= diag[k];
      CHECK(prod == dd[k]);
    }
  }
}

TEST_CASE("smith form of a rectangular matrix") {
  IntMatrix m{{2, 4, 4}, {-6, 6, 12}};
  SmithForm s = smith_normal_form(m);
  CHECK(verify_smith_form(m, s));
  auto d = s.diagonal();
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[0] * d[1] == 12);  // gcd of the 2x2 minors 36, 48, 24
}

TEST_CASE("abelian types") {
  CHECK(abelian_type(IntMatrix{{9, 0}, {0, 3}}, 3).to_string() == "21");
  CHECK(abelian_type(IntMatrix{{3, 0}, {0, 9}}, 3).to_string() == "21");
  CHECK(abelian_type(IntMatrix{{3, 3}, {0, 9}}, 3).to_string() == "21");
  CHECK(AbelianType::parse("(10)21").logs == std::vector<int>{10, 2, 1});
  CHECK(AbelianType::parse("(10)21").to_string() == "(10)21");
  CHECK(AbelianType{}.to_string() == "0");
  CHECK_THROWS(abelian_type(IntMatrix{{9, 0}}, 3));  // infinite
}

TEST_CASE("type patterns") {
  CHECK(TypePattern::parse("(e+1)21").evaluate(6).to_string() == "721");
  CHECK(TypePattern::parse("e⁺21").evaluate(6).to_string() == "721");
  CHECK(TypePattern::parse("e⁻21").evaluate(6).to_string() == "521");
  CHECK(TypePattern::parse("e11").evaluate(9).to_string() == "911");
  CHECK(TypePattern::parse("e11").evaluate(10).to_string() == "(10)11");

  auto q = parse_quartet_pattern("[(e+1)21,e11,e11;(e-1)21]");
  std::vector<AbelianType> t{AbelianType::parse("611"), AbelianType::parse("721"), AbelianType::parse("611"),
                             AbelianType::parse("521")};
  CHECK(match_quartet(t, q, 6));
  std::swap(t[0], t[3]);
  CHECK_FALSE(match_quartet(t, q, 6));  // the punctured slot is not permutable

  auto slots = parse_multiset_pattern("e2111, (e+1)211|(e+1)1111 ^3");
  std::vector<AbelianType> m{AbelianType::parse("52111"), AbelianType::parse("6211"), AbelianType::parse("61111"),
                             AbelianType::parse("6211")};
  CHECK(match_multiset(m, slots, 5));
  m.pop_back();
  CHECK_FALSE(match_multiset(m, slots, 5));
}
