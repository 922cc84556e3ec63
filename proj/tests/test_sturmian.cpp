#include <doctest.h>

#include <random>

#include "sqrtmap/sturmian.hpp"

using namespace sqrtmap;

namespace {

BigRational q(long p, long d) {
  BigRational x(p, d);
  x.canonicalize();
  return x;
}

// Oracle: evaluate [a0; a1, ..., ak] from the innermost quotient outwards.
BigRational nested_value(const std::vector<long>& a) {
  BigRational x = a.back();
  for (std::size_t i = a.size() - 1; i-- > 0;) x = BigRational(a[i]) + 1 / x;
  x.canonicalize();
  return x;
}

const std::vector<long> fib(20, 1);

}  // namespace

TEST_CASE("continued fraction parsing and canonical form") {
  const auto cf = ContinuedFraction::parse("[0;2,1,1,1]");
  CHECK(cf.quotients() == std::vector<long>{0, 2, 1, 1, 1});
  CHECK(cf.value() == q(3, 8));
  CHECK(cf.canonical().quotients() == std::vector<long>{0, 2, 1, 2});
  CHECK(ContinuedFraction::of(q(3, 8)).quotients() == std::vector<long>{0, 2, 1, 2});
  CHECK(parse_rational("6/16") == q(3, 8));
  CHECK_THROWS(ContinuedFraction::parse("[0;2,,1]"));
  CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("convergents examples") {
  CHECK(convergents(ContinuedFraction::parse("[0;2,1,1,1]"), 4).back() == q(3, 8));
  CHECK(convergents(ContinuedFraction::parse("[0;2]"), 1).back() == q(1, 2));
  CHECK(convergents(ContinuedFraction::parse("[0;2,1,1,1,1,1]"), 6).back() == q(8, 21));
}

TEST_CASE("convergents agree with nested evaluation") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<long> a{0};
    const int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) a.push_back(1 + static_cast<long>(rng() % 5));
    const auto conv = convergents(ContinuedFraction(a), a.size() - 1);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(conv[k] == nested_value(std::vector<long>(a.begin(), a.begin() + k + 1)));
    }
  }
}

TEST_CASE("semiconvergents examples") {
  const auto cf = ContinuedFraction::parse("[0;2,3,1]");
  const auto c = convergents(cf, 2);
  const auto s = semiconvergents(cf, 2);
  REQUIRE(s.size() == 2);
  // p_0/q_0 = 0/1 and p_1/q_1 = 1/2.
  CHECK(s[0] == q(0 + 1, 1 + 2));
  CHECK(s[1] == q(0 + 2, 1 + 4));
  CHECK(semiconvergents(ContinuedFraction::parse("[0;2,1,1]"), 2).empty());
  CHECK(semiconvergents(ContinuedFraction::parse("[0;3,2,1]"), 2).front() == q(1, 4));
}

TEST_CASE("standard words examples") {
  CHECK(standard_word(fib, 4) == Word::binary("01001010"));
  CHECK(standard_word(fib, 0) == Word::binary("0"));
  CHECK(standard_word(fib, -1) == Word::binary("1"));
  CHECK(standard_word(fib, 5) == Word::binary("0100101001001"));
  CHECK(reversed_standard_word(fib, 4) == Word::binary("01010010"));
  CHECK(reversed_standard_word(fib, 5) == Word::binary("1001001010010"));
  CHECK(reversed_standard_word(fib, 0) == Word::binary("0"));
}

TEST_CASE("standard words: lengths, last letters, primitivity") {
  for (const std::vector<long>& d : {fib, std::vector<long>{1, 2, 1, 3, 1, 1, 2, 1}, std::vector<long>{2, 1, 1, 1, 1, 1}}) {
    std::vector<long> a{0, d[0] + 1};
    a.insert(a.end(), d.begin() + 1, d.end());
    const auto conv = convergents(ContinuedFraction(a), a.size() - 1);
    for (int k = 1; k <= static_cast<int>(d.size()); ++k) {
      const Word s = standard_word(d, k);
      CHECK(s.size() == conv[k].get_den().get_ui());
      CHECK(is_primitive(s));
      if (k >= 2) CHECK(s[s.size() - 1] != s[s.size() - 2]);
    }
  }
}

TEST_CASE("rotation codings") {
  const RotationSystem sys(q(3, 8));
  CHECK(rotation_coding(sys, 1 - q(3, 8), 1) == Word::binary("1"));
  CHECK(rotation_coding(sys, 0, 1) == Word::binary("0"));
  // Every coding is 8-periodic with period conjugate to the standard word.
  for (long i = 0; i < 8; ++i) {
    const Word w = rotation_coding(sys, q(i, 8), 24);
    CHECK(has_period(w.view(), 8));
    CHECK(is_conjugate(w.prefix(8), standard_word(fib, 4)));
  }
  const RotationSystem right(q(3, 8), Convention::right_closed);
  CHECK(rotation_coding(right, 0, 1) == Word::binary("1"));
  CHECK(rotation_coding(right, 1 - q(3, 8), 1) == Word::binary("0"));
  CHECK_THROWS(RotationSystem(q(1, 2)));
}

TEST_CASE("factor intervals") {
  for (Convention conv : {Convention::left_closed, Convention::right_closed}) {
    const RotationSystem sys(q(3, 8), conv);
    const auto i0 = factor_interval(sys, Word::binary("0"));
    REQUIRE(i0);
    CHECK(i0->length() == q(5, 8));
    CHECK(factor_interval(sys, Word::binary("1"))->length() == q(3, 8));
    CHECK_FALSE(factor_interval(sys, Word::binary("11")));
    // Level-7 intervals of S and L have denominators dividing 8.
    for (const char* w : {"0101001", "1001001"}) {
      auto fi = factor_interval(sys, Word::binary(w));
      REQUIRE(fi);
      CHECK(8 % fi->length().get_den().get_ui() == 0);
    }
    // Intervals at each level partition the circle and contain exactly the intercepts coding their factor.
    for (std::size_t n = 1; n < 8; ++n) {
      BigRational total = 0;
      for (const auto& li : level_intervals(sys, n)) total += li.arc.hi - li.arc.lo;
      CHECK(total == 1);
      for (long i = 0; i < 16; ++i) {
        const BigRational rho = q(i, 16);
        const Word w = rotation_coding(sys, rho, n);
        CHECK(factor_interval(sys, w)->contains(rho));
      }
    }
  }
}

TEST_CASE("psi") {
  const RotationSystem sys(q(3, 8));
  CHECK(psi(sys, 1 - q(3, 8)) == 1 - q(3, 8));
  CHECK(psi(sys, q(1, 8)) == q(3, 8));
  CHECK(psi(sys, 0) == q(5, 16));
  // Distance to 1 - a halves within the containing interval.
  for (long i = 1; i < 64; ++i) {
    const BigRational rho = q(i, 64), b = 1 - q(3, 8);
    const BigRational before = rho < b ? b - rho : rho - b;
    const BigRational y = psi(sys, rho);
    const BigRational after = y < b ? b - y : y - b;
    CHECK(after * 2 == before);
  }
}

TEST_CASE("lexicographic order of level intervals") {
  CHECK(verify_lex_interval_order(RotationSystem(q(3, 8)), 1));
  CHECK(verify_lex_interval_order(RotationSystem(q(3, 8)), 7));
  CHECK(verify_lex_interval_order(RotationSystem(q(5, 13)), 5));
  CHECK(verify_lex_interval_order(RotationSystem(q(8, 21), Convention::right_closed), 20));
}
