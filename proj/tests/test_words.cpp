#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>

#include "sqrtmap/words.hpp"

using namespace sqrtmap;

namespace {

Word bin(const char* s) { return Word::binary(s); }

// Oracle: w is a proper power iff some proper divisor d of |w| is a period.
bool primitive_oracle(const std::string& w) {
  for (std::size_t d = 1; d < w.size(); ++d) {
    if (w.size() % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < w.size() && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return false;
  }
  return true;
}

std::string random_word(std::mt19937_64& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(rng() & 1 ? '1' : '0');
  return s;
}

}  // namespace

TEST_CASE("cyclic_shift examples") {
  CHECK(cyclic_shift(bin("01010010")) == bin("10100100"));
  CHECK(cyclic_shift(bin("0")) == bin("0"));
  CHECK(cyclic_shift(bin("10010")) == bin("00101"));
  CHECK_THROWS(cyclic_shift(Word()));
}

TEST_CASE("conjugates examples") {
  auto c = conjugates(bin("01"));
  REQUIRE(c.size() == 2);
  CHECK(c[0] == bin("01"));
  CHECK(c[1] == bin("10"));
  auto d = conjugates(bin("00"));
  CHECK(d == std::vector<Word>{bin("00"), bin("00")});
  auto e = conjugates(bin("1001001010010"));
  CHECK(e.size() == 13);
  // L of the reversed Fibonacci word is one of its conjugates.
  CHECK(std::find(e.begin(), e.end(), swap_first_two(bin("1001001010010"))) != e.end());
  CHECK(std::find(e.begin(), e.end(), bin("0100101001001")) != e.end());
}

TEST_CASE("is_primitive examples") {
  CHECK_FALSE(is_primitive(bin("0101")));
  CHECK(is_primitive(bin("01010010")));
  CHECK(is_primitive(bin("0")));
}

TEST_CASE("lex_less examples and prefix convention") {
  CHECK(lex_less(bin("001"), bin("010")));
  CHECK_FALSE(lex_less(bin("01"), bin("01")));
  CHECK(lex_less(bin("01"), bin("0100")));
  CHECK_FALSE(lex_less(bin("0100"), bin("01")));
}

TEST_CASE("swap_first_two examples") {
  CHECK(swap_first_two(bin("01010010")) == bin("10010010"));
  CHECK(swap_first_two(bin("1001001010010")) == bin("0101001010010"));
  CHECK_THROWS(swap_first_two(bin("0")));
}

TEST_CASE("drop_suffix examples") {
  CHECK(drop_suffix(bin("01001"), bin("01")) == bin("010"));
  CHECK(drop_suffix(bin("0110"), Word()) == bin("0110"));
  CHECK(drop_suffix(bin("0110"), bin("0110")).empty());
  CHECK_THROWS(drop_suffix(bin("0110"), bin("11")));
}

TEST_CASE("minimal_period examples") {
  CHECK(minimal_period(bin("01010")) == 2);
  CHECK(minimal_period(bin("010100100101001001010010")) == 8);
  CHECK(minimal_period(bin("0")) == 1);
}

TEST_CASE("alphabets do not mix") {
  CHECK_THROWS_AS(Word::binary("01S"), alphabet_error);
  CHECK_THROWS_AS(Word::blocks("S0"), alphabet_error);
  CHECK_THROWS_AS(bin("01") + Word::blocks("SL"), alphabet_error);
  CHECK_THROWS_AS(is_conjugate(bin("01"), Word::blocks("SL")), alphabet_error);
  CHECK(rotate(Word::blocks("LSS"), 1) == Word::blocks("SSL"));
}

TEST_CASE("properties on random words") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 24;
    const Word w = bin(random_word(rng, n).c_str());
    // |w| cyclic shifts give back w.
    Word x = w;
    for (std::size_t i = 0; i < n; ++i) x = cyclic_shift(x);
    CHECK(x == w);
    CHECK(is_primitive(w) == primitive_oracle(w.str()));
    // Imprimitive iff the least period properly divides the length.
    const std::size_t p = minimal_period(w);
    CHECK(is_primitive(w) == !(p < n && n % p == 0));
    if (n >= 2) CHECK(swap_first_two(swap_first_two(w)) == w);
    // Equal-length order agrees with comparing binary numbers.
    const Word v = bin(random_word(rng, n).c_str());
    CHECK(lex_less(w, v) == (std::stoull(w.str(), nullptr, 2) < std::stoull(v.str(), nullptr, 2)));
    CHECK((lex_less(w, v) || lex_less(v, w) || w == v));
    CHECK_FALSE((lex_less(w, v) && lex_less(v, w)));
    // Every conjugate is a factor of ww.
    for (const Word& c : conjugates(w)) CHECK((w + w).str().find(c.str()) != std::string::npos);
  }
}
