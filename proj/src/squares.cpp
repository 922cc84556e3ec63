#include "sqrtmap/squares.hpp"

#include <stdexcept>
#include <string>

namespace sqrtmap {

namespace {

Word zeros(int n) { return Word::binary(std::string(static_cast<std::size_t>(n), '0')); }

}  // namespace

SquareAlphabet::SquareAlphabet(int a, int b) : a_(a), b_(b) {
  if (a < 1) throw std::invalid_argument("parameter a must be at least 1");
  if (b < 0) throw std::invalid_argument("parameter b must be non-negative");
  const Word zero = Word::binary("0"), one = Word::binary("1");
  const Word ten_a = one + zeros(a);
  roots_[0] = zero;
  roots_[1] = zero + one + zeros(a - 1);
  roots_[2] = zero + one + zeros(a);
  roots_[3] = ten_a;
  roots_[4] = one + zeros(a + 1) + ten_a.power(static_cast<std::size_t>(b));
  roots_[5] = one + zeros(a + 1) + ten_a.power(static_cast<std::size_t>(b) + 1);
  for (int i = 0; i < 6; ++i) squares_[i] = roots_[i] + roots_[i];
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j && squares_[j].str().starts_with(squares_[i].str())) {
        throw std::logic_error("minimal squares are not prefix-free");
      }
    }
  }
}

std::optional<int> SquareAlphabet::match(std::string_view w) const {
  for (int i = 0; i < 6; ++i) {
    if (w.starts_with(squares_[i].view())) return i + 1;
  }
  return std::nullopt;
}

SquareAlphabet build_alphabet(int a, int b) { return SquareAlphabet(a, b); }

std::optional<int> minimal_square_prefix(const SquareAlphabet& alph, const Word& w) {
  if (w.alphabet() != Alphabet::binary && !w.empty()) throw alphabet_error("binary word expected");
  return alph.match(w.view());
}

Factorization factor_minimal_squares(const SquareAlphabet& alph, const Word& w) {
  if (w.alphabet() != Alphabet::binary && !w.empty()) throw alphabet_error("binary word expected");
  Factorization f;
  std::string_view rest = w.view();
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto i = alph.match(rest.substr(pos));
    if (!i) break;
    f.roots.push_back(*i);
    pos += alph.square(*i).size();
  }
  f.stop = pos;
  f.complete = pos == rest.size();
  return f;
}

bool in_Pi(const SquareAlphabet& alph, const Word& w) {
  return !w.empty() && factor_minimal_squares(alph, w).complete;
}

Word sqrt_finite(const SquareAlphabet& alph, const Word& w) {
  Factorization f = factor_minimal_squares(alph, w);
  if (w.empty() || !f.complete) {
    throw std::invalid_argument("word is not a product of minimal squares (stops at offset " +
                                std::to_string(f.stop) + ")");
  }
  Word out = Word::binary("");
  for (int i : f.roots) out += alph.root(i);
  return out;
}

}  // namespace sqrtmap
