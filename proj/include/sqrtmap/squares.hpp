#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "sqrtmap/words.hpp"

namespace sqrtmap {

// The six minimal square roots S1..S6 for parameters (a, b).
class SquareAlphabet {
 public:
  SquareAlphabet(int a, int b);

  int a() const { return a_; }
  int b() const { return b_; }
  // i ranges over 1..6.
  const Word& root(int i) const { return roots_.at(i - 1); }
  const Word& square(int i) const { return squares_.at(i - 1); }
  std::size_t max_square_length() const { return squares_[5].size(); }
  // Index of the unique S_i with S_i^2 a prefix of w.
  std::optional<int> match(std::string_view w) const;

 private:
  int a_;
  int b_;
  std::array<Word, 6> roots_;
  std::array<Word, 6> squares_;
};

SquareAlphabet build_alphabet(int a, int b);

std::optional<int> minimal_square_prefix(const SquareAlphabet& alph, const Word& w);

struct Factorization {
  std::vector<int> roots;  // indices 1..6
  bool complete = false;
  // Offset where no minimal square starts; equals |w| when complete.
  std::size_t stop = 0;
};

Factorization factor_minimal_squares(const SquareAlphabet& alph, const Word& w);
bool in_Pi(const SquareAlphabet& alph, const Word& w);
Word sqrt_finite(const SquareAlphabet& alph, const Word& w);

}  // namespace sqrtmap
