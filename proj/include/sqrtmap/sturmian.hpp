#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqrtmap/words.hpp"

namespace sqrtmap {

using BigRational = mpq_class;

// Parses "p/q" or an integer; the result is canonicalized.
BigRational parse_rational(std::string_view text);
std::string to_string(const BigRational& x);
// Fractional part in [0,1).
BigRational frac(const BigRational& x);

class ContinuedFraction {
 public:
  ContinuedFraction() = default;
  // quotients[0] is a0; the rest must be positive. Stored as given.
  explicit ContinuedFraction(std::vector<long> quotients);
  // Accepts "[a0;a1,a2,...]", "[a0]" and "a0;a1,..." forms.
  static ContinuedFraction parse(std::string_view text);
  static ContinuedFraction of(const BigRational& x);

  const std::vector<long>& quotients() const { return q_; }
  std::size_t size() const { return q_.size(); }
  long operator[](std::size_t i) const { return q_[i]; }
  // [..,a,1] becomes [..,a+1].
  ContinuedFraction canonical() const;
  ContinuedFraction truncated(std::size_t k) const;
  BigRational value() const;
  std::string str() const;
  bool operator==(const ContinuedFraction&) const = default;

 private:
  std::vector<long> q_;
};

// p_i/q_i for 0 <= i <= k.
std::vector<BigRational> convergents(const ContinuedFraction& cf, std::size_t k);
// (l p_{k-1} + p_{k-2}) / (l q_{k-1} + q_{k-2}) for 1 <= l < a_k; empty when a_k = 1.
std::vector<BigRational> semiconvergents(const ContinuedFraction& cf, std::size_t k);

// s_{-1} = 1, s_0 = 0, s_k = s_{k-1}^{d_k} s_{k-2}; d[0] holds d_1.
Word standard_word(const std::vector<long>& d, int k);
Word reversed_standard_word(const std::vector<long>& d, int k);

enum class Convention { left_closed, right_closed };

std::string to_string(Convention c);
Convention parse_convention(std::string_view text);

// Rotation by a rational slope; I0 = [0,1-a) or (0,1-a] depending on the convention.
class RotationSystem {
 public:
  RotationSystem(BigRational slope, Convention convention = Convention::left_closed);

  const BigRational& slope() const { return slope_; }
  Convention convention() const { return convention_; }
  const mpz_class& period() const { return slope_.get_den(); }
  std::size_t q() const { return slope_.get_den().get_ui(); }
  BigRational boundary() const { return 1 - slope_; }
  char letter(const BigRational& x) const;
  BigRational rotate(const BigRational& x) const { return frac(x + slope_); }

 private:
  BigRational slope_;
  Convention convention_;
};

Word rotation_coding(const RotationSystem& sys, const BigRational& rho, std::size_t n);

// Half-open arc with the openness dictated by the convention: [lo,hi) or (lo,hi].
struct Arc {
  BigRational lo;
  BigRational hi;
};

// [w] as one arc, or two pieces when it wraps around 0.
struct FactorInterval {
  std::vector<Arc> pieces;
  bool wraps = false;
  Convention convention = Convention::left_closed;

  BigRational length() const;
  bool contains(const BigRational& x) const;
};

std::optional<FactorInterval> factor_interval(const RotationSystem& sys, const Word& w);

// Elementary level-n intervals in increasing position, each with its factor.
struct LevelInterval {
  Arc arc;
  Word factor;
};
std::vector<LevelInterval> level_intervals(const RotationSystem& sys, std::size_t n);

BigRational psi(const RotationSystem& sys, const BigRational& rho);
bool verify_lex_interval_order(const RotationSystem& sys, std::size_t n);

}  // namespace sqrtmap
