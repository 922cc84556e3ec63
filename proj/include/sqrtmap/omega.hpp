#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqrtmap/lazy_word.hpp"
#include "sqrtmap/squares.hpp"
#include "sqrtmap/sturmian.hpp"
#include "sqrtmap/words.hpp"

namespace sqrtmap {

enum class Seed { plain, swapped };

std::string to_string(Seed s);
Seed parse_seed(std::string_view text);

struct OmegaParams {
  int a = 1;
  int b = 0;
  int c = 1;
  // Standard-word index; 0 picks the smallest k with |s_k| > |S6|.
  int k = 0;
  Seed seed = Seed::plain;
  // Partial quotients after [0; a+1, b+1]; missing ones default to 1.
  std::vector<long> tail;
};

// Blockwise image under S -> L S^{2c}, L -> S^{2c+1}.
Word tau(int c, const Word& w);

// Block t of the fixed point of tau^2 starting with S (which = 1) or L (which = 2).
char gamma_star_block(int c, int which, std::uint64_t t);
// The first n blocks of that fixed point.
Word gamma_star_prefix(int c, int which, std::size_t n);

// gamma_j = sigma(tau^j(S)) and gamma_bar_j = sigma(tau^j(L)), built on demand.
// Safe to share between threads; returned references stay valid for the tower's lifetime.
class GammaTower {
 public:
  GammaTower(int c, Word s, Word l);

  const Word& gamma(int j) const { return level(j).first; }
  const Word& gamma_bar(int j) const { return level(j).second; }
  std::size_t length(int j) const;

 private:
  const std::pair<Word, Word>& level(int j) const;

  int c_;
  mutable std::mutex mu_;
  mutable std::deque<std::pair<Word, Word>> levels_;
};

enum class ProductType { A, B, C, D };
char to_char(ProductType t);

struct TypeInfo {
  ProductType type = ProductType::A;
  // Length of the prefix found in Pi (0 for types A and D).
  std::size_t pi_prefix_len = 0;
};

enum class SqrtOutcome { in_omega_a_form, periodic };

struct ProductSqrt {
  ProductType type = ProductType::A;
  SqrtOutcome outcome = SqrtOutcome::in_omega_a_form;
  // Set for types A-C.
  std::optional<SLProduct> product;
  // Set for type D: the image is T^j(S^omega).
  std::optional<std::size_t> period_shift;
  std::optional<InfiniteWordSource> word;
};

struct SubsetIndex {
  enum class Kind { index, fixed_point, not_in_omega_s };
  Kind kind = Kind::not_in_omega_s;
  int k = -1;
};

// The subshift Omega = Omega_A u Omega_P attached to one parameter choice.
class Omega {
 public:
  explicit Omega(OmegaParams params);

  const OmegaParams& params() const { return params_; }
  int c() const { return params_.c; }
  int k() const { return k_; }
  const SquareAlphabet& alphabet() const { return alph_; }
  const Word& S() const { return s_; }
  const Word& L() const { return l_; }
  std::size_t n() const { return s_.size(); }
  const Word& block_word(char b) const { return b == 'S' ? s_ : l_; }
  // d_1, d_2, ... used for the standard words.
  const std::vector<long>& d() const { return d_; }
  const ContinuedFraction& slope_cf() const { return cf_; }
  const BigRational& alpha_bar() const { return alpha_bar_; }
  RotationSystem rotation(Convention conv = Convention::left_closed) const;
  const GammaTower& tower() const { return *tower_; }
  const Word& gamma(int j) const { return tower_->gamma(j); }
  const Word& gamma_bar(int j) const { return tower_->gamma_bar(j); }

  Word sigma(const Word& blocks) const;
  // The result has shift < |S|; larger shifts skip whole blocks.
  SLProduct product(std::function<char(std::size_t)> blocks, std::size_t shift = 0) const;
  // Periodic extension of a finite block word.
  SLProduct periodic_product(const Word& blocks, std::size_t shift = 0) const;
  // Gamma_1 or Gamma_2 with its product descriptor attached.
  InfiniteWordSource big_gamma(int which) const;
  // T^j(S^omega), with its product descriptor when j = 0 mod |S|.
  InfiniteWordSource s_omega(std::size_t j = 0) const;
  // Index j with rotate(S, j) = u, if u is a conjugate of S.
  std::optional<std::size_t> conjugate_index(const Word& u) const;
  // rotate(S, j_L) = L.
  std::size_t l_index() const { return l_index_; }

 private:
  OmegaParams params_;
  int k_;
  std::vector<long> d_;
  SquareAlphabet alph_;
  Word s_;
  Word l_;
  ContinuedFraction cf_;
  BigRational alpha_bar_;
  std::shared_ptr<GammaTower> tower_;
  std::size_t l_index_ = 0;
};

TypeInfo classify_type(const Omega& om, const SLProduct& prod);

// One symbolic square root step. With certify set, type D images are checked with detect_period.
ProductSqrt sqrt_of_product(const Omega& om, const SLProduct& prod, bool certify = true);

// Unique l < |gamma_j| such that T^l(src) factors over gamma_j, gamma_bar_j.
// window = 0 selects 4|gamma_j|.
std::optional<std::size_t> sync_factorization_start(const Omega& om, const InfiniteWordSource& src, int j,
                                                    std::size_t window = 0);

// Block offsets start_0 = 0, start_1, ... at which the tau^k-factorization of a block word of Omega*
// begins, as far as the window determines them.
std::vector<std::size_t> factorization_starts(int c, const Word& blocks, int kmax);

// Both factorization-property conditions on a window over {gamma, gamma_bar}, written with S and L.
bool check_factorization_properties(int c, const Word& blocks);

// jmax = -1 picks the largest j with 4|gamma_j| <= budget.
SubsetIndex invariant_subset_index(const Omega& om, const InfiniteWordSource& src, int jmax = -1,
                                   std::size_t budget = 1000000);

// Prefix test for the set A_k.
bool in_A_k(const Omega& om, const InfiniteWordSource& src, int k);

}  // namespace sqrtmap
