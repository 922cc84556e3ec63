#include "sqrtmap/omega.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqrtmap {

std::string to_string(Seed s) { return s == Seed::plain ? "plain" : "swapped"; }

Seed parse_seed(std::string_view text) {
  if (text == "plain") return Seed::plain;
  if (text == "swapped") return Seed::swapped;
  throw std::invalid_argument("seed must be plain or swapped");
}

char to_char(ProductType t) { return "ABCD"[static_cast<int>(t)]; }

Word tau(int c, const Word& w) {
  if (c < 1) throw std::invalid_argument("c must be at least 1");
  if (!w.empty() && w.alphabet() != Alphabet::blocks) throw alphabet_error("tau acts on block words");
  const std::string s_image = "L" + std::string(2 * c, 'S');
  const std::string l_image(2 * c + 1, 'S');
  std::string out;
  out.reserve(w.size() * (2 * c + 1));
  for (char x : w.view()) out += x == 'S' ? s_image : l_image;
  return Word::blocks(out);
}

char gamma_star_block(int c, int which, std::uint64_t t) {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  const std::uint64_t m = 2 * static_cast<std::uint64_t>(c) + 1;
  // tau^K of the root is a prefix of the limit for every even K.
  int K = 0;
  std::uint64_t span = 1;
  while (span <= t) {
    span *= m * m;
    K += 2;
  }
  char x = which == 1 ? 'S' : 'L';
  for (int level = K - 1; level >= 0; --level) {
    span /= m;
    const std::uint64_t digit = t / span;
    t %= span;
    x = (x == 'S' && digit == 0) ? 'L' : 'S';
  }
  return x;
}

Word gamma_star_prefix(int c, int which, std::size_t n) {
  Word w = Word::blocks(which == 1 ? "S" : "L");
  while (w.size() < n) w = tau(c, tau(c, w));
  return w.prefix(n);
}

GammaTower::GammaTower(int c, Word s, Word l) : c_(c) { levels_.emplace_back(std::move(s), std::move(l)); }

std::size_t GammaTower::length(int j) const { return gamma(j).size(); }

const std::pair<Word, Word>& GammaTower::level(int j) const {
  if (j < 0) throw std::invalid_argument("gamma index must be non-negative");
  std::lock_guard<std::mutex> lock(mu_);
  while (levels_.size() <= static_cast<std::size_t>(j)) {
    const auto& [g, gb] = levels_.back();
    // gamma_{j+1} = gamma_bar_j gamma_j^{2c}, gamma_bar_{j+1} = gamma_j^{2c+1}.
    levels_.emplace_back(gb + g.power(2 * c_), g.power(2 * c_ + 1));
  }
  return levels_[j];
}

Omega::Omega(OmegaParams params) : params_(std::move(params)), alph_(params_.a, params_.b) {
  if (params_.c < 1) throw std::invalid_argument("c must be at least 1");
  if (params_.k < 0) throw std::invalid_argument("k must be non-negative");
  const std::size_t s6 = alph_.root(6).size();
  auto quotient = [&](std::size_t i) -> long {
    if (i == 0) return params_.a;
    if (i == 1) return params_.b + 1;
    return i - 2 < params_.tail.size() ? params_.tail[i - 2] : 1;
  };
  for (long q : params_.tail) {
    if (q < 1) throw std::invalid_argument("partial quotients must be positive");
  }
  k_ = params_.k;
  auto build_d = [&](int k) {
    std::vector<long> d;
    for (int i = 0; i < k; ++i) d.push_back(quotient(i));
    return d;
  };
  if (k_ == 0) {
    k_ = 1;
    while (reversed_standard_word(build_d(k_), k_).size() <= s6) ++k_;
  }
  d_ = build_d(k_);
  Word sbar = reversed_standard_word(d_, k_);
  if (sbar.size() <= s6) {
    throw std::invalid_argument("|s_k| = " + std::to_string(sbar.size()) + " must exceed |S6| = " +
                                std::to_string(s6));
  }
  s_ = params_.seed == Seed::plain ? sbar : swap_first_two(sbar);
  l_ = swap_first_two(s_);

  std::vector<long> q{0};
  for (int i = 0; i < k_; ++i) q.push_back(i == 0 ? d_[0] + 1 : d_[i]);
  cf_ = ContinuedFraction(q);
  alpha_bar_ = cf_.value();
  tower_ = std::make_shared<GammaTower>(params_.c, s_, l_);

  const Word ss = s_ + s_, sl = s_ + l_, ls = l_ + s_, ll = l_ + l_;
  if (!(in_Pi(alph_, ss) && in_Pi(alph_, sl) && in_Pi(alph_, ls) && in_Pi(alph_, ll) &&
        sqrt_finite(alph_, ss) == s_ && sqrt_finite(alph_, sl) == s_ && sqrt_finite(alph_, ls) == l_ &&
        sqrt_finite(alph_, ll) == l_)) {
    throw std::logic_error("S and L do not satisfy the square root identities");
  }
  auto j = conjugate_index(l_);
  if (!j) throw std::logic_error("S and L are not conjugate");
  l_index_ = *j;
}

RotationSystem Omega::rotation(Convention conv) const { return RotationSystem(alpha_bar_, conv); }

Word Omega::sigma(const Word& blocks) const {
  if (!blocks.empty() && blocks.alphabet() != Alphabet::blocks) throw alphabet_error("sigma acts on block words");
  std::string out;
  out.reserve(blocks.size() * n());
  for (char b : blocks.view()) out += block_word(b).str();
  return Word::binary(out);
}

SLProduct Omega::product(std::function<char(std::size_t)> blocks, std::size_t shift) const {
  // Whole blocks are folded into the block index so that shift < |S|.
  if (const std::size_t skip = shift / s_.size(); skip > 0) {
    blocks = [inner = std::move(blocks), skip](std::size_t t) { return inner(t + skip); };
    shift %= s_.size();
  }
  return SLProduct{std::move(blocks), shift, s_, l_};
}

SLProduct Omega::periodic_product(const Word& blocks, std::size_t shift) const {
  if (blocks.empty()) throw std::invalid_argument("block period must be nonempty");
  std::string b = blocks.str();
  return product([b](std::size_t t) { return b[t % b.size()]; }, shift);
}

InfiniteWordSource Omega::big_gamma(int which) const {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  const int c = params_.c;
  return expand(product([c, which](std::size_t t) { return gamma_star_block(c, which, t); }),
                which == 1 ? "Gamma1" : "Gamma2");
}

InfiniteWordSource Omega::s_omega(std::size_t j) const {
  const std::string name = j == 0 ? "S^w" : "T^" + std::to_string(j) + "(S^w)";
  if (j % n() == 0) return expand(periodic_product(Word::blocks("S")), name);
  return periodic(rotate(s_, j % n()), name);
}

std::optional<std::size_t> Omega::conjugate_index(const Word& u) const {
  if (u.size() != n()) return std::nullopt;
  auto pos = (s_ + s_).str().find(u.str());
  if (pos == std::string::npos || pos >= n()) return std::nullopt;
  return pos;
}

TypeInfo classify_type(const Omega& om, const SLProduct& prod) {
  const std::size_t n = om.n(), l = prod.shift;
  if (l == 0) return {ProductType::A, 0};
  const Word w = prod.letters(2 * n - l);
  if (in_Pi(om.alphabet(), w.prefix(n - l))) return {ProductType::B, n - l};
  if (in_Pi(om.alphabet(), w)) return {ProductType::C, 2 * n - l};
  return {ProductType::D, 0};
}

namespace {

char block_ending_with(const Omega& om, const Word& x) {
  if (om.S().ends_with(x)) return 'S';
  if (om.L().ends_with(x)) return 'L';
  throw std::logic_error("square root prefix " + x.str() + " is not a suffix of S or L");
}

}  // namespace

ProductSqrt sqrt_of_product(const Omega& om, const SLProduct& prod, bool certify) {
  const std::size_t n = om.n();
  ProductSqrt r;
  const TypeInfo info = classify_type(om, prod);
  r.type = info.type;
  auto old = prod.blocks;
  switch (info.type) {
    case ProductType::A:
      r.product = om.product([old](std::size_t t) { return old(2 * t); });
      break;
    case ProductType::B:
    case ProductType::C: {
      const Word x = sqrt_finite(om.alphabet(), prod.letters(info.pi_prefix_len));
      const char b0 = block_ending_with(om, x);
      // Type B consumed one block, so the remaining pairs start at block 1; type C consumed two.
      const std::size_t odd = info.type == ProductType::B ? 1 : 0;
      r.product = om.product(
          [old, b0, odd](std::size_t t) { return t == 0 ? b0 : old(2 * t - odd); }, n - x.size());
      break;
    }
    case ProductType::D: {
      r.outcome = SqrtOutcome::periodic;
      InfiniteWordSource root = sqrt_stream(om.alphabet(), expand(prod));
      auto j = om.conjugate_index(root.prefix(n));
      if (!j) throw std::logic_error("type D image does not begin with a conjugate of S");
      if (certify && !detect_period(root, n, 6 * n, om.S())) {
        throw std::logic_error("type D image failed the periodicity window");
      }
      r.period_shift = *j;
      r.word = om.s_omega(*j);
      return r;
    }
  }
  r.word = expand(*r.product, "sqrt(" + std::string(1, to_char(info.type)) + ")");
  return r;
}

std::optional<std::size_t> sync_factorization_start(const Omega& om, const InfiniteWordSource& src, int j,
                                                    std::size_t window) {
  const Word& g = om.gamma(j);
  const Word& gb = om.gamma_bar(j);
  if (window == 0) window = 4 * g.size();
  std::string_view w = src.letters(window);
  w = w.substr(0, std::min(w.size(), window));
  std::size_t best = std::string::npos;
  for (const Word& pat : {g + g, g + gb, gb + g}) {
    best = std::min(best, w.find(pat.view()));
  }
  if (best == std::string::npos) return std::nullopt;
  return best % g.size();
}

std::vector<std::size_t> factorization_starts(int c, const Word& blocks, int kmax) {
  const std::size_t m = 2 * static_cast<std::size_t>(c) + 1;
  std::vector<std::size_t> starts{0};
  std::size_t s = 0, span = 1;
  for (int k = 0; k < kmax; ++k) {
    // Level-k blocks are tau^k(S) or tau^k(L), told apart by their first letter, which flips with k.
    const char l_mark = k % 2 == 0 ? 'L' : 'S';
    std::optional<std::size_t> first_l;
    for (std::size_t t = 0; s + t * span < blocks.size(); ++t) {
      if (blocks[s + t * span] == l_mark) {
        first_l = t;
        break;
      }
    }
    // An L block opens a level-(k+1) block.
    if (!first_l) break;
    s += (*first_l % m) * span;
    span *= m;
    if (s >= blocks.size()) break;
    starts.push_back(s);
  }
  return starts;
}

bool check_factorization_properties(int c, const Word& blocks) {
  std::vector<std::size_t> ls;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] == 'L') ls.push_back(i);
  }
  const std::size_t short_gap = 2 * c, long_gap = 4 * c + 1;
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    const std::size_t gap = ls[i + 1] - ls[i] - 1;
    if (gap != short_gap && gap != long_gap) return false;
  }
  // Between consecutive long runs lies (S^{2c} L)^{g-2} S^{2c}, g in {2c, 4c+1}; for c = 1 this is
  // S^2 or (S^2 L)^4 without its last L.
  const std::string s2c(short_gap, 'S');
  auto run = [&](std::size_t reps) {
    std::string r;
    for (std::size_t i = 0; i < reps; ++i) r += s2c + "L";
    return r + s2c;
  };
  const std::string shorter = run(short_gap - 2), longer = run(long_gap - 2);
  std::optional<std::size_t> prev_end;
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    if (ls[i + 1] - ls[i] - 1 != long_gap) continue;
    if (prev_end) {
      if (ls[i] <= *prev_end) return false;
      const std::string between = blocks.str().substr(*prev_end + 1, ls[i] - *prev_end - 1);
      if (between != shorter && between != longer) return false;
    }
    prev_end = ls[i + 1];
  }
  return true;
}

SubsetIndex invariant_subset_index(const Omega& om, const InfiniteWordSource& src, int jmax, std::size_t budget) {
  if (jmax < 0) {
    jmax = 0;
    while (4 * om.tower().length(jmax + 1) <= budget) ++jmax;
  }
  auto start = sync_factorization_start(om, src, 0);
  if (!start || *start != 0) return {SubsetIndex::Kind::not_in_omega_s, -1};
  for (int j = 1; j <= jmax; ++j) {
    auto s = sync_factorization_start(om, src, j);
    if (!s || *s != 0) return {SubsetIndex::Kind::index, j - 1};
  }
  return {SubsetIndex::Kind::fixed_point, jmax};
}

bool in_A_k(const Omega& om, const InfiniteWordSource& src, int k) {
  const Word& g = om.gamma(k);
  const Word& gb = om.gamma_bar(k);
  const Word mid = g.power(2 * om.c());
  auto w = src.try_prefix((2 * om.c() + 2) * g.size());
  if (!w) return false;
  return *w == g + mid + gb || *w == gb + mid + gb || *w == gb + mid + g;
}

}  // namespace sqrtmap
