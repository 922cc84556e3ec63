#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>

#include "sqrtmap/dynamics.hpp"

namespace sqrtmap {

namespace {

// Block idx of tau^M(S).
char tau_power_block(int c, int M, std::uint64_t idx) {
  const std::uint64_t m = 2 * static_cast<std::uint64_t>(c) + 1;
  std::uint64_t span = 1;
  for (int i = 0; i < M; ++i) span *= m;
  if (idx >= span) throw std::out_of_range("block index beyond tau^M(S)");
  char x = 'S';
  for (int level = 0; level < M; ++level) {
    span /= m;
    const std::uint64_t digit = idx / span;
    idx %= span;
    x = (x == 'S' && digit == 0) ? 'L' : 'S';
  }
  return x;
}

std::uint64_t power_of(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// The first `count` blocks of the suffix of length len of tau^M(S)^reps.
std::string tau_power_suffix(int c, int M, int reps, std::uint64_t len, std::size_t count) {
  const std::uint64_t span = power_of(2 * static_cast<std::uint64_t>(c) + 1, M);
  const std::uint64_t total = span * static_cast<std::uint64_t>(reps);
  if (len > total) throw std::logic_error("suffix longer than the word");
  std::string out;
  for (std::uint64_t t = 0; t < count && t < len; ++t) out.push_back(tau_power_block(c, M, (total - len + t) % span));
  return out;
}

std::string decimate(const std::string& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); i += 2) out.push_back(w[i]);
  return out;
}

}  // namespace

PreimageChain preimage_chain(const Omega& om, const InfiniteWordSource& src, int depth, std::size_t prefix_len,
                             std::size_t window_blocks) {
  PreimageChain chain;
  const auto& prod = src.product();
  if (!prod || prod->shift != 0) {
    chain.error = "source has no block description with shift 0";
    return chain;
  }
  const int c = om.c();
  const std::uint64_t base = 2 * static_cast<std::uint64_t>(c) + 1;
  const std::size_t P = std::max<std::size_t>(1, (prefix_len + om.n() - 1) / om.n());
  window_blocks = std::max(window_blocks, 4 * P);
  const std::string x = prod->block_prefix(window_blocks).str();

  // z_i holds the first 2P blocks of the i-th block-level preimage.
  std::vector<std::string> z{x.substr(0, 2 * P)};
  if (x.find('L') == std::string::npos || x.find('S') == std::string::npos) {
    // S^omega and L^omega are their own preimages.
    for (int i = 1; i <= depth; ++i) z.push_back(z[0]);
  } else {
    const std::vector<std::size_t> starts = factorization_starts(c, Word::blocks(x), 64);
    std::optional<int> K;
    for (std::size_t k = 0; k < starts.size(); ++k) {
      if (starts[k] >= P) {
        K = static_cast<int>(k);
        break;
      }
    }
    if (K) {
      // x[0..j) is a proper suffix of a level-K block; its preimage is the suffix of tau^K(S)^2 of length 2j.
      const std::uint64_t j = starts[*K];
      const std::string v = tau_power_suffix(c, *K, 2, 2 * j, 2 * j);
      if (decimate(v) != x.substr(0, j)) {
        chain.error = "level-" + std::to_string(*K) + " preimage does not decimate to the prefix";
        return chain;
      }
      for (int i = 1; i <= depth; ++i) {
        const std::uint64_t len = j << i;
        // The suffix of tau^{K+i-1}(S)^2 of length 2^i j is a factor of Omega*.
        z.push_back(tau_power_suffix(c, *K + i - 1, 2, len, 2 * P));
      }
    } else {
      // The factorization start never passes the prefix: x = z Gamma with z a suffix of some tau^K(S).
      const std::size_t j = starts.back();
      const int which = x[j] == 'S' ? 1 : 2;
      const std::string tail = gamma_star_prefix(c, which, window_blocks - j).str();
      if (x.compare(j, std::string::npos, tail) != 0) {
        chain.error = "window of " + std::to_string(window_blocks) +
                      " blocks does not locate a factorization start beyond the prefix";
        return chain;
      }
      int Kz = 0;
      while (power_of(base, Kz) <= j) ++Kz;
      if (j > 0 && tau_power_suffix(c, Kz, 1, j, j) != x.substr(0, j)) {
        chain.error = "prefix before the Gamma tail is not a suffix of tau^K(S)";
        return chain;
      }
      for (int i = 1; i <= depth; ++i) {
        const std::uint64_t len = static_cast<std::uint64_t>(j) << i;
        std::string zi = tau_power_suffix(c, Kz + i, 1, len, 2 * P);
        if (zi.size() < 2 * P) zi += gamma_star_prefix(c, which, 2 * P - zi.size()).str();
        z.push_back(std::move(zi));
      }
    }
  }

  for (const std::string& b : z) chain.links.push_back(om.sigma(Word::blocks(b)));
  for (int i = 0; i < depth; ++i) {
    const Word upper = chain.links[i + 1];
    if (!in_Pi(om.alphabet(), upper) || sqrt_finite(om.alphabet(), upper) != chain.links[i].prefix(P * om.n())) {
      chain.error = "link " + std::to_string(i + 1) + " does not re-tokenize to link " + std::to_string(i);
      return chain;
    }
    ++chain.verified;
  }
  chain.complete = chain.verified == depth;
  return chain;
}

PreimageIndex::PreimageIndex(const Omega& om, std::size_t m, std::size_t p) : m_(m), p_(p) {
  const std::size_t n = om.n();
  const std::size_t M = (2 * m + 2 * om.alphabet().max_square_length() + 2 * n) / n + 2;
  if (p > M * n - n) throw std::invalid_argument("preimage key longer than the candidate window");
  const std::size_t corpus = std::max<std::size_t>(100000, 200 * M);
  const std::string g = gamma_star_prefix(om.c(), 1, corpus).str();
  std::set<std::string> windows{std::string(M, 'S')};
  for (std::size_t pos = 0; pos + M <= g.size(); ++pos) windows.insert(g.substr(pos, M));
  for (const std::string& y : windows) {
    const Word blocks = Word::blocks(y);
    const std::string letters = om.sigma(blocks).str();
    for (std::size_t l = 0; l < n; ++l) {
      std::string_view w = std::string_view(letters).substr(l);
      std::string root;
      std::size_t pos = 0;
      while (root.size() < m) {
        auto i = om.alphabet().match(w.substr(pos));
        if (!i) throw std::logic_error("window of Omega is not squareful");
        root += om.alphabet().root(*i).str();
        pos += om.alphabet().square(*i).size();
      }
      root.resize(m);
      ++candidates_;
      const std::string key(w.substr(0, p));
      index_[root].emplace(key, PreimageDescriptor{l, blocks, Word::binary(key)});
    }
  }
}

std::vector<PreimageDescriptor> PreimageIndex::lookup(const Word& target) const {
  if (target.size() < m_) throw std::invalid_argument("target shorter than the index key");
  std::vector<PreimageDescriptor> out;
  auto it = index_.find(target.str().substr(0, m_));
  if (it == index_.end()) return out;
  for (const auto& [key, d] : it->second) out.push_back(d);
  return out;
}

std::vector<PreimageDescriptor> find_preimages(const Omega& om, const Word& target, const SearchBudget& budget) {
  // Indices are costly to build, so the most recent one is kept.
  static std::mutex mu;
  static std::shared_ptr<PreimageIndex> cached;
  static std::string cached_key;
  const std::size_t m = target.size();
  const std::size_t p = budget.window ? budget.window : m / 2;
  const std::string key = om.S().str() + "/" + std::to_string(om.c()) + "/" + std::to_string(m) + "/" +
                          std::to_string(p);
  std::shared_ptr<PreimageIndex> index;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (!cached || cached_key != key) {
      cached = std::make_shared<PreimageIndex>(om, m, p);
      cached_key = key;
    }
    index = cached;
  }
  return index->lookup(target);
}

PairInspection inspect_preimage_pair(const Omega& om, const Word& u, const Word& v) {
  PairInspection r;
  const std::size_t n = om.n();
  const std::size_t len = std::min(u.size(), v.size());
  std::size_t i = 0;
  while (i < len && u[i] == v[i]) ++i;
  r.difference = i;
  if (i == len) {
    r.reason = "words agree";
    return r;
  }
  if (i + 2 > len || u[i] != v[i + 1] || u[i + 1] != v[i] || u.view().substr(i + 2, len - i - 2) !=
                                                                  v.view().substr(i + 2, len - i - 2)) {
    r.reason = "difference is not a swap of two adjacent letters";
    return r;
  }
  const std::size_t rest = len - i;
  const Word g1 = om.big_gamma(1).prefix(rest), g2 = om.big_gamma(2).prefix(rest);
  const Word tu = u.substr(i, rest), tv = v.substr(i, rest);
  const bool gamma_tails = (tu == g1 && tv == g2) || (tu == g2 && tv == g1);
  if (i < n && gamma_tails && om.S().ends_with(u.prefix(i))) {
    r.suffix_gamma_form = true;
    r.reason = "prefix before the difference is a proper suffix of S";
    return r;
  }
  if (i < n || u.substr(i - n, n) != om.S()) {
    r.reason = "difference is not preceded by S";
    return r;
  }
  r.z = u.prefix(i - n);
  if (!r.z.empty() && !in_Pi(om.alphabet(), r.z)) {
    r.reason = "z is not in Pi";
    return r;
  }
  int k = 0;
  while (om.tower().length(k) < i) ++k;
  if (!om.gamma(k).ends_with(u.prefix(i))) {
    r.reason = "zS is not a suffix of gamma_" + std::to_string(k);
    return r;
  }
  if (!gamma_tails) {
    r.reason = "tails are not Gamma1 and Gamma2";
    return r;
  }
  r.zs_gamma_form = true;
  return r;
}

InjectivityReport injectivity_experiment(const Omega& om, std::size_t samples, std::uint64_t seed, std::size_t m,
                                         std::size_t p, int kmax) {
  const PreimageIndex index(om, m, p);
  InjectivityReport rep;
  auto tally = [&](const Word& target) {
    const auto found = index.lookup(target);
    ++rep.targets;
    rep.max_found = std::max(rep.max_found, found.size());
    if (found.size() > 2) ++rep.above_two;
    if (found.size() != 2) return false;
    ++rep.with_two;
    const PairInspection pi = inspect_preimage_pair(om, found[0].letters, found[1].letters);
    if (pi.suffix_gamma_form) ++rep.two_in_suffix_form;
    if (!pi.zs_gamma_form && !pi.suffix_gamma_form) rep.unexplained.push_back(pi.difference);
    if (!pi.zs_gamma_form) return false;
    ++rep.two_in_form;
    return true;
  };

  std::mt19937_64 rng(seed);
  const std::size_t span = 200000;
  const std::string g1 = om.big_gamma(1).prefix(span + m).str();
  for (std::size_t s = 0; s < samples; ++s) tally(Word::binary(g1.substr(rng() % span, m)));

  const Word& S = om.S();
  for (int k = 0; k <= kmax; ++k) {
    const Word& g = om.gamma(k);
    for (std::size_t r = S.size(); r <= g.size(); ++r) {
      const Word zs = g.suffix(r);
      if (!zs.ends_with(S)) continue;
      const Word z = zs.prefix(r - S.size());
      if (!z.empty() && !in_Pi(om.alphabet(), z)) continue;
      auto target = sqrt_stream(om.alphabet(), prepend(zs, om.big_gamma(1))).try_prefix(m);
      if (!target) continue;
      ++rep.constructed_targets;
      if (tally(*target)) ++rep.constructed_recovered;
    }
  }
  return rep;
}

LimitSetReport limit_set_experiment(const Omega& om, std::size_t samples, int depth, std::uint64_t seed, int cap) {
  LimitSetReport rep;
  std::mt19937_64 rng(seed);
  const std::size_t n = om.n();
  const int c = om.c();
  for (std::size_t s = 0; s < samples; ++s) {
    const int which = 1 + static_cast<int>(rng() % 2);
    const std::size_t pos = rng() % 5000;
    InfiniteWordSource src = shift(om.big_gamma(which), pos * n);
    PreimageChain chain = preimage_chain(om, src, depth, 16 * n);
    ++rep.omega_s_samples;
    if (chain.complete) {
      ++rep.chains_complete;
    } else {
      rep.failures.push_back(src.descriptor() + ": " + chain.error);
    }
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const int which = 1 + static_cast<int>(rng() % 2);
    const std::size_t pos = rng() % 5000;
    const std::size_t l = 1 + rng() % (n - 1);
    SLProduct prod = om.product([c, which, pos](std::size_t t) { return gamma_star_block(c, which, pos + t); }, l);
    ++rep.other_samples;
    if (auto steps = steps_to_fixed(om, prod, cap)) {
      ++rep.reached;
      rep.max_steps = std::max(rep.max_steps, *steps);
    } else {
      rep.failures.push_back("T^" + std::to_string(l) + "(T^" + std::to_string(pos) + "(Gamma" +
                             std::to_string(which) + "*)) did not reach S^w or L^w");
    }
  }
  return rep;
}

}  // namespace sqrtmap
