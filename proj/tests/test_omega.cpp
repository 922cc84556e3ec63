#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "sqrtmap/omega.hpp"

using namespace sqrtmap;

namespace {

Word bin(const std::string& s) { return Word::binary(s); }
Word blk(const std::string& s) { return Word::blocks(s); }

Word pow(const Word& w, int n) {
  Word r;
  for (int i = 0; i < n; ++i) r = r + w;
  return r;
}

// Oracle: tau written as a string rewrite.
std::string tau_oracle(int c, const std::string& w) {
  std::string r;
  for (char x : w) r += x == 'S' ? "L" + std::string(2 * c, 'S') : std::string(2 * c + 1, 'S');
  return r;
}

SLProduct gamma_product(const Omega& om, int which, std::size_t shift) {
  const int c = om.c();
  return om.product([c, which](std::size_t t) { return gamma_star_block(c, which, t); }, shift);
}

}  // namespace

TEST_CASE("default parameters") {
  const Omega om(OmegaParams{});
  CHECK(om.k() == 4);
  CHECK(om.S() == bin("01010010"));
  CHECK(om.L() == bin("10010010"));
  CHECK(om.alpha_bar() == BigRational(3, 8));
  CHECK(rotate(om.S(), om.l_index()) == om.L());
  OmegaParams p;
  p.k = 3;
  CHECK_THROWS(Omega(p));  // |s_3| = 5 does not exceed |S6| = 5
  p.k = 5;
  p.seed = Seed::swapped;
  const Omega sw(p);
  CHECK(sw.S() == swap_first_two(reversed_standard_word(sw.d(), 5)));
}

TEST_CASE("tau") {
  CHECK(tau(1, blk("S")) == blk("LSS"));
  CHECK(tau(1, blk("L")) == blk("SSS"));
  CHECK(tau(2, blk("SL")) == blk("LSSSSSSSSS"));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    std::string w;
    for (int i = 0; i < 10; ++i) w.push_back(rng() & 1 ? 'S' : 'L');
    for (int c = 1; c <= 3; ++c) CHECK(tau(c, blk(w)).str() == tau_oracle(c, w));
  }
}

TEST_CASE("fixed points of tau^2") {
  for (int c = 1; c <= 3; ++c) {
    for (int which = 1; which <= 2; ++which) {
      const Word g = gamma_star_prefix(c, which, 500);
      CHECK(g[0] == (which == 1 ? 'S' : 'L'));
      CHECK(tau(c, tau(c, g)).str().substr(0, 500) == g.str());
      for (std::uint64_t t = 0; t < 500; t += 37) CHECK(gamma_star_block(c, which, t) == g[t]);
    }
  }
}

TEST_CASE("gamma tower") {
  for (int c = 1; c <= 2; ++c) {
    OmegaParams p;
    p.c = c;
    const Omega om(p);
    const std::size_t n = om.n();
    CHECK(om.gamma(0) == om.S());
    CHECK(om.gamma_bar(0) == om.L());
    if (c == 1) CHECK(om.gamma(1) == om.L() + om.S() + om.S());
    std::size_t len = n;
    for (int j = 0; j <= 6 - c; ++j) {
      const Word& g = om.gamma(j);
      const Word& gb = om.gamma_bar(j);
      CHECK(g.size() == len);
      CHECK(om.tower().length(j) == len);
      CHECK(g[0] != gb[0]);
      CHECK(g[1] != gb[1]);
      CHECK(g.str().substr(2) == gb.str().substr(2));
      CHECK(is_primitive(g));
      // tau(L) = S^{2c+1}, so gamma_bar_j is a power of gamma_{j-1} for j >= 1.
      if (j == 0) CHECK(is_primitive(gb));
      if (j >= 1) CHECK(gb == pow(om.gamma(j - 1), 2 * c + 1));
      CHECK(om.gamma(j + 1).str().substr(0, len) == gb.str());
      CHECK(om.gamma_bar(j + 1).str().substr(0, len) == g.str());
      len *= 2 * c + 1;
    }
  }
}

TEST_CASE("Gamma1 and Gamma2") {
  const Omega om(OmegaParams{});
  const Word g1 = om.big_gamma(1).prefix(20000);
  const Word g2 = om.big_gamma(2).prefix(20000);
  CHECK(g1[0] != g2[0]);
  CHECK(g1[1] != g2[1]);
  CHECK(g1.str().substr(2) == g2.str().substr(2));
  CHECK(g1.prefix(om.gamma(2).size()) == om.gamma(2));
  CHECK(g1.prefix(om.gamma(4).size()) == om.gamma(4));
  CHECK(g2.prefix(om.gamma_bar(4).size()) == om.gamma_bar(4));
  CHECK(is_conjugate(om.S(), om.L()));
}

TEST_CASE("crucial identities") {
  for (int c = 1; c <= 2; ++c) {
    OmegaParams p;
    p.c = c;
    const Omega om(p);
    const auto& alph = om.alphabet();
    for (int j = 0; j <= 4; ++j) {
      const Word& g = om.gamma(j);
      const Word& gb = om.gamma_bar(j);
      CHECK(sqrt_finite(alph, g + g) == g);
      CHECK(sqrt_finite(alph, g + gb) == g);
      CHECK(sqrt_finite(alph, gb + g) == gb);
      CHECK(sqrt_finite(alph, gb + gb) == gb);
    }
  }
}

TEST_CASE("shifts of Gamma1 are optimal squareful") {
  const Omega om(OmegaParams{});
  const Word g = om.big_gamma(1).prefix(30000);
  const auto& alph = om.alphabet();
  const std::string s = g.str();
  for (std::size_t i = 0; i + 40 < s.size(); ++i) {
    if (!alph.match(std::string_view(s).substr(i, 20))) FAIL("no minimal square at " << i);
  }
}

TEST_CASE("Omega_P equals the rotation codings") {
  for (OmegaParams p : {OmegaParams{}, OmegaParams{1, 1, 1, 0, Seed::plain, {}}, OmegaParams{2, 0, 2, 0, Seed::plain, {}}}) {
    const Omega om(p);
    const std::size_t q = om.n();
    REQUIRE(om.alpha_bar().get_den() == q);
    std::set<std::string> shifts, codings;
    const std::string sw = periodic(om.S()).prefix(3 * q).str();
    for (std::size_t j = 0; j < q; ++j) shifts.insert(sw.substr(j, 2 * q));
    for (Convention conv : {Convention::left_closed, Convention::right_closed}) {
      const RotationSystem sys = om.rotation(conv);
      codings.clear();
      for (std::size_t i = 0; i < q; ++i) codings.insert(rotation_coding(sys, BigRational(i, q), 2 * q).str());
      CHECK(codings == shifts);
    }
    CHECK(shifts.count(periodic(om.L()).prefix(2 * q).str()) == 1);
  }
}

TEST_CASE("type classification examples") {
  const Omega om(OmegaParams{});
  CHECK(classify_type(om, om.periodic_product(blk("S"))).type == ProductType::A);
  const auto c = classify_type(om, om.periodic_product(blk("S"), 4));
  CHECK(c.type == ProductType::C);
  CHECK(c.pi_prefix_len == 12);
  CHECK(in_Pi(om.alphabet(), bin("001001010010")));
  // A word beginning 010 followed by S is of type D.
  const auto d = classify_type(om, om.periodic_product(blk("S"), 5));
  CHECK(om.periodic_product(blk("S"), 5).letters(3) == bin("010"));
  CHECK(d.type == ProductType::D);
}

TEST_CASE("types are exclusive and odd shifts never give Pi prefixes") {
  const Omega om(OmegaParams{});
  const auto& alph = om.alphabet();
  const std::size_t n = om.n();
  for (const char* pair : {"SS", "SL", "LS", "LL"}) {
    const Word w = om.sigma(blk(pair));
    for (std::size_t l = 1; l < n; l += 2) CHECK_FALSE(in_Pi(alph, w.suffix(2 * n - l)));
  }
  std::mt19937_64 rng(4);
  for (int t = 0; t < 300; ++t) {
    const std::size_t pos = rng() % 3000, l = rng() % n;
    const auto prod = gamma_product(om, 1 + static_cast<int>(rng() % 2), pos * n + l);
    const Word w = prod.letters(2 * n);
    const bool b = l > 0 && in_Pi(alph, w.prefix(n - l));
    const bool cc = l > 0 && in_Pi(alph, w.prefix(2 * n - l));
    CHECK_FALSE((b && cc));
    const ProductType expect = l == 0 ? ProductType::A : b ? ProductType::B : cc ? ProductType::C : ProductType::D;
    CHECK(classify_type(om, prod).type == expect);
  }
}

TEST_CASE("square roots of products") {
  const Omega om(OmegaParams{});
  const auto& alph = om.alphabet();
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t pos = rng() % 2000, l = rng() % om.n();
    const auto prod = gamma_product(om, 1 + static_cast<int>(rng() % 2), pos * om.n() + l);
    const auto r = sqrt_of_product(om, prod);
    CHECK(r.type == classify_type(om, prod).type);
    const Word direct = sqrt_stream(alph, expand(prod)).prefix(400);
    if (r.type == ProductType::D) {
      CHECK(r.outcome == SqrtOutcome::periodic);
      REQUIRE(r.period_shift);
      CHECK(direct == om.s_omega(*r.period_shift).prefix(400));
    } else {
      REQUIRE(r.product);
      CHECK(expand(*r.product).prefix(400) == direct);
    }
  }
  // Omega_P is invariant.
  for (std::size_t j = 0; j < om.n(); ++j) {
    const auto r = sqrt_of_product(om, om.periodic_product(blk("S"), j));
    const Word root = sqrt_stream(alph, om.s_omega(j)).prefix(64);
    CHECK(om.conjugate_index(root.prefix(om.n())).has_value());
    CHECK(has_period(root.view(), om.n()));
    if (r.product) CHECK(expand(*r.product).prefix(64) == root);
    if (r.period_shift) CHECK(om.s_omega(*r.period_shift).prefix(64) == root);
  }
}

TEST_CASE("sigma commutes with the square root on Omega*") {
  const Omega om(OmegaParams{});
  for (int which = 1; which <= 2; ++which) {
    const Word w = gamma_star_prefix(1, which, 400);
    std::string halves;
    for (std::size_t i = 0; i + 1 < w.size(); i += 2) halves.push_back(w[i]);
    const Word lhs = om.sigma(blk(halves));
    const Word rhs = sqrt_stream(om.alphabet(), expand(gamma_product(om, which, 0))).prefix(lhs.size());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("synchronization") {
  const Omega om(OmegaParams{});
  for (int j = 0; j <= 3; ++j) CHECK(sync_factorization_start(om, om.big_gamma(1), j) == 0u);
  CHECK(sync_factorization_start(om, shift(om.big_gamma(1), 3), 0) == om.n() - 3);
  for (std::size_t l : {1u, 7u, 30u, 100u}) {
    const std::size_t g1 = om.gamma(1).size();
    CHECK(sync_factorization_start(om, shift(om.big_gamma(2), l), 1) == (g1 - l % g1) % g1);
  }
}

TEST_CASE("factorization properties") {
  for (int c = 1; c <= 2; ++c) {
    const Word g = gamma_star_prefix(c, 1, 2000);
    for (std::size_t i = 0; i + 200 <= 2000; i += 97) CHECK(check_factorization_properties(c, g.substr(i, 200)));
    CHECK(check_factorization_properties(c, gamma_star_prefix(c, 2, 600)));
    CHECK(check_factorization_properties(c, tau(c, g.prefix(100))));
  }
  CHECK_FALSE(check_factorization_properties(1, blk("LSL")));
  CHECK_FALSE(check_factorization_properties(1, Word::blocks("L") + pow(blk("S"), 6) + blk("L")));
  CHECK_FALSE(check_factorization_properties(2, blk("LSSSL") + blk("SSSSL")));
}

TEST_CASE("invariant subsets") {
  const Omega om(OmegaParams{});
  CHECK(invariant_subset_index(om, om.big_gamma(1), 6).kind == SubsetIndex::Kind::fixed_point);
  CHECK(invariant_subset_index(om, om.big_gamma(2), 6).kind == SubsetIndex::Kind::fixed_point);
  const auto s1 = invariant_subset_index(om, shift(om.big_gamma(1), om.n()), 6);
  CHECK(s1.kind == SubsetIndex::Kind::index);
  CHECK(s1.k == 0);
  CHECK(invariant_subset_index(om, shift(om.big_gamma(1), 3), 6).kind == SubsetIndex::Kind::not_in_omega_s);
  const auto s2 = invariant_subset_index(om, shift(om.big_gamma(1), om.gamma(1).size()), 6);
  CHECK(s2.kind == SubsetIndex::Kind::index);
  CHECK(s2.k >= 1);
}

TEST_CASE("A_k coincides with Omega_{gamma_{k+1}} on sampled words") {
  const Omega om(OmegaParams{});
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const int k = static_cast<int>(rng() % 3);
    const std::size_t blocks = rng() % 4000;
    const auto src = shift(om.big_gamma(1 + static_cast<int>(rng() % 2)), om.gamma(k).size() * blocks);
    const bool aligned = sync_factorization_start(om, src, k + 1) == 0u;
    CHECK(in_A_k(om, src, k) == aligned);
  }
}
