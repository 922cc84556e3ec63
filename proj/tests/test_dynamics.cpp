#include <doctest.h>

#include <numeric>
#include <random>
#include <string>

#include "sqrtmap/dynamics.hpp"

using namespace sqrtmap;

namespace {

Word bin(const std::string& s) { return Word::binary(s); }
Word blk(const std::string& s) { return Word::blocks(s); }

BigRational q(long p, long d) {
  BigRational x(p, d);
  x.canonicalize();
  return x;
}

SLProduct gamma_product(const Omega& om, int which, std::size_t shift) {
  const int c = om.c();
  return om.product([c, which](std::size_t t) { return gamma_star_block(c, which, t); }, shift);
}

// Oracle: iterate the letter-level square root until a long prefix equals that of S^omega or L^omega.
std::optional<int> steps_to_fixed_oracle(const Omega& om, const InfiniteWordSource& w, int cap) {
  const std::size_t window = 24 * om.n();
  const Word s = periodic(om.S()).prefix(window), l = periodic(om.L()).prefix(window);
  InfiniteWordSource cur = w;
  for (int i = 0; i <= cap; ++i) {
    const Word p = cur.prefix(window);
    if (p == s || p == l) return i;
    cur = sqrt_stream(om.alphabet(), cur);
  }
  return std::nullopt;
}

// Distance to the boundary point within the containing interval; 0 is the point 1 when intervals are right-closed.
BigRational interval_distance(BigRational x, const BigRational& b, Convention conv) {
  if (x == 0 && conv == Convention::right_closed) x = 1;
  return abs(x - b);
}

// S followed by Gamma1, as a block product.
SLProduct s_gamma1(const Omega& om) {
  const int c = om.c();
  return om.product([c](std::size_t t) { return t == 0 ? 'S' : gamma_star_block(c, 1, t - 1); });
}

// The worked example T^4(S S u) with S S u a shift of Gamma1.
SLProduct worked_product(const Omega& om) {
  const std::size_t t = gamma_star_prefix(1, 1, 200).str().find("SS");
  return gamma_product(om, 1, 8 * t + 4);
}

InfiniteWordSource worked_example(const Omega& om) { return expand(worked_product(om), "T^4(SSu)"); }

}  // namespace

TEST_CASE("rational square root theorem on one period") {
  struct Case {
    BigRational slope;
    int a, b;
  };
  for (const Case& cs : {Case{q(3, 8), 1, 0}, Case{q(5, 13), 1, 0}, Case{q(3, 11), 2, 0}, Case{q(5, 12), 1, 1}}) {
    const auto alph = build_alphabet(cs.a, cs.b);
    const long den = cs.slope.get_den().get_si();
    for (Convention conv : {Convention::left_closed, Convention::right_closed}) {
      const RotationSystem sys(cs.slope, conv);
      for (long i = 0; i < 4 * den; ++i) {
        const BigRational rho = q(i, 4 * den);
        const Word period = rotation_coding(sys, rho, den);
        const Word root = sqrt_stream(alph, periodic(period)).prefix(den);
        CAPTURE(rho.get_str());
        CHECK(root == rotation_coding(sys, psi(sys, rho), den));
      }
    }
  }
}

TEST_CASE("iterate_sqrt") {
  const Omega om(OmegaParams{});
  const auto ex = iterate_sqrt(om, worked_example(om), 5);
  REQUIRE(ex.n_periodic);
  CHECK(*ex.n_periodic == 3);
  CHECK(ex.period == om.S());
  CHECK(ex.n_fixed == 3);
  CHECK(ex.steps[0].type == ProductType::C);
  CHECK(ex.steps[1].type == ProductType::B);
  CHECK(ex.steps[2].type == ProductType::D);
  CHECK(ex.steps[1].fingerprint.prefix(6) == bin("010010"));

  const auto g2 = iterate_sqrt(om, om.big_gamma(2), 4);
  CHECK_FALSE(g2.n_periodic);
  for (const auto& st : g2.steps) CHECK(st.fingerprint == om.L());

  const auto s = iterate_sqrt(om, om.s_omega(0), 2);
  CHECK(s.n_periodic == 0);
  CHECK(s.n_fixed == 0);
  for (const auto& st : s.steps) CHECK(st.fingerprint.size() == om.n());
}

TEST_CASE("periodic successors follow psi") {
  const Omega om(OmegaParams{});
  const auto next = periodic_successors(om);
  for (Convention conv : {Convention::left_closed, Convention::right_closed}) {
    const RotationSystem sys = om.rotation(conv);
    for (std::size_t j = 0; j < om.n(); ++j) {
      // psi lands inside the interval of the successor, not necessarily on a multiple of 1/q.
      CHECK(rotation_coding(sys, psi(sys, periodic_intercept(om, j, conv)), om.n()) == rotate(om.S(), next[j]));
    }
  }
  CHECK(next[0] == 0);
  CHECK(next[om.l_index()] == om.l_index());
}

TEST_CASE("steps_to_fixed") {
  const Omega om(OmegaParams{});
  CHECK(steps_to_fixed(om, om.periodic_product(blk("S"))) == 0);
  CHECK(steps_to_fixed(om, worked_product(om)) == 3);
  CHECK_FALSE(steps_to_fixed(om, gamma_product(om, 1, 0), 10));
  std::mt19937_64 rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t pos = rng() % 500, l = 1 + rng() % (om.n() - 1);
    const auto prod = gamma_product(om, 1 + static_cast<int>(rng() % 2), pos * om.n() + l);
    const auto symbolic = steps_to_fixed(om, prod, 12);
    REQUIRE(symbolic);
    // Table 1 gives 3 for |S| = 8.
    CHECK(*symbolic <= 3);
    CHECK(steps_to_fixed_oracle(om, expand(prod), 12) == symbolic);
  }
}

TEST_CASE("psi orbits and the step bound") {
  const Omega om(OmegaParams{});
  for (Convention conv : {Convention::left_closed, Convention::right_closed}) {
    const RotationSystem sys = om.rotation(conv);
    const BigRational b = sys.boundary();
    CHECK(psi_steps(om, conv, b) == 0);
    const int bound = steps_bound(om, conv);
    // With a rational slope both intervals have length 1/q, so the bound is ceil(log2(q - p)).
    CHECK(bound == 3);
    for (long i = 0; i < 64; ++i) {
      const BigRational rho = q(i, 64);
      const auto orbit = psi_orbit(om, conv, rho);
      for (std::size_t k = 1; k < orbit.points.size(); ++k) {
        const BigRational d0 = interval_distance(orbit.points[k - 1], b, conv),
                         d1 = interval_distance(orbit.points[k], b, conv);
        CHECK(d1 * 2 == d0);
      }
      CHECK(psi_steps(om, conv, rho) <= bound);
    }
  }
  CHECK(psi_steps(om, Convention::left_closed, periodic_intercept(om, 0, Convention::left_closed)) == 0);
}

TEST_CASE("Fibonacci estimates") {
  CHECK(truncate_decimal(fibonacci_estimate(8), 2) == "3.47");
  CHECK(truncate_decimal(fibonacci_estimate(13), 2) == "4.16");
  CHECK(truncate_decimal(fibonacci_estimate(144), 2) == "7.63");
  CHECK(truncate_decimal(fibonacci_estimate(6765), 2) == "13.19");
  CHECK_THROWS(fibonacci_estimate(9));
  CHECK(truncate_decimal(2.999, 2) == "2.99");
  CHECK(truncate_decimal(3.0, 2) == "3.00");
  CHECK(table1_published_value(8) == 3);
  CHECK(table1_published_value(89) == 6);
  CHECK_FALSE(table1_published_value(9));
  CHECK(fibonacci_index(8) == 4);
  CHECK(fibonacci_index(13) == 5);
}

TEST_CASE("embedding lemma and monotonicity") {
  const Omega om(OmegaParams{});
  CHECK(embedding_check(om, gamma_product(om, 1, 0)).order == Ordering::equal);
  CHECK(monotone_or_periodic_check(om, worked_product(om)).branch != 0);
  std::mt19937_64 rng(13);
  int less = 0, greater = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t pos = rng() % 3000, l = 1 + rng() % (om.n() - 1);
    const auto prod = gamma_product(om, 1 + static_cast<int>(rng() % 2), pos * om.n() + l);
    const auto e = embedding_check(om, prod);
    CHECK_FALSE(e.violation);
    less += e.order == Ordering::less;
    greater += e.order == Ordering::greater;
    CHECK(monotone_or_periodic_check(om, prod).branch != 0);
  }
  CHECK(less > 0);
  CHECK(greater > 0);
}

TEST_CASE("asymptotic classes") {
  const Omega om(OmegaParams{});
  const SearchBudget budget;
  CHECK(asymptotic_class(om, worked_example(om), budget) == AsymptoticClass::to_S_or_L);
  CHECK(asymptotic_class(om, om.big_gamma(2), budget) == AsymptoticClass::periodic_point);
  CHECK(asymptotic_class(om, om.s_omega(0), budget) == AsymptoticClass::periodic_point);
  CHECK(asymptotic_class(om, om.s_omega(om.l_index()), budget) == AsymptoticClass::periodic_point);
  CHECK(asymptotic_class(om, expand(gamma_product(om, 1, om.n())), budget) ==
        AsymptoticClass::aperiodic_nonasymptotic);
}

TEST_CASE("preimage chains") {
  const Omega om(OmegaParams{});
  const auto g = preimage_chain(om, om.big_gamma(1), 4, 64);
  CHECK(g.complete);
  CHECK(g.verified == 4);
  const auto s = preimage_chain(om, om.s_omega(0), 4, 64);
  CHECK(s.complete);
  const auto sg = preimage_chain(om, expand(s_gamma1(om)), 6, 64);
  CHECK(sg.complete);
  CHECK(sg.verified == 6);
}

TEST_CASE("preimages of S Gamma") {
  const Omega om(OmegaParams{});
  SearchBudget budget;
  const Word target = sqrt_stream(om.alphabet(), expand(s_gamma1(om))).prefix(256);
  const auto pre = find_preimages(om, target, budget);
  CHECK(pre.size() == 2);
  if (pre.size() == 2) CHECK(inspect_preimage_pair(om, pre[0].letters, pre[1].letters).zs_gamma_form);
  const auto fixed = find_preimages(om, om.big_gamma(1).prefix(256), budget);
  bool found_gamma = false;
  for (const auto& d : fixed) found_gamma |= d.letters == om.big_gamma(1).prefix(d.letters.size()) ||
                                             d.letters == om.big_gamma(2).prefix(d.letters.size());
  CHECK(found_gamma);
  CHECK(fixed.size() <= 2);
}

TEST_CASE("doubling periods") {
  CHECK(doubling_period(1, 3) == 2);
  CHECK(doubling_period(2, 3) == 2);
  CHECK_THROWS(doubling_period(3, 3));
  CHECK_THROWS(doubling_period(0, 3));
  // Oracle: the orbit length of 2 modulo the modulus divided by gcd.
  for (std::uint64_t m : {9u, 25u, 27u}) {
    for (std::uint64_t k = 1; k < m; ++k) {
      // (2^t - 1) k mod m has period equal to the order of 2 modulo m / gcd(k, m).
      const std::uint64_t mm = m / std::gcd(k, m);
      std::uint64_t x = 1, t = 0;
      do {
        x = x * 2 % mm;
        ++t;
      } while (x != 1 % mm);
      CHECK(doubling_period(k, m) == t);
    }
  }
  CHECK(doubling_period_claim(1, 4));
}

TEST_CASE("square roots of Omega_A that leave Omega_A") {
  const Omega om(OmegaParams{});
  CHECK(count_sqrt_omega_minus_omega_A(om, 0).count == 0);
  const auto c = count_sqrt_omega_minus_omega_A(om, 2000);
  CHECK(c.count >= 1);
  CHECK(c.count <= om.n());
  MESSAGE("|sqrt(Omega) \\ Omega_A| reached for |S| = 8: " << c.count);
}
