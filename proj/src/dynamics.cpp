#include "sqrtmap/dynamics.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

namespace sqrtmap {

namespace {

int compare_words(const Word& u, const Word& v) {
  if (u == v) return 0;
  return lex_less(u, v) ? -1 : 1;
}

bool certified_periodic(const Omega& om, const InfiniteWordSource& src, std::size_t window) {
  return detect_period(src, om.n(), std::max(window, 3 * om.n()), om.S());
}

}  // namespace

OrbitRecord iterate_sqrt(const Omega& om, const InfiniteWordSource& src, int m, std::size_t window) {
  const std::size_t n = om.n();
  if (window == 0) window = 6 * n;
  const auto successors = periodic_successors(om);
  OrbitRecord rec;
  rec.start = src.descriptor();
  InfiniteWordSource cur = src;
  Word start_fp;
  for (int i = 0; i <= m; ++i) {
    OrbitStep st;
    try {
      st.fingerprint = cur.prefix(n);
      if (i == 0) start_fp = st.fingerprint;
      st.cmp_start = compare_words(st.fingerprint, start_fp);
      if (cur.product()) st.type = classify_type(om, *cur.product()).type;
      st.periodic = certified_periodic(om, cur, window);
    } catch (const poisoned_source& e) {
      rec.fault = e.fault();
      rec.fault_step = i;
      break;
    }
    if (st.periodic) {
      if (!rec.n_periodic) {
        rec.n_periodic = i;
        rec.period = st.fingerprint;
      }
      if (!rec.n_fixed && (st.fingerprint == om.S() || st.fingerprint == om.L())) rec.n_fixed = i;
    }
    const bool periodic_now = st.periodic;
    const Word fp = st.fingerprint;
    rec.steps.push_back(std::move(st));
    if (i == m) break;
    try {
      if (periodic_now) {
        // Once periodic, the word is T^j(S^omega) and the successor table replaces the stream.
        cur = om.s_omega(successors[*om.conjugate_index(fp)]);
      } else if (cur.product()) {
        cur = *sqrt_of_product(om, *cur.product(), false).word;
      } else {
        cur = sqrt_stream(om.alphabet(), cur);
      }
    } catch (const std::logic_error& e) {
      rec.fault = SourceFault{0, e.what()};
      rec.fault_step = i + 1;
      break;
    }
  }
  return rec;
}

std::vector<std::size_t> periodic_successors(const Omega& om) {
  std::vector<std::size_t> next(om.n());
  for (std::size_t j = 0; j < om.n(); ++j) {
    auto idx = om.conjugate_index(sqrt_stream(om.alphabet(), om.s_omega(j)).prefix(om.n()));
    if (!idx) throw std::logic_error("square root of a shift of S^omega is not a shift of S^omega");
    next[j] = *idx;
  }
  return next;
}

std::vector<int> periodic_steps(const Omega& om) {
  const auto next = periodic_successors(om);
  std::vector<int> steps(om.n());
  for (std::size_t j = 0; j < om.n(); ++j) {
    std::size_t x = j;
    int count = 0;
    while (x != 0 && x != om.l_index()) {
      x = next[x];
      if (++count > static_cast<int>(om.n())) throw std::logic_error("periodic orbit misses S^omega and L^omega");
    }
    steps[j] = count;
  }
  return steps;
}

BigRational periodic_intercept(const Omega& om, std::size_t j, Convention conv) {
  const RotationSystem sys = om.rotation(conv);
  const Word target = rotate(om.S(), j % om.n());
  const std::size_t q = sys.q();
  for (std::size_t i = 0; i < q; ++i) {
    BigRational rho(static_cast<long>(i), static_cast<long>(q));
    rho.canonicalize();
    if (rotation_coding(sys, rho, om.n()) == target) return rho;
  }
  throw std::logic_error("no intercept codes " + target.str());
}

std::optional<int> steps_to_fixed(const Omega& om, const SLProduct& prod, int cap) {
  const auto psteps = periodic_steps(om);
  if (prod.shift == 0) {
    InfiniteWordSource w = expand(prod);
    if (certified_periodic(om, w, 6 * om.n())) {
      const int p = psteps[*om.conjugate_index(w.prefix(om.n()))];
      return p <= cap ? std::optional<int>(p) : std::nullopt;
    }
  }
  SLProduct cur = prod;
  for (int steps = 1; steps <= cap; ++steps) {
    ProductSqrt r = sqrt_of_product(om, cur, false);
    if (r.outcome == SqrtOutcome::periodic) {
      const int total = steps + psteps[*r.period_shift];
      return total <= cap ? std::optional<int>(total) : std::nullopt;
    }
    cur = std::move(*r.product);
  }
  return std::nullopt;
}

PsiOrbit psi_orbit(const Omega& om, Convention conv, const BigRational& rho, int cap) {
  const RotationSystem sys = om.rotation(conv);
  // [S] is the level-(q-1) interval of the prefix of S: codings are q-periodic.
  PsiOrbit orbit{sys.slope(), {rho}, *factor_interval(sys, om.S().prefix(om.n() - 1)),
                 *factor_interval(sys, om.L().prefix(om.n() - 1))};
  BigRational x = rho;
  for (int i = 0; i < cap; ++i) {
    if (orbit.s_interval.contains(x) || orbit.l_interval.contains(x)) break;
    x = psi(sys, x);
    orbit.points.push_back(x);
  }
  return orbit;
}

int psi_steps(const Omega& om, Convention conv, const BigRational& rho) {
  const int cap = 4 * static_cast<int>(om.n()) + 64;
  PsiOrbit o = psi_orbit(om, conv, rho, cap);
  const BigRational& last = o.points.back();
  if (!o.s_interval.contains(last) && !o.l_interval.contains(last)) {
    throw std::logic_error("psi orbit did not reach [S] or [L]");
  }
  return static_cast<int>(o.points.size()) - 1;
}

int steps_bound(const RotationSystem& sys, const FactorInterval& s_interval, const FactorInterval& l_interval) {
  const BigRational shortest = std::min(s_interval.length(), l_interval.length());
  if (shortest <= 0) throw std::invalid_argument("intervals must be nonempty");
  const BigRational ratio = sys.boundary() / shortest;
  int e = 0;
  BigRational p = 1;
  while (p < ratio) {
    p *= 2;
    ++e;
  }
  return e;
}

int steps_bound(const Omega& om, Convention conv) {
  PsiOrbit o = psi_orbit(om, conv, om.rotation(conv).boundary(), 1);
  return steps_bound(om.rotation(conv), o.s_interval, o.l_interval);
}

double fibonacci_estimate(std::uint64_t length) {
  std::uint64_t prev = 1, cur = 2;
  while (cur < length) {
    std::uint64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  if (cur != length) throw std::invalid_argument(std::to_string(length) + " is not a Fibonacci number >= 2");
  const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
  return static_cast<double>(std::log2((phi - 1.0L) * (phi * cur + prev)));
}

std::string truncate_decimal(double x, int digits) {
  long double scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const long long units = static_cast<long long>(std::floor(static_cast<long double>(x) * scale));
  const long long s = static_cast<long long>(scale);
  std::string frac = std::to_string(units % s);
  while (static_cast<int>(frac.size()) < digits) frac = "0" + frac;
  return std::to_string(units / s) + (digits > 0 ? "." + frac : "");
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::equal:
      return "equal";
    case Ordering::less:
      return "less";
    case Ordering::greater:
      return "greater";
  }
  return "?";
}

EmbeddingVerdict embedding_check(const Omega& om, const SLProduct& prod) {
  InfiniteWordSource w = expand(prod);
  EmbeddingVerdict v;
  v.u1 = w.prefix(om.n());
  v.u2 = sqrt_stream(om.alphabet(), w).prefix(om.n());
  const int c = compare_words(v.u1, v.u2);
  v.order = c == 0 ? Ordering::equal : c < 0 ? Ordering::less : Ordering::greater;
  v.violation = (v.u1[0] == '0' && v.order == Ordering::greater) || (v.u1[0] == '1' && v.order == Ordering::less);
  return v;
}

MonotoneVerdict monotone_or_periodic_check(const Omega& om, const SLProduct& prod) {
  const std::size_t n = om.n();
  MonotoneVerdict v;
  v.u1 = expand(prod).prefix(n);
  ProductSqrt r1 = sqrt_of_product(om, prod, false);
  v.u2 = r1.word->prefix(n);
  bool periodic = r1.outcome == SqrtOutcome::periodic;
  if (periodic) {
    v.u3 = sqrt_stream(om.alphabet(), *r1.word).prefix(n);
  } else {
    ProductSqrt r2 = sqrt_of_product(om, *r1.product, false);
    periodic = r2.outcome == SqrtOutcome::periodic;
    v.u3 = r2.word->prefix(n);
  }
  // Words beginning with 1 move down instead of up.
  const int up = v.u1[0] == '0' ? 1 : -1;
  if (compare_words(v.u2, v.u1) == up) {
    v.branch = 1;
  } else if (compare_words(v.u3, v.u1) == up) {
    v.branch = 2;
  } else if (periodic) {
    v.branch = 3;
  }
  return v;
}

std::string to_string(AsymptoticClass a) {
  switch (a) {
    case AsymptoticClass::periodic_point:
      return "periodic_point";
    case AsymptoticClass::to_S_or_L:
      return "to_S_or_L";
    case AsymptoticClass::aperiodic_nonasymptotic:
      return "aperiodic_nonasymptotic";
    case AsymptoticClass::undetermined:
      return "undetermined";
  }
  return "?";
}

AsymptoticClass asymptotic_class(const Omega& om, const InfiniteWordSource& src, const SearchBudget& budget) {
  const std::size_t window = std::max(budget.window, 6 * om.n());
  const auto& prod = src.product();
  if (prod && prod->shift > 0) {
    return steps_to_fixed(om, *prod, budget.cap) ? AsymptoticClass::to_S_or_L : AsymptoticClass::undetermined;
  }
  if (certified_periodic(om, src, window)) {
    const auto j = *om.conjugate_index(src.prefix(om.n()));
    return (j == 0 || j == om.l_index()) ? AsymptoticClass::periodic_point : AsymptoticClass::to_S_or_L;
  }
  SubsetIndex idx = invariant_subset_index(om, src, -1, std::max<std::size_t>(budget.budget, 4 * om.n()));
  switch (idx.kind) {
    case SubsetIndex::Kind::fixed_point:
      return AsymptoticClass::periodic_point;
    case SubsetIndex::Kind::index:
      return AsymptoticClass::aperiodic_nonasymptotic;
    case SubsetIndex::Kind::not_in_omega_s:
      break;
  }
  return AsymptoticClass::undetermined;
}

SqrtOmegaCount count_sqrt_omega_minus_omega_A(const Omega& om, std::size_t budget) {
  SqrtOmegaCount out;
  if (budget == 0) return out;
  auto blocks = std::make_shared<const std::string>(gamma_star_prefix(om.c(), 1, budget + 16).str());
  for (std::size_t p = 0; p < budget; ++p) {
    for (std::size_t l = 1; l < om.n(); ++l) {
      SLProduct prod = om.product([blocks, p](std::size_t t) { return (*blocks)[p + t]; }, l);
      if (classify_type(om, prod).type != ProductType::D) continue;
      out.shifts.insert(*sqrt_of_product(om, prod, false).period_shift);
    }
  }
  out.count = out.shifts.size();
  return out;
}

namespace {

// The word after `steps` square roots, following products symbolically and periodic words by successor.
class OrbitWalker {
 public:
  OrbitWalker(const Omega& om, SLProduct prod, const std::vector<std::size_t>& next)
      : om_(om), next_(next), prod_(std::move(prod)) {}
  OrbitWalker(const Omega& om, std::size_t j, const std::vector<std::size_t>& next)
      : om_(om), next_(next), periodic_(j) {}

  Word prefix(std::size_t len) const {
    if (periodic_) return om_.s_omega(*periodic_).prefix(len);
    return prod_->letters(len);
  }

  void step() {
    if (periodic_) {
      periodic_ = next_[*periodic_];
      return;
    }
    ProductSqrt r = sqrt_of_product(om_, *prod_, false);
    if (r.outcome == SqrtOutcome::periodic) {
      periodic_ = *r.period_shift;
      prod_.reset();
    } else {
      prod_ = std::move(r.product);
    }
  }

 private:
  const Omega& om_;
  const std::vector<std::size_t>& next_;
  std::optional<SLProduct> prod_;
  std::optional<std::size_t> periodic_;
};

}  // namespace

PeriodicPointReport periodic_point_search(const Omega& om, const SearchBudget& budget) {
  const std::size_t n = om.n();
  const std::size_t window = budget.window ? budget.window : 16 * n;
  const std::size_t max_blocks = static_cast<std::size_t>(std::max(budget.depth, 1));
  const int cap = std::max(budget.cap, 1);
  const auto next = periodic_successors(om);
  const std::size_t corpus = 20000;
  const std::size_t max_window = window << 10;

  struct Start {
    int which;
    std::size_t pos;
  };
  std::vector<Start> starts;
  for (int which : {1, 2}) {
    const std::string g = gamma_star_prefix(om.c(), which, corpus).str();
    std::map<std::string, std::size_t> first;
    for (std::size_t len = 1; len <= max_blocks; ++len) {
      for (std::size_t p = 0; p + len <= corpus / 2; ++p) first.emplace(g.substr(p, len), p);
    }
    std::set<std::size_t> positions;
    for (const auto& [y, p] : first) positions.insert(p);
    for (std::size_t p : positions) starts.push_back({which, p});
  }

  const Word g1 = om.big_gamma(1).prefix(window);
  const Word g2 = om.big_gamma(2).prefix(window);
  const Word sw = om.s_omega(0).prefix(window);
  const Word lw = om.s_omega(om.l_index()).prefix(window);
  auto name_of = [&](const Word& w) -> std::string {
    if (w == g1) return "Gamma1";
    if (w == g2) return "Gamma2";
    if (w == sw) return "S^w";
    if (w == lw) return "L^w";
    return "";
  };

  PeriodicPointReport report;
  std::map<std::string, PeriodicCandidate> survivors;
  auto test = [&](OrbitWalker walker, std::string descriptor) {
    ++report.candidates;
    PeriodicCandidate cand;
    cand.descriptor = std::move(descriptor);
    cand.prefix = walker.prefix(window);
    const OrbitWalker start = walker;
    auto record_witness = [&cand](int s, const Word& w, const Word& ref) {
      std::size_t i = 0;
      while (w[i] == ref[i]) ++i;
      cand.witness_step = s;
      cand.witness_position = i;
    };
    for (int s = 1; s <= cap; ++s) {
      walker.step();
      const Word w = walker.prefix(window);
      if (w == cand.prefix) {
        cand.period = s;
        break;
      }
      if (cand.witness_step < 0) record_witness(s, w, cand.prefix);
    }
    // A return on the window may be an artifact of its length: re-check the same period on longer prefixes.
    for (std::size_t len = 2 * window; cand.period > 0 && len <= max_window; len *= 2) {
      const Word ref = start.prefix(len);
      const Word w = walker.prefix(len);
      if (w != ref) {
        record_witness(cand.period, w, ref);
        cand.period = 0;
      }
    }
    if (cand.period > 0) {
      cand.name = name_of(cand.prefix);
      survivors.emplace(cand.prefix.str(), std::move(cand));
    }
  };

  for (const Start& st : starts) {
    const int c = om.c();
    for (std::size_t l = 0; l < n; ++l) {
      SLProduct prod =
          om.product([c, w = st.which, p = st.pos](std::size_t t) { return gamma_star_block(c, w, p + t); }, l);
      test(OrbitWalker(om, std::move(prod), next),
           "T^" + std::to_string(l) + "(T^" + std::to_string(st.pos) + "(Gamma" + std::to_string(st.which) + "*))");
    }
  }
  for (std::size_t j = 0; j < n; ++j) test(OrbitWalker(om, j, next), "T^" + std::to_string(j) + "(S^w)");

  for (auto& [key, cand] : survivors) report.survivors.push_back(std::move(cand));
  return report;
}

std::uint64_t doubling_period(std::uint64_t k, std::uint64_t modulus) {
  if (modulus % 2 == 0) throw std::invalid_argument("modulus must be odd");
  if (k == 0 || k >= modulus) throw std::invalid_argument("k must satisfy 0 < k < modulus");
  // d_{t+1} = 2 d_t + k; the map is a bijection modulo an odd number, so d returns to d_0 = 0.
  std::uint64_t d = k % modulus, t = 1;
  while (d != 0) {
    d = (2 * d + k) % modulus;
    ++t;
  }
  return t;
}

bool doubling_period_claim(int c, int imax) {
  const std::uint64_t base = 2 * static_cast<std::uint64_t>(c) + 1;
  std::uint64_t mi = base;
  for (int i = 1; i + 1 <= imax; ++i) {
    const std::uint64_t mnext = mi * base;
    std::vector<std::uint64_t> pi(mi);
    for (std::uint64_t k = 1; k < mi; ++k) pi[k] = doubling_period(k, mi);
    for (std::uint64_t k = 1; k < mnext; ++k) {
      if (k % mi == 0) continue;
      if (doubling_period(k, mnext) <= pi[k % mi]) return false;
    }
    mi = mnext;
  }
  return true;
}

std::vector<Table2Row> table2_experiment(const std::vector<std::size_t>& lengths) {
  static const std::map<std::size_t, std::string> published = {
      {8, "3.47"},    {13, "4.16"},   {21, "4.85"},    {34, "5.55"},    {55, "6.24"},
      {89, "6.94"},   {144, "7.63"},  {233, "8.33"},   {377, "9.02"},   {610, "9.71"},
      {987, "10.41"}, {1597, "11.11"}, {2584, "11.80"}, {4181, "12.50"}, {6765, "13.19"}};
  std::vector<Table2Row> rows;
  for (std::size_t len : lengths) {
    Table2Row r;
    r.length = len;
    r.estimate = fibonacci_estimate(len);
    r.shown = truncate_decimal(r.estimate, 2);
    if (auto it = published.find(len); it != published.end()) r.published = it->second;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace sqrtmap
