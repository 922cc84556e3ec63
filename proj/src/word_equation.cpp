#include "sqrtmap/word_equation.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace sqrtmap {

std::optional<SolutionCertificate> is_solution(const SquareAlphabet& alph, const Word& w) {
  if (w.empty()) return std::nullopt;
  if (w.alphabet() != Alphabet::binary) throw alphabet_error("binary word expected");
  const std::string& s = w.str();
  const std::string ww = s + s;
  std::vector<char> dead(s.size(), 0);
  std::vector<int> roots;
  // Invariant: the squares chosen so far spell ww[0..2i) and their roots spell s[0..i).
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) {
    if (i == s.size()) return true;
    if (dead[i]) return false;
    for (int r = 1; r <= 6; ++r) {
      const std::string& root = alph.root(r).str();
      const std::size_t len = root.size();
      if (i + len > s.size() || s.compare(i, len, root) != 0) continue;
      if (ww.compare(2 * i, len, root) != 0 || ww.compare(2 * i + len, len, root) != 0) continue;
      roots.push_back(r);
      if (dfs(i + len)) return true;
      roots.pop_back();
    }
    dead[i] = 1;
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  SolutionCertificate cert{w, roots, false};
  cert.verified = factor_minimal_squares(alph, Word::binary(ww)).roots == roots;
  return cert;
}

bool verify_standard_solutions(const std::vector<long>& d, int kmax) {
  if (d.size() < 2) throw std::invalid_argument("need at least d1 and d2");
  const SquareAlphabet alph(static_cast<int>(d[0]), static_cast<int>(d[1] - 1));
  for (int k = 1; k <= kmax; ++k) {
    const Word s = reversed_standard_word(d, k);
    if (s.size() <= alph.root(6).size()) continue;
    const Word l = swap_first_two(s);
    if (!is_primitive(s) || !is_primitive(l)) return false;
    if (!is_solution(alph, s) || !is_solution(alph, l)) return false;
  }
  return true;
}

namespace {

// Roots u with |u| <= bmax and uu occurring in text.
void collect_square_roots(const std::string& text, std::size_t bmax, std::set<std::string>& out) {
  for (std::size_t L = 1; L <= bmax; ++L) {
    std::size_t run = 0;
    for (std::size_t i = 0; i + L < text.size(); ++i) {
      run = text[i] == text[i + L] ? run + 1 : 0;
      if (run >= L) out.insert(text.substr(i + 1 - L, L));
    }
  }
}

}  // namespace

std::vector<SolutionCertificate> enumerate_solutions(const Omega& om, std::size_t bmax, std::size_t corpus_len) {
  corpus_len = std::max({corpus_len, 200 * bmax, static_cast<std::size_t>(100000)});
  std::set<std::string> roots;
  collect_square_roots(om.big_gamma(1).prefix(corpus_len).str(), bmax, roots);
  collect_square_roots(om.S().power(2 * bmax / om.n() + 3).str(), bmax, roots);
  std::vector<SolutionCertificate> out;
  for (const std::string& u : roots) {
    if (auto cert = is_solution(om.alphabet(), Word::binary(u))) out.push_back(std::move(*cert));
  }
  std::sort(out.begin(), out.end(), [](const SolutionCertificate& x, const SolutionCertificate& y) {
    if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
    return x.word.str() < y.word.str();
  });
  return out;
}

ConjugateAudit conjugate_solution_audit(const Omega& om, const Word& u) {
  if (!is_primitive(u)) throw std::invalid_argument("word must be primitive");
  if (u.size() % om.n() != 0) throw std::invalid_argument("word must be a product of S and L");
  for (std::size_t t = 0; t < u.size(); t += om.n()) {
    const Word b = u.substr(t, om.n());
    if (b != om.S() && b != om.L()) throw std::invalid_argument("word must be a product of S and L");
  }
  if (!is_solution(om.alphabet(), u)) throw std::invalid_argument("word must be a solution");
  ConjugateAudit audit;
  std::set<std::string> seen;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const Word v = rotate(u, j);
    if (seen.insert(v.str()).second && is_solution(om.alphabet(), v)) audit.solution_conjugates.push_back(v);
  }
  std::set<std::string> found;
  for (const Word& v : audit.solution_conjugates) found.insert(v.str());
  if (u == om.S() || u == om.L()) {
    audit.passed = found == std::set<std::string>{om.S().str(), om.L().str()};
  } else {
    audit.passed = found == std::set<std::string>{u.str()};
  }
  return audit;
}

SquaresReport squares_in_omega_star(int c, std::size_t bmax, std::size_t corpus_len) {
  corpus_len = std::max({corpus_len, 200 * bmax, static_cast<std::size_t>(100000)});
  std::set<std::string> found;
  collect_square_roots(gamma_star_prefix(c, 1, corpus_len).str(), bmax, found);
  SquaresReport report;
  report.all_conjugate_to_tau_powers = true;
  std::vector<Word> powers{Word::blocks("S")};
  while (powers.back().size() * (2 * c + 1) <= bmax) powers.push_back(tau(c, powers.back()));
  for (const std::string& r : found) {
    const Word u = Word::blocks(r);
    if (!is_primitive(u)) continue;
    report.roots.push_back(u);
    const bool ok = std::any_of(powers.begin(), powers.end(), [&](const Word& p) { return is_conjugate(u, p); });
    if (!ok) report.all_conjugate_to_tau_powers = false;
  }
  report.all_tau_powers_present = true;
  for (const Word& p : powers) {
    if (2 * p.size() > bmax) continue;
    if (!found.count(p.str())) report.all_tau_powers_present = false;
  }
  return report;
}

DoublingPattern doubling_orbits(int n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be a positive odd integer");
  DoublingPattern p;
  p.n = n;
  p.orbit_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (p.orbit_of[i] >= 0) continue;
    std::vector<int> orbit;
    for (int x = i; p.orbit_of[x] < 0; x = (2 * x) % n) {
      p.orbit_of[x] = static_cast<int>(p.orbits.size());
      orbit.push_back(x);
    }
    std::sort(orbit.begin(), orbit.end());
    p.orbits.push_back(std::move(orbit));
  }
  return p;
}

std::string format_orbits(const DoublingPattern& p) {
  std::string out;
  for (const auto& orbit : p.orbits) {
    if (!out.empty()) out += ' ';
    out += '{';
    for (std::size_t i = 0; i < orbit.size(); ++i) out += (i ? "," : "") + std::to_string(orbit[i]);
    out += '}';
  }
  return out;
}

Word induced_word(const DoublingPattern& p, const std::vector<char>& assignment) {
  if (assignment.size() != p.orbits.size()) throw std::invalid_argument("one letter per orbit is required");
  std::string u;
  for (int i = 0; i < p.n; ++i) {
    const char x = assignment[p.orbit_of[i]];
    if (x != 'S' && x != 'L') throw std::invalid_argument("orbit letters must be S or L");
    u.push_back(x);
  }
  return Word::blocks(u);
}

std::pair<Word, Word> pattern_to_substitution(const DoublingPattern& p, const std::vector<char>& assignment) {
  const Word tail = induced_word(p, assignment).substr(1);
  return {Word::blocks("L") + tail, Word::blocks("S") + tail};
}

bool check_self_sqrt(const Omega& om, const Word& u, std::size_t depth) {
  if (u.size() % 2 == 0) throw std::invalid_argument("pattern length must be odd");
  const Word period = om.sigma(u);
  if (depth == 0) depth = 3 * period.size();
  InfiniteWordSource src = periodic(period);
  auto root = sqrt_stream(om.alphabet(), src).try_prefix(depth);
  return root && *root == src.prefix(depth);
}

}  // namespace sqrtmap
