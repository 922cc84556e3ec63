#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqrtmap/omega.hpp"
#include "sqrtmap/squares.hpp"
#include "sqrtmap/words.hpp"

namespace sqrtmap {

// w = X1...Xn with X1^2...Xn^2 = w^2, each X_i a minimal square root.
struct SolutionCertificate {
  Word word;
  std::vector<int> roots;  // indices 1..6
  // Tokenizing w^2 gives exactly X1^2, ..., Xn^2.
  bool verified = false;
};

std::optional<SolutionCertificate> is_solution(const SquareAlphabet& alph, const Word& w);

// s_k and L(s_k) are primitive solutions for every k <= kmax with |s_k| > |S6|,
// for the slope [0; d1+1, d2, ...] and the alphabet a = d1, b = d2 - 1.
bool verify_standard_solutions(const std::vector<long>& d, int kmax);

// Solutions u whose square u^2 is a factor of Omega with |u| <= bmax, sorted by length then letters.
std::vector<SolutionCertificate> enumerate_solutions(const Omega& om, std::size_t bmax, std::size_t corpus_len = 0);

struct ConjugateAudit {
  // Conjugates of u (u included) that are solutions.
  std::vector<Word> solution_conjugates;
  bool passed = false;
};
ConjugateAudit conjugate_solution_audit(const Omega& om, const Word& u);

struct SquaresReport {
  std::vector<Word> roots;  // primitive roots over {S,L}
  bool all_conjugate_to_tau_powers = false;
  bool all_tau_powers_present = false;
};
SquaresReport squares_in_omega_star(int c, std::size_t bmax, std::size_t corpus_len = 0);

struct DoublingPattern {
  int n = 1;
  // Orbits of i -> 2i mod n, each sorted, ordered by least element.
  std::vector<std::vector<int>> orbits;
  std::vector<int> orbit_of;
};
DoublingPattern doubling_orbits(int n);
std::string format_orbits(const DoublingPattern& p);

// u[i] is the letter assigned to the orbit of i; assignment has one entry per orbit.
Word induced_word(const DoublingPattern& p, const std::vector<char>& assignment);
// The images (L u', S u') of S and L, where u' is the induced word without its first letter.
std::pair<Word, Word> pattern_to_substitution(const DoublingPattern& p, const std::vector<char>& assignment);

// sigma(u^omega) is fixed by the square root on its first depth letters (0 selects 3|sigma(u)|).
bool check_self_sqrt(const Omega& om, const Word& u, std::size_t depth = 0);

}  // namespace sqrtmap
