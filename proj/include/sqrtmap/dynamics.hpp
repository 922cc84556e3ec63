#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqrtmap/lazy_word.hpp"
#include "sqrtmap/omega.hpp"
#include "sqrtmap/sturmian.hpp"

namespace sqrtmap {

// Knobs shared by the budgeted searches. Every search is deterministic given these values.
struct SearchBudget {
  // Table 1: blocks kept per step. Periodic points: blocks per candidate window.
  int depth = 12;
  // Maximum number of square root steps.
  int cap = 64;
  // Letters of prefix compared or certified.
  std::size_t window = 0;
  // Number of samples or enumerated starts.
  std::size_t budget = 10000;
  std::uint64_t seed = 1;
};

struct OrbitStep {
  Word fingerprint;  // prefix of length |S|
  // Symbolic type of the word at this step, when its block description is known.
  std::optional<ProductType> type;
  bool periodic = false;
  // Sign of the lexicographic comparison of the fingerprint with the starting fingerprint.
  int cmp_start = 0;
};

struct OrbitRecord {
  std::string start;
  std::vector<OrbitStep> steps;  // steps[0] describes the start word
  std::optional<int> n_periodic;
  std::optional<int> n_fixed;
  std::optional<Word> period;
  std::optional<SourceFault> fault;
  int fault_step = -1;
};

// m square root steps; window = 0 certifies periodicity on 6|S| letters.
OrbitRecord iterate_sqrt(const Omega& om, const InfiniteWordSource& src, int m, std::size_t window = 0);

// next[j]: the image of T^j(S^omega) under the square root is T^{next[j]}(S^omega).
std::vector<std::size_t> periodic_successors(const Omega& om);
// Steps from T^j(S^omega) to S^omega or L^omega along periodic_successors.
std::vector<int> periodic_steps(const Omega& om);
// The intercept i/q whose rotation coding under conv is T^j(S^omega).
BigRational periodic_intercept(const Omega& om, std::size_t j, Convention conv);

// Least n <= cap with sqrt^n(w) in {S^omega, L^omega}.
std::optional<int> steps_to_fixed(const Omega& om, const SLProduct& prod, int cap = 64);

struct PsiOrbit {
  BigRational slope;
  std::vector<BigRational> points;
  FactorInterval s_interval;
  FactorInterval l_interval;
};

// Iterates psi from rho until it enters [S] u [L] or cap steps pass.
PsiOrbit psi_orbit(const Omega& om, Convention conv, const BigRational& rho, int cap = 256);
int psi_steps(const Omega& om, Convention conv, const BigRational& rho);
// ceil(log2((1 - alpha) / min(|[S]|, |[L]|))).
int steps_bound(const RotationSystem& sys, const FactorInterval& s_interval, const FactorInterval& l_interval);
int steps_bound(const Omega& om, Convention conv);

// log2((phi - 1)(phi F_k + F_{k-1})) for the Fibonacci number F_k = length.
double fibonacci_estimate(std::uint64_t length);
// Decimal rendering cut (not rounded) to the given number of digits.
std::string truncate_decimal(double x, int digits);

enum class Ordering { equal, less, greater };
std::string to_string(Ordering o);

struct EmbeddingVerdict {
  Word u1;
  Word u2;
  Ordering order = Ordering::equal;
  bool violation = false;
};
EmbeddingVerdict embedding_check(const Omega& om, const SLProduct& prod);

struct MonotoneVerdict {
  // 1: u2 moved away from u1, 2: u3 did, 3: the second root is periodic, 0: none (a violation).
  int branch = 0;
  Word u1, u2, u3;
};
MonotoneVerdict monotone_or_periodic_check(const Omega& om, const SLProduct& prod);

enum class AsymptoticClass { periodic_point, to_S_or_L, aperiodic_nonasymptotic, undetermined };
std::string to_string(AsymptoticClass a);
AsymptoticClass asymptotic_class(const Omega& om, const InfiniteWordSource& src, const SearchBudget& budget);

struct SqrtOmegaCount {
  std::size_t count = 0;
  std::set<std::size_t> shifts;  // j with T^j(S^omega) reached
};
// Type D words T^l(T^p(Gamma1)) for block positions p < budget and 0 < l < |S|.
SqrtOmegaCount count_sqrt_omega_minus_omega_A(const Omega& om, std::size_t budget);

struct PeriodicCandidate {
  std::string descriptor;
  std::string name;  // Gamma1, Gamma2, S^w, L^w or empty
  Word prefix;
  int period = 0;  // 0 when refuted
  // Step and position of the first prefix disagreement witnessing the refutation.
  int witness_step = -1;
  std::size_t witness_position = 0;
};
struct PeriodicPointReport {
  std::size_t candidates = 0;
  std::vector<PeriodicCandidate> survivors;
};
// budget.depth: maximum block window length, budget.cap: largest period tried,
// budget.window: letters compared (0 selects 16|S|). A return is confirmed on prefixes up to 1024 times longer.
PeriodicPointReport periodic_point_search(const Omega& om, const SearchBudget& budget);

// Minimal period of d_t = (2^t - 1) k mod modulus.
std::uint64_t doubling_period(std::uint64_t k, std::uint64_t modulus);
// p_{i+1}(k) > p_i(k mod m_i) for every 0 < k < m_{i+1} with k mod m_i != 0, m_i = (2c+1)^i, i+1 <= imax.
bool doubling_period_claim(int c, int imax);

// Table 1.
struct Table1Row {
  std::size_t length = 0;
  int n = -1;
  int published_n = -1;
  Convention convention = Convention::left_closed;
  // Some step asked for a block beyond the depth window.
  bool truncated = false;
  // The periodic phase counted through psi agrees with the letter-level count for every shift.
  bool psi_agrees = true;
  std::size_t witness_shift = 0;
  Word witness_blocks;
  // Letter-level replay of the witness gives n.
  bool witness_verified = false;
  std::size_t states = 0;
  // Filled by table1_experiment when n differs from the published value.
  std::optional<int> alternate_n;
};

std::optional<int> table1_published_value(std::size_t length);
// Index k with |reversed Fibonacci word s_k| = length.
int fibonacci_index(std::size_t length);
Table1Row table1_row(std::size_t length, const SearchBudget& budget, Convention conv = Convention::left_closed);
std::vector<Table1Row> table1_experiment(const std::vector<std::size_t>& lengths, const SearchBudget& budget,
                                         Convention conv = Convention::left_closed);

struct Table2Row {
  std::size_t length = 0;
  double estimate = 0;
  std::string shown;
  std::optional<std::string> published;
};
std::vector<Table2Row> table2_experiment(const std::vector<std::size_t>& lengths);

// Limit set.
struct PreimageChain {
  // links[i] is the prefix of length 2P blocks of the i-th preimage, P = ceil(prefix_len / |S|).
  std::vector<Word> links;
  int verified = 0;
  bool complete = false;
  std::string error;
};
// window_blocks bounds the block prefix inspected when locating factorization starts.
PreimageChain preimage_chain(const Omega& om, const InfiniteWordSource& src, int depth, std::size_t prefix_len,
                             std::size_t window_blocks = 1 << 16);

struct PreimageDescriptor {
  std::size_t shift = 0;
  Word blocks;
  Word letters;  // first `key` letters of the preimage
  bool operator<(const PreimageDescriptor& o) const { return letters.str() < o.letters.str(); }
};

// Precomputed square roots of every shifted block window of Omega, keyed by root prefix.
class PreimageIndex {
 public:
  // m: letters of the target compared; p: letters of the preimage that tell descriptors apart.
  PreimageIndex(const Omega& om, std::size_t m, std::size_t p);
  std::size_t target_length() const { return m_; }
  std::size_t candidates() const { return candidates_; }
  std::vector<PreimageDescriptor> lookup(const Word& target) const;

 private:
  std::size_t m_;
  std::size_t p_;
  std::size_t candidates_ = 0;
  std::map<std::string, std::map<std::string, PreimageDescriptor>> index_;
};

std::vector<PreimageDescriptor> find_preimages(const Omega& om, const Word& target, const SearchBudget& budget);

// u = z S Gamma_i, v = z S Gamma_j with i != j, zS a suffix of some gamma_k, z empty or in Pi.
struct PairInspection {
  bool zs_gamma_form = false;
  // u = t Gamma_i, v = t Gamma_j with t a nonempty proper suffix of S. Such pairs have equal square roots
  // whenever sqrt(tS) = sqrt(tL), which the zS Gamma form does not cover.
  bool suffix_gamma_form = false;
  std::size_t difference = 0;
  Word z;
  std::string reason;
};
PairInspection inspect_preimage_pair(const Omega& om, const Word& u, const Word& v);

struct InjectivityReport {
  std::size_t targets = 0;
  std::size_t constructed_targets = 0;
  std::size_t max_found = 0;
  std::size_t with_two = 0;
  std::size_t two_in_form = 0;
  std::size_t two_in_suffix_form = 0;
  std::size_t above_two = 0;
  // Difference positions of pairs in neither form.
  std::vector<std::size_t> unexplained;
  // Constructed zS Gamma targets where both preimages were recovered.
  std::size_t constructed_recovered = 0;
};
// samples random targets T^q(Gamma1) plus one constructed target per suffix zS of gamma_k, k <= kmax.
InjectivityReport injectivity_experiment(const Omega& om, std::size_t samples, std::uint64_t seed, std::size_t m,
                                         std::size_t p, int kmax = 3);

struct LimitSetReport {
  std::size_t omega_s_samples = 0;
  std::size_t chains_complete = 0;
  std::size_t other_samples = 0;
  std::size_t reached = 0;
  int max_steps = 0;
  std::vector<std::string> failures;
};
// Depth-`depth` preimage chains for shifts of Gamma1/Gamma2 by whole blocks, and steps_to_fixed
// for words shifted by 0 < l < |S|.
LimitSetReport limit_set_experiment(const Omega& om, std::size_t samples, int depth, std::uint64_t seed,
                                    int cap = 64);

}  // namespace sqrtmap
