#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "sqrtmap/dynamics.hpp"

namespace sqrtmap {

std::optional<int> table1_published_value(std::size_t length) {
  static const std::map<std::size_t, int> published = {
      {8, 3},   {13, 4},  {21, 4},  {34, 5},   {55, 6},   {89, 6},   {144, 7},  {233, 8},
      {377, 8}, {610, 9}, {987, 10}, {1597, 10}, {2584, 11}, {4181, 12}, {6765, 13}};
  auto it = published.find(length);
  if (it == published.end()) return std::nullopt;
  return it->second;
}

int fibonacci_index(std::size_t length) {
  std::size_t prev = 1, cur = 1;  // |s_{-1}|, |s_0|
  for (int k = 0; k < 90; ++k) {
    if (cur == length && k >= 1) return k;
    const std::size_t next = cur + prev;
    prev = cur;
    cur = next;
    if (cur > length) break;
  }
  throw std::invalid_argument(std::to_string(length) + " is not the length of a reversed Fibonacci word");
}

namespace {

// Exact search over T^l(X0 X1 ...), X_t in {S,L}, for the longest route to S^omega or L^omega.
// A state is a shift and the blocks fixed so far ('?' = free); a step that reads a free block
// branches on both values. Blocks that a step consumes are dropped, so states stay short.
class Table1Search {
 public:
  Table1Search(const Omega& om, int depth, std::vector<int> periodic_steps)
      : om_(om), n_(om.n()), depth_(depth), psteps_(std::move(periodic_steps)) {}

  struct Step {
    std::optional<std::size_t> need;
    bool periodic = false;
    std::size_t j = 0;
    std::size_t l2 = 0;
    char b0 = 'S';
    std::size_t odd = 0;
  };

  int value(std::size_t l, const std::string& cons) {
    const std::string key = std::to_string(l) + ":" + cons;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Step st = step(l, cons);
    int v;
    if (st.need) {
      if (*st.need >= static_cast<std::size_t>(depth_)) truncated_ = true;
      v = std::max(value(l, assign(cons, *st.need, 'S')), value(l, assign(cons, *st.need, 'L')));
    } else if (st.periodic) {
      v = 1 + psteps_[st.j];
    } else {
      v = 1 + value(st.l2, advance(cons, st));
    }
    memo_.emplace(key, v);
    return v;
  }

  // Replays the maximizing branches and returns the block values they fixed, in original indices.
  std::map<std::size_t, char> witness(std::size_t l) {
    std::map<std::size_t, char> fixed;
    std::string cons;
    // Current block t sits at original index a*t + b; derived block 0 is synthetic.
    std::int64_t a = 1, b = 0;
    for (;;) {
      const Step st = step(l, cons);
      if (st.need) {
        const int target = value(l, cons);
        const char v = value(l, assign(cons, *st.need, 'S')) == target ? 'S' : 'L';
        cons = assign(cons, *st.need, v);
        fixed[static_cast<std::size_t>(a * static_cast<std::int64_t>(*st.need) + b)] = v;
        continue;
      }
      if (st.periodic) break;
      cons = advance(cons, st);
      b = st.odd ? b - a : b;
      a *= 2;
      l = st.l2;
    }
    return fixed;
  }

  bool truncated() const { return truncated_; }
  std::size_t states() const { return memo_.size(); }

 private:
  static std::string assign(std::string cons, std::size_t t, char v) {
    if (cons.size() <= t) cons.resize(t + 1, '?');
    cons[t] = v;
    return cons;
  }

  std::string advance(const std::string& cons, const Step& st) const {
    std::string next(1, st.b0);
    for (std::size_t t = 1; t < static_cast<std::size_t>(depth_); ++t) {
      const std::size_t o = 2 * t - st.odd;
      next.push_back(o < cons.size() ? cons[o] : '?');
    }
    while (!next.empty() && next.back() == '?') next.pop_back();
    return next;
  }

  // Letters [l, l+len) of the product, or the first free block they touch.
  std::optional<std::size_t> letters(std::size_t l, const std::string& cons, std::size_t len, std::string& out) const {
    out.clear();
    for (std::size_t t = 0; out.size() < l + len; ++t) {
      if (t >= cons.size() || cons[t] == '?') return t;
      out += om_.block_word(cons[t]).str();
    }
    out = out.substr(l, len);
    return std::nullopt;
  }

  char block_ending_with(const Word& x) const {
    if (om_.S().ends_with(x)) return 'S';
    if (om_.L().ends_with(x)) return 'L';
    throw std::logic_error("square root prefix is not a suffix of S or L");
  }

  Step step(std::size_t l, const std::string& cons) const {
    Step st;
    std::string w;
    for (std::size_t odd : {1, 0}) {
      const std::size_t len = odd ? n_ - l : 2 * n_ - l;
      if (auto need = letters(l, cons, len, w)) {
        st.need = need;
        return st;
      }
      const Word p = Word::binary(w);
      if (in_Pi(om_.alphabet(), p)) {
        const Word x = sqrt_finite(om_.alphabet(), p);
        st.l2 = n_ - x.size();
        st.b0 = block_ending_with(x);
        st.odd = odd;
        return st;
      }
    }
    const std::size_t len = 2 * n_ + 2 * om_.alphabet().max_square_length() + 2;
    if (auto need = letters(l, cons, len, w)) {
      st.need = need;
      return st;
    }
    std::string root;
    std::size_t pos = 0;
    while (root.size() < n_) {
      auto i = om_.alphabet().match(std::string_view(w).substr(pos));
      if (!i) throw std::logic_error("product is not squareful at offset " + std::to_string(pos));
      root += om_.alphabet().root(*i).str();
      pos += om_.alphabet().square(*i).size();
    }
    auto j = om_.conjugate_index(Word::binary(root.substr(0, n_)));
    if (!j) throw std::logic_error("type D image does not begin with a conjugate of S");
    st.periodic = true;
    st.j = *j;
    return st;
  }

  const Omega& om_;
  std::size_t n_;
  int depth_;
  std::vector<int> psteps_;
  std::unordered_map<std::string, int> memo_;
  bool truncated_ = false;
};

}  // namespace

Table1Row table1_row(std::size_t length, const SearchBudget& budget, Convention conv) {
  OmegaParams params;
  params.k = fibonacci_index(length);
  const Omega om(params);
  if (om.n() != length) throw std::logic_error("reversed Fibonacci word has the wrong length");

  Table1Row row;
  row.length = length;
  row.published_n = table1_published_value(length).value_or(-1);
  row.convention = conv;

  // The periodic phase is counted by psi on intercepts; the letter-level count is the cross-check.
  const std::vector<int> letter_steps = periodic_steps(om);
  std::vector<int> psi_counts(om.n());
  for (std::size_t j = 0; j < om.n(); ++j) {
    psi_counts[j] = psi_steps(om, conv, periodic_intercept(om, j, conv));
    if (psi_counts[j] != letter_steps[j]) row.psi_agrees = false;
  }

  Table1Search search(om, std::max(budget.depth, 1), psi_counts);
  for (std::size_t l = 1; l < om.n(); ++l) {
    const int v = search.value(l, "");
    if (v > row.n) {
      row.n = v;
      row.witness_shift = l;
    }
  }
  row.truncated = search.truncated();
  row.states = search.states();

  const auto fixed = search.witness(row.witness_shift);
  const std::size_t span = fixed.empty() ? 1 : fixed.rbegin()->first + 1;
  std::string blocks;
  for (std::size_t t = 0; t < span; ++t) {
    auto it = fixed.find(t);
    blocks.push_back(it != fixed.end() ? it->second : gamma_star_block(om.c(), 1, t));
  }
  row.witness_blocks = Word::blocks(blocks);
  const int c = om.c();
  SLProduct prod = om.product(
      [blocks, c](std::size_t t) { return t < blocks.size() ? blocks[t] : gamma_star_block(c, 1, t); },
      row.witness_shift);
  row.witness_verified = steps_to_fixed(om, prod, std::max(budget.cap, row.n)) == row.n;
  return row;
}

std::vector<Table1Row> table1_experiment(const std::vector<std::size_t>& lengths, const SearchBudget& budget,
                                         Convention conv) {
  std::vector<Table1Row> rows;
  const Convention other = conv == Convention::left_closed ? Convention::right_closed : Convention::left_closed;
  for (std::size_t len : lengths) {
    Table1Row row = table1_row(len, budget, conv);
    if (row.published_n >= 0 && row.n != row.published_n) row.alternate_n = table1_row(len, budget, other).n;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sqrtmap
