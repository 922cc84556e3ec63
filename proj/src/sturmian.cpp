#include "sqrtmap/sturmian.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sqrtmap {

BigRational parse_rational(std::string_view text) {
  BigRational x;
  if (text.empty() || x.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (x.get_den() == 0) throw std::invalid_argument("zero denominator");
  x.canonicalize();
  return x;
}

std::string to_string(const BigRational& x) { return x.get_str(); }

BigRational frac(const BigRational& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - BigRational(fl);
}

ContinuedFraction::ContinuedFraction(std::vector<long> quotients) : q_(std::move(quotients)) {
  if (q_.empty()) throw std::invalid_argument("empty continued fraction");
  for (std::size_t i = 1; i < q_.size(); ++i) {
    if (q_[i] < 1) throw std::invalid_argument("partial quotients must be positive");
  }
}

ContinuedFraction ContinuedFraction::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '[' && ch != ']') s.push_back(ch);
  }
  std::vector<long> q;
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw std::invalid_argument("malformed continued fraction");
    std::size_t used = 0;
    long v = std::stol(token, &used);
    if (used != token.size()) throw std::invalid_argument("malformed continued fraction");
    q.push_back(v);
    token.clear();
  };
  bool seen_semicolon = false;
  for (char ch : s) {
    if (ch == ';') {
      if (seen_semicolon || !q.empty()) throw std::invalid_argument("malformed continued fraction");
      seen_semicolon = true;
      flush();
    } else if (ch == ',') {
      if (!seen_semicolon) throw std::invalid_argument("malformed continued fraction");
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return ContinuedFraction(std::move(q));
}

ContinuedFraction ContinuedFraction::of(const BigRational& x) {
  std::vector<long> q;
  mpz_class num = x.get_num(), den = x.get_den();
  while (den != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    q.push_back(a.get_si());
    mpz_class r = num - a * den;
    num = den;
    den = r;
  }
  return ContinuedFraction(std::move(q));
}

ContinuedFraction ContinuedFraction::canonical() const {
  std::vector<long> q = q_;
  while (q.size() > 1 && q.back() == 1) {
    q.pop_back();
    q.back() += 1;
  }
  return ContinuedFraction(std::move(q));
}

ContinuedFraction ContinuedFraction::truncated(std::size_t k) const {
  if (k >= q_.size()) throw std::invalid_argument("truncation index out of range");
  return ContinuedFraction(std::vector<long>(q_.begin(), q_.begin() + static_cast<long>(k) + 1));
}

BigRational ContinuedFraction::value() const { return convergents(*this, q_.size() - 1).back(); }

std::string ContinuedFraction::str() const {
  std::ostringstream os;
  os << '[' << q_[0];
  for (std::size_t i = 1; i < q_.size(); ++i) os << (i == 1 ? ';' : ',') << q_[i];
  os << ']';
  return os.str();
}

namespace {

struct Recurrence {
  std::vector<mpz_class> p, q;
};

// p[i+2], q[i+2] hold p_i, q_i; p[0..1] are the seeds p_{-2}, p_{-1}.
Recurrence run_recurrence(const ContinuedFraction& cf, std::size_t k) {
  if (k >= cf.size()) throw std::invalid_argument("not enough partial quotients");
  Recurrence r;
  r.p = {0, 1};
  r.q = {1, 0};
  for (std::size_t i = 0; i <= k; ++i) {
    r.p.push_back(cf[i] * r.p[i + 1] + r.p[i]);
    r.q.push_back(cf[i] * r.q[i + 1] + r.q[i]);
  }
  return r;
}

}  // namespace

std::vector<BigRational> convergents(const ContinuedFraction& cf, std::size_t k) {
  Recurrence r = run_recurrence(cf, k);
  std::vector<BigRational> out;
  for (std::size_t i = 0; i <= k; ++i) {
    BigRational x(r.p[i + 2], r.q[i + 2]);
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

std::vector<BigRational> semiconvergents(const ContinuedFraction& cf, std::size_t k) {
  if (k < 2) throw std::invalid_argument("semiconvergents need k >= 2");
  Recurrence r = run_recurrence(cf, k);
  std::vector<BigRational> out;
  for (long l = 1; l < cf[k]; ++l) {
    BigRational x(l * r.p[k + 1] + r.p[k], l * r.q[k + 1] + r.q[k]);
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

Word standard_word(const std::vector<long>& d, int k) {
  if (k < -1) throw std::invalid_argument("standard words start at k = -1");
  if (k > static_cast<int>(d.size())) throw std::invalid_argument("not enough d_k values");
  std::string prev = "1", cur = "0";
  if (k == -1) return Word::binary(prev);
  for (int i = 1; i <= k; ++i) {
    if (d[i - 1] < 1) throw std::invalid_argument("d_k must be positive");
    std::string next;
    for (long e = 0; e < d[i - 1]; ++e) next += cur;
    next += prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Word::binary(cur);
}

Word reversed_standard_word(const std::vector<long>& d, int k) {
  return standard_word(d, k).reversed();
}

std::string to_string(Convention c) {
  return c == Convention::left_closed ? "left" : "right";
}

Convention parse_convention(std::string_view text) {
  if (text == "left" || text == "left_closed") return Convention::left_closed;
  if (text == "right" || text == "right_closed") return Convention::right_closed;
  throw std::invalid_argument("unknown endpoint convention '" + std::string(text) + "'");
}

RotationSystem::RotationSystem(BigRational slope, Convention convention)
    : slope_(std::move(slope)), convention_(convention) {
  slope_.canonicalize();
  if (slope_ <= 0 || slope_ >= 1) throw std::invalid_argument("slope must lie in (0,1)");
  if (ContinuedFraction::of(slope_).canonical().size() < 4) {
    throw std::invalid_argument("slope needs at least 3 partial quotients");
  }
}

char RotationSystem::letter(const BigRational& x) const {
  const BigRational b = boundary();
  if (convention_ == Convention::left_closed) return x < b ? '0' : '1';
  return (x > 0 && x <= b) ? '0' : '1';
}

Word rotation_coding(const RotationSystem& sys, const BigRational& rho, std::size_t n) {
  if (rho < 0 || rho >= 1) throw std::invalid_argument("intercept must lie in [0,1)");
  std::string s;
  s.reserve(n);
  BigRational x = rho;
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(sys.letter(x));
    x = sys.rotate(x);
  }
  return Word::binary(s);
}

BigRational FactorInterval::length() const {
  BigRational total = 0;
  for (const Arc& a : pieces) total += a.hi - a.lo;
  return total;
}

bool FactorInterval::contains(const BigRational& x) const {
  for (const Arc& a : pieces) {
    if (convention == Convention::left_closed) {
      if (a.lo <= x && x < a.hi) return true;
    } else {
      // (lo,hi] on the circle: the point 0 is the same as 1.
      BigRational y = (x == 0) ? BigRational(1) : x;
      if (a.lo < y && y <= a.hi) return true;
    }
  }
  return false;
}

std::vector<LevelInterval> level_intervals(const RotationSystem& sys, std::size_t n) {
  if (n >= sys.q()) throw std::invalid_argument("level must be below the period");
  // Letter i changes only where R^i(rho) meets 0 or 1-a, i.e. at rho = -j a mod 1, j <= n.
  std::vector<BigRational> points;
  for (std::size_t j = 0; j <= n; ++j) points.push_back(frac(-BigRational(static_cast<long>(j)) * sys.slope()));
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points.push_back(1);
  std::vector<LevelInterval> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    BigRational mid = (points[i] + points[i + 1]) / 2;
    out.push_back({{points[i], points[i + 1]}, rotation_coding(sys, mid, n)});
  }
  return out;
}

std::optional<FactorInterval> factor_interval(const RotationSystem& sys, const Word& w) {
  if (w.size() >= sys.q()) throw std::invalid_argument("factor must be shorter than the period");
  FactorInterval fi;
  fi.convention = sys.convention();
  for (const LevelInterval& li : level_intervals(sys, w.size())) {
    if (li.factor != w) continue;
    if (!fi.pieces.empty() && fi.pieces.back().hi == li.arc.lo) {
      fi.pieces.back().hi = li.arc.hi;
    } else {
      fi.pieces.push_back(li.arc);
    }
  }
  if (fi.pieces.empty()) return std::nullopt;
  if (fi.pieces.size() == 2) {
    if (fi.pieces[0].lo != 0 || fi.pieces[1].hi != 1) throw std::logic_error("factor interval is not an arc");
    // Store the piece ending at 1 first so the arc reads in circular order.
    std::swap(fi.pieces[0], fi.pieces[1]);
    fi.wraps = true;
  } else if (fi.pieces.size() > 2) {
    throw std::logic_error("factor interval is not an arc");
  }
  return fi;
}

BigRational psi(const RotationSystem& sys, const BigRational& rho) {
  if (rho < 0 || rho >= 1) throw std::invalid_argument("intercept must lie in [0,1)");
  if (rho == 0) {
    // 0 lies in I0 exactly under the left-closed convention; otherwise it is the point 1 of I1.
    if (sys.convention() == Convention::left_closed) return sys.boundary() / 2;
    return 1 - sys.slope() / 2;
  }
  return (rho + sys.boundary()) / 2;
}

bool verify_lex_interval_order(const RotationSystem& sys, std::size_t n) {
  const auto levels = level_intervals(sys, n);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (!lex_less(levels[i].factor, levels[i + 1].factor)) return false;
  }
  return true;
}

}  // namespace sqrtmap
