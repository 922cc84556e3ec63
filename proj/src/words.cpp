#include "sqrtmap/words.hpp"

#include <algorithm>

namespace sqrtmap {

namespace {

void validate(std::string_view letters, Alphabet alphabet) {
  const char a = alphabet == Alphabet::binary ? '0' : 'S';
  const char b = alphabet == Alphabet::binary ? '1' : 'L';
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] != a && letters[i] != b) {
      throw alphabet_error("invalid letter '" + std::string(1, letters[i]) + "' at offset " +
                           std::to_string(i));
    }
  }
}

}  // namespace

Word::Word(std::string_view letters) : letters_(letters) {
  alphabet_ = (!letters.empty() && (letters[0] == 'S' || letters[0] == 'L')) ? Alphabet::blocks
                                                                              : Alphabet::binary;
  validate(letters_, alphabet_);
}

Word::Word(std::string_view letters, Alphabet alphabet) : alphabet_(alphabet), letters_(letters) {
  validate(letters_, alphabet_);
}

Word Word::substr(std::size_t pos, std::size_t n) const {
  if (pos > letters_.size()) throw std::out_of_range("substr position past end");
  Word w;
  w.alphabet_ = alphabet_;
  w.letters_ = letters_.substr(pos, n);
  return w;
}

Word Word::suffix(std::size_t n) const {
  if (n > letters_.size()) throw std::out_of_range("suffix longer than word");
  return substr(letters_.size() - n);
}

Word Word::power(std::size_t e) const {
  Word w;
  w.alphabet_ = alphabet_;
  w.letters_.reserve(letters_.size() * e);
  for (std::size_t i = 0; i < e; ++i) w.letters_ += letters_;
  return w;
}

Word Word::reversed() const {
  Word w = *this;
  std::reverse(w.letters_.begin(), w.letters_.end());
  return w;
}

bool Word::starts_with(const Word& w) const {
  require_same_alphabet(*this, w);
  return letters_.starts_with(w.letters_);
}

bool Word::ends_with(const Word& w) const {
  require_same_alphabet(*this, w);
  return letters_.ends_with(w.letters_);
}

Word Word::operator+(const Word& other) const {
  Word w = *this;
  w += other;
  return w;
}

Word& Word::operator+=(const Word& other) {
  if (letters_.empty()) {
    alphabet_ = other.alphabet_;
  } else if (!other.letters_.empty()) {
    require_same_alphabet(*this, other);
  }
  letters_ += other.letters_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.str(); }

void require_same_alphabet(const Word& u, const Word& v) {
  // The empty word is compatible with both alphabets.
  if (u.empty() || v.empty()) return;
  if (u.alphabet() != v.alphabet()) throw alphabet_error("words over different alphabets");
}

Word cyclic_shift(const Word& w) { return rotate(w, 1); }

Word rotate(const Word& w, std::size_t j) {
  if (w.empty()) throw std::invalid_argument("cannot rotate the empty word");
  j %= w.size();
  return w.substr(j) + w.substr(0, j);
}

std::vector<Word> conjugates(const Word& w) {
  if (w.empty()) throw std::invalid_argument("the empty word has no conjugates");
  std::vector<Word> out;
  out.reserve(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) out.push_back(rotate(w, j));
  return out;
}

bool is_conjugate(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  if (u.size() != v.size()) return false;
  if (u.empty()) return true;
  return (u.str() + u.str()).find(v.str()) != std::string::npos;
}

bool is_primitive(const Word& w) {
  if (w.empty()) throw std::invalid_argument("primitivity of the empty word is undefined");
  const std::string ww = w.str() + w.str();
  return ww.find(w.str(), 1) == w.size();
}

bool lex_less(const Word& u, const Word& v) {
  if (u.alphabet() != Alphabet::binary || v.alphabet() != Alphabet::binary) {
    if (!u.empty() && !v.empty()) throw alphabet_error("lex_less is defined on binary words");
  }
  return u.str() < v.str();
}

Word swap_first_two(const Word& w) {
  if (w.size() < 2) throw std::invalid_argument("L requires a word of length at least 2");
  std::string s = w.str();
  std::swap(s[0], s[1]);
  return Word(s, w.alphabet());
}

Word drop_suffix(const Word& w, const Word& v) {
  if (!v.empty() && !w.ends_with(v)) throw std::invalid_argument("not a suffix");
  return w.prefix(w.size() - v.size());
}

bool has_period(std::string_view w, std::size_t p) {
  for (std::size_t i = 0; i + p < w.size(); ++i) {
    if (w[i] != w[i + p]) return false;
  }
  return true;
}

std::size_t minimal_period(const Word& w) {
  if (w.empty()) throw std::invalid_argument("period of the empty word is undefined");
  // Border array: the minimal period is |w| minus the longest proper border.
  const std::string& s = w.str();
  std::vector<std::size_t> border(s.size() + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    while (k > 0 && s[i] != s[k]) k = border[k];
    if (s[i] == s[k]) ++k;
    border[i + 1] = k;
  }
  return s.size() - border[s.size()];
}

}  // namespace sqrtmap
