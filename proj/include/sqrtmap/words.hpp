#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqrtmap {

// Binary words use the letters '0' and '1'; block words use 'S' and 'L'.
enum class Alphabet { binary, blocks };

class alphabet_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Immutable finite word over one of the two alphabets. Indexing is 0-based.
class Word {
 public:
  Word() = default;
  // Alphabet is inferred from the letters; the empty word is binary.
  explicit Word(std::string_view letters);
  Word(std::string_view letters, Alphabet alphabet);

  static Word binary(std::string_view letters) { return Word(letters, Alphabet::binary); }
  static Word blocks(std::string_view letters) { return Word(letters, Alphabet::blocks); }

  Alphabet alphabet() const { return alphabet_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  char operator[](std::size_t i) const { return letters_[i]; }
  char at(std::size_t i) const { return letters_.at(i); }
  const std::string& str() const { return letters_; }
  std::string_view view() const { return letters_; }

  Word substr(std::size_t pos, std::size_t n = std::string::npos) const;
  Word prefix(std::size_t n) const { return substr(0, n); }
  Word suffix(std::size_t n) const;
  Word power(std::size_t e) const;
  Word reversed() const;
  bool starts_with(const Word& w) const;
  bool ends_with(const Word& w) const;

  Word operator+(const Word& other) const;
  Word& operator+=(const Word& other);
  bool operator==(const Word& other) const = default;

 private:
  Alphabet alphabet_ = Alphabet::binary;
  std::string letters_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

// Throws alphabet_error unless both words share an alphabet.
void require_same_alphabet(const Word& u, const Word& v);

Word cyclic_shift(const Word& w);
// C^j(w).
Word rotate(const Word& w, std::size_t j);
std::vector<Word> conjugates(const Word& w);
bool is_conjugate(const Word& u, const Word& v);
bool is_primitive(const Word& w);
// Strict lexicographic order with 0 < 1; a proper prefix is smaller.
bool lex_less(const Word& u, const Word& v);
Word swap_first_two(const Word& w);
Word drop_suffix(const Word& w, const Word& v);
std::size_t minimal_period(const Word& w);
// True iff w[i] = w[i+p] wherever both are defined.
bool has_period(std::string_view w, std::size_t p);

}  // namespace sqrtmap
