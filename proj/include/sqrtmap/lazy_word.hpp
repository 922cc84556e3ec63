#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sqrtmap/squares.hpp"
#include "sqrtmap/words.hpp"

namespace sqrtmap {

// Where a lazily evaluated source stopped producing letters, and why.
struct SourceFault {
  std::size_t position = 0;
  std::string message;
};

class poisoned_source : public std::runtime_error {
 public:
  explicit poisoned_source(SourceFault f);
  const SourceFault& fault() const { return fault_; }

 private:
  SourceFault fault_;
};

namespace detail {

class SourceNode {
 public:
  virtual ~SourceNode() = default;
  // A view of at least n letters, or fewer if a fault stopped production.
  // The view is invalidated by the next call.
  std::string_view letters(std::size_t n) {
    if (n > requested_) requested_ = n;
    return produce(n);
  }
  std::size_t requested() const { return requested_; }
  virtual const std::optional<SourceFault>& fault() const { return fault_; }

 protected:
  virtual std::string_view produce(std::size_t n) = 0;
  mutable std::optional<SourceFault> fault_;

 private:
  std::size_t requested_ = 0;
};

}  // namespace detail

// T^shift of the concatenation of blocks, each block being S or L.
struct SLProduct {
  std::function<char(std::size_t)> blocks;  // 'S' or 'L'
  std::size_t shift = 0;
  Word s;
  Word l;

  const Word& block_word(char b) const { return b == 'S' ? s : l; }
  // Letters [shift, shift+n) of the unshifted product.
  Word letters(std::size_t n) const;
  // The first n blocks as a word over {S,L}.
  Word block_prefix(std::size_t n) const;
};

// Handle on a memoized prefix oracle. Copies share state; a source is single-consumer.
class InfiniteWordSource {
 public:
  InfiniteWordSource(std::shared_ptr<detail::SourceNode> node, Alphabet alphabet, std::string descriptor);

  Word prefix(std::size_t n) const;
  std::optional<Word> try_prefix(std::size_t n) const;
  char at(std::size_t i) const;
  std::string_view letters(std::size_t n) const { return node_->letters(n); }
  const std::optional<SourceFault>& fault() const { return node_->fault(); }
  // Largest prefix length requested so far.
  std::size_t requested() const { return node_->requested(); }
  Alphabet alphabet() const { return alphabet_; }
  const std::string& descriptor() const { return descriptor_; }
  const std::shared_ptr<const SLProduct>& product() const { return product_; }
  InfiniteWordSource with_product(SLProduct p) const;
  InfiniteWordSource with_descriptor(std::string d) const;

 private:
  std::shared_ptr<detail::SourceNode> node_;
  Alphabet alphabet_;
  std::string descriptor_;
  std::shared_ptr<const SLProduct> product_;
};

InfiniteWordSource periodic(const Word& period, std::string descriptor = "");
InfiniteWordSource from_oracle(std::function<char(std::size_t)> letter, Alphabet alphabet,
                               std::string descriptor);
InfiniteWordSource prepend(const Word& head, const InfiniteWordSource& tail);
InfiniteWordSource shift(const InfiniteWordSource& src, std::size_t j);
InfiniteWordSource expand(const SLProduct& prod, std::string descriptor = "");

// Lazy square root; to produce m letters it reads at most 2m + 2|S6| letters of src.
InfiniteWordSource sqrt_stream(const SquareAlphabet& alph, const InfiniteWordSource& src);

// Certified-window periodicity: prefix(window) is p-periodic and its first p letters
// form a conjugate of s.
bool detect_period(const InfiniteWordSource& src, std::size_t p, std::size_t window, const Word& s);

}  // namespace sqrtmap
