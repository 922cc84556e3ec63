#include "sqrtmap/lazy_word.hpp"

#include <algorithm>

namespace sqrtmap {

poisoned_source::poisoned_source(SourceFault f)
    : std::runtime_error("poisoned source at position " + std::to_string(f.position) + ": " + f.message),
      fault_(std::move(f)) {}

Word SLProduct::letters(std::size_t n) const {
  std::string out;
  out.reserve(n + s.size());
  std::size_t t = 0;
  std::size_t skip = shift;
  while (out.size() < n) {
    const std::string& w = block_word(blocks(t++)).str();
    if (skip >= w.size()) {
      skip -= w.size();
      continue;
    }
    out.append(w, skip, std::string::npos);
    skip = 0;
  }
  out.resize(n);
  return Word::binary(out);
}

Word SLProduct::block_prefix(std::size_t n) const {
  std::string out;
  for (std::size_t t = 0; t < n; ++t) out.push_back(blocks(t));
  return Word::blocks(out);
}

namespace {

using detail::SourceNode;

class PeriodicNode : public SourceNode {
 public:
  explicit PeriodicNode(std::string period) : period_(std::move(period)) {}

 protected:
  std::string_view produce(std::size_t n) override {
    while (buf_.size() < n) buf_ += period_;
    return buf_;
  }

 private:
  std::string period_;
  std::string buf_;
};

class OracleNode : public SourceNode {
 public:
  explicit OracleNode(std::function<char(std::size_t)> f) : f_(std::move(f)) {}

 protected:
  std::string_view produce(std::size_t n) override {
    buf_.reserve(n);
    while (buf_.size() < n) buf_.push_back(f_(buf_.size()));
    return buf_;
  }

 private:
  std::function<char(std::size_t)> f_;
  std::string buf_;
};

class ExpandNode : public SourceNode {
 public:
  explicit ExpandNode(SLProduct p) : p_(std::move(p)) {}

 protected:
  std::string_view produce(std::size_t n) override {
    while (buf_.size() < n + p_.shift) buf_ += p_.block_word(p_.blocks(next_++)).str();
    return std::string_view(buf_).substr(p_.shift);
  }

 private:
  SLProduct p_;
  std::size_t next_ = 0;
  std::string buf_;
};

class PrependNode : public SourceNode {
 public:
  PrependNode(std::string head, InfiniteWordSource tail) : head_(std::move(head)), tail_(std::move(tail)) {}

  const std::optional<SourceFault>& fault() const override {
    if (!fault_ && tail_.fault()) {
      fault_ = *tail_.fault();
      fault_->position += head_.size();
    }
    return fault_;
  }

 protected:
  std::string_view produce(std::size_t n) override {
    if (buf_.size() < n) {
      if (buf_.empty()) buf_ = head_;
      std::string_view t = tail_.letters(n > head_.size() ? n - head_.size() : 0);
      buf_.append(t.substr(std::min(t.size(), buf_.size() - head_.size())));
    }
    return buf_;
  }

 private:
  std::string head_;
  InfiniteWordSource tail_;
  std::string buf_;
};

class ShiftNode : public SourceNode {
 public:
  ShiftNode(InfiniteWordSource base, std::size_t j) : base_(std::move(base)), j_(j) {}

  const std::optional<SourceFault>& fault() const override {
    if (!fault_ && base_.fault()) {
      fault_ = *base_.fault();
      fault_->position = fault_->position >= j_ ? fault_->position - j_ : 0;
    }
    return fault_;
  }

 protected:
  std::string_view produce(std::size_t n) override {
    std::string_view v = base_.letters(n + j_);
    return v.size() >= j_ ? v.substr(j_) : std::string_view();
  }

 private:
  InfiniteWordSource base_;
  std::size_t j_;
};

class SqrtNode : public SourceNode {
 public:
  SqrtNode(const SquareAlphabet& alph, InfiniteWordSource src) : alph_(alph), src_(std::move(src)) {}

 protected:
  std::string_view produce(std::size_t n) override {
    const std::size_t look = alph_.max_square_length();
    while (out_.size() < n && !fault_) {
      std::string_view in = src_.letters(pos_ + look);
      if (in.size() <= pos_) {
        poison(src_.fault() ? "input source poisoned: " + src_.fault()->message : "input exhausted");
        break;
      }
      auto i = alph_.match(in.substr(pos_));
      if (!i) {
        poison(in.size() < pos_ + look && src_.fault() ? "input source poisoned: " + src_.fault()->message
                                                       : "no minimal square starts here");
        break;
      }
      out_ += alph_.root(*i).str();
      pos_ += alph_.square(*i).size();
    }
    return out_;
  }

 private:
  void poison(std::string message) { fault_ = SourceFault{pos_, std::move(message)}; }

  SquareAlphabet alph_;
  InfiniteWordSource src_;
  std::size_t pos_ = 0;
  std::string out_;
};

}  // namespace

InfiniteWordSource::InfiniteWordSource(std::shared_ptr<detail::SourceNode> node, Alphabet alphabet,
                                       std::string descriptor)
    : node_(std::move(node)), alphabet_(alphabet), descriptor_(std::move(descriptor)) {}

std::optional<Word> InfiniteWordSource::try_prefix(std::size_t n) const {
  std::string_view v = node_->letters(n);
  if (v.size() < n) return std::nullopt;
  return Word(v.substr(0, n), alphabet_);
}

Word InfiniteWordSource::prefix(std::size_t n) const {
  auto w = try_prefix(n);
  if (!w) {
    SourceFault f = fault().value_or(SourceFault{n, "source ended"});
    throw poisoned_source(f);
  }
  return *w;
}

char InfiniteWordSource::at(std::size_t i) const { return prefix(i + 1)[i]; }

InfiniteWordSource InfiniteWordSource::with_product(SLProduct p) const {
  InfiniteWordSource copy = *this;
  copy.product_ = std::make_shared<const SLProduct>(std::move(p));
  return copy;
}

InfiniteWordSource InfiniteWordSource::with_descriptor(std::string d) const {
  InfiniteWordSource copy = *this;
  copy.descriptor_ = std::move(d);
  return copy;
}

InfiniteWordSource periodic(const Word& period, std::string descriptor) {
  if (period.empty()) throw std::invalid_argument("period must be nonempty");
  if (descriptor.empty()) descriptor = "(" + period.str() + ")^w";
  return InfiniteWordSource(std::make_shared<PeriodicNode>(period.str()), period.alphabet(),
                            std::move(descriptor));
}

InfiniteWordSource from_oracle(std::function<char(std::size_t)> letter, Alphabet alphabet,
                               std::string descriptor) {
  return InfiniteWordSource(std::make_shared<OracleNode>(std::move(letter)), alphabet, std::move(descriptor));
}

InfiniteWordSource prepend(const Word& head, const InfiniteWordSource& tail) {
  if (!head.empty() && head.alphabet() != tail.alphabet()) throw alphabet_error("alphabet mismatch");
  return InfiniteWordSource(std::make_shared<PrependNode>(head.str(), tail), tail.alphabet(),
                            head.str() + "." + tail.descriptor());
}

InfiniteWordSource shift(const InfiniteWordSource& src, std::size_t j) {
  if (j == 0) return src;
  InfiniteWordSource out(std::make_shared<ShiftNode>(src, j), src.alphabet(),
                         "T^" + std::to_string(j) + "(" + src.descriptor() + ")");
  if (const auto& p = src.product()) {
    // Keep the block description: drop whole blocks, keep the remainder as the shift.
    SLProduct q = *p;
    std::size_t total = q.shift + j;
    const std::size_t skip_blocks = total / q.s.size();
    q.shift = total % q.s.size();
    auto base = p->blocks;
    q.blocks = [base, skip_blocks](std::size_t t) { return base(t + skip_blocks); };
    out = out.with_product(std::move(q));
  }
  return out;
}

InfiniteWordSource expand(const SLProduct& prod, std::string descriptor) {
  if (prod.s.size() != prod.l.size() || prod.s.empty()) throw std::invalid_argument("S and L must have equal length");
  if (prod.shift >= prod.s.size()) throw std::invalid_argument("shift must be below |S|");
  if (descriptor.empty()) descriptor = "T^" + std::to_string(prod.shift) + "(product of S,L)";
  return InfiniteWordSource(std::make_shared<ExpandNode>(prod), Alphabet::binary, std::move(descriptor))
      .with_product(prod);
}

InfiniteWordSource sqrt_stream(const SquareAlphabet& alph, const InfiniteWordSource& src) {
  if (src.alphabet() != Alphabet::binary) throw alphabet_error("square roots act on binary words");
  return InfiniteWordSource(std::make_shared<SqrtNode>(alph, src), Alphabet::binary,
                            "sqrt(" + src.descriptor() + ")");
}

bool detect_period(const InfiniteWordSource& src, std::size_t p, std::size_t window, const Word& s) {
  if (p == 0 || window < 3 * p) throw std::invalid_argument("window must be at least 3p");
  auto w = src.try_prefix(window);
  if (!w) return false;
  if (!has_period(w->view(), p)) return false;
  return is_conjugate(w->prefix(p), s);
}

}  // namespace sqrtmap
