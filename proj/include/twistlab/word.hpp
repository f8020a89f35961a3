#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistlab/config.hpp"

namespace twistlab {

// A freely reduced word in the free group of a fixed rank.  Letters are
// nonzero signed indices: +i encodes the generator x_i, -i its inverse,
// 1 <= i <= rank.  The empty vector is the identity.
//
// Invariant: letters are freely reduced (no adjacent letter pair l, -l) and
// every |letter| lies in 1..rank.  All constructors enforce this.
class Word {
 public:
  Word() : rank_(0) {}

  // Reduces on construction, so arbitrary letter sequences are accepted.
  Word(int rank, std::vector<std::int32_t> letters) : rank_(rank) {
    if (rank < 0) throw std::invalid_argument("word rank must be nonnegative");
    letters_.reserve(letters.size());
    for (std::int32_t l : letters) push_reduced(l);
  }

  static Word identity(int rank) { return Word(rank, {}); }

  static Word generator(int rank, int index, int sign = +1) {
    if (index < 1 || index > rank) throw std::invalid_argument("generator index out of range");
    if (sign != 1 && sign != -1) throw std::invalid_argument("generator sign must be +1 or -1");
    return Word(rank, {sign > 0 ? index : -index});
  }

  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }
  const std::vector<std::int32_t>& letters() const noexcept { return letters_; }

  bool operator==(const Word& o) const noexcept {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  bool operator!=(const Word& o) const noexcept { return !(*this == o); }
  bool operator<(const Word& o) const noexcept {
    if (rank_ != o.rank_) return rank_ < o.rank_;
    return letters_ < o.letters_;
  }

  // Number of occurrences of x_i counted with sign; the i-th coordinate of
  // the image in Z^rank.
  long long exponent_sum(int index) const {
    if (index < 1 || index > rank_) throw std::invalid_argument("exponent index out of range");
    long long s = 0;
    for (std::int32_t l : letters_) {
      if (l == index) ++s;
      if (l == -index) --s;
    }
    return s;
  }

  // Total length mod 2.  With every generator one-sided this is the
  // orientation character of the loop.
  int length_parity() const noexcept { return static_cast<int>(letters_.size() & 1u); }

  // The growth guard measures the reduced result, not the concatenation:
  // long factors whose product collapses are legitimate.
  friend Word multiply(const Word& a, const Word& b) {
    require_same_rank(a, b);
    Word out;
    out.rank_ = a.rank_;
    out.letters_ = a.letters_;
    out.letters_.reserve(a.size() + b.size());
    for (std::int32_t l : b.letters_) out.push_reduced(l);
    check_word_length(out.size());
    return out;
  }

  // Appends one letter, keeping the word freely reduced.
  void push(std::int32_t letter) { push_reduced(letter); }

  friend Word invert_word(const Word& a) {
    Word out;
    out.rank_ = a.rank_;
    out.letters_.reserve(a.size());
    for (auto it = a.letters_.rbegin(); it != a.letters_.rend(); ++it)
      out.letters_.push_back(-*it);
    return out;  // reversal of a reduced word is reduced
  }

  // by * w * by^-1.
  friend Word conjugate(const Word& w, const Word& by) {
    return multiply(multiply(by, w), invert_word(by));
  }

  friend Word pow(const Word& a, long long n) {
    Word out = Word::identity(a.rank());
    Word base = n < 0 ? invert_word(a) : a;
    for (long long i = 0, m = std::llabs(n); i < m; ++i) out = multiply(out, base);
    return out;
  }

  // "x1 x2^-1"; the identity prints as "1".
  std::string str() const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) os << ' ';
      std::int32_t l = letters_[i];
      os << 'x' << (l > 0 ? l : -l);
      if (l < 0) os << "^-1";
    }
    return os.str();
  }

  static Word parse(int rank, const std::string& text) {
    std::istringstream is(text);
    std::vector<std::int32_t> letters;
    std::string tok;
    while (is >> tok) {
      if (tok == "1" && letters.empty() && !(is >> tok)) break;  // lone "1" is identity
      if (tok.size() < 2 || tok[0] != 'x')
        throw std::invalid_argument("bad word token: '" + tok + "'");
      std::size_t pos = 1;
      while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
      if (pos == 1) throw std::invalid_argument("bad word token: '" + tok + "'");
      int index = std::stoi(tok.substr(1, pos - 1));
      int sign = +1;
      if (pos != tok.size()) {
        const std::string suffix = tok.substr(pos);
        if (suffix == "^-1")
          sign = -1;
        else
          throw std::invalid_argument("bad word token: '" + tok + "'");
      }
      if (index < 1 || index > rank)
        throw std::invalid_argument("word token index out of range: '" + tok + "'");
      letters.push_back(sign * index);
    }
    return Word(rank, std::move(letters));
  }

 private:
  static void require_same_rank(const Word& a, const Word& b) {
    if (a.rank_ != b.rank_) throw std::invalid_argument("rank mismatch between words");
  }

  void push_reduced(std::int32_t l) {
    if (l == 0 || std::abs(l) > rank_)
      throw std::invalid_argument("letter index out of range for rank");
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  int rank_;
  std::vector<std::int32_t> letters_;
};

// A word considered up to cyclic rotation: the conjugacy-class key of a free
// homotopy class of loops.  Stored cyclically reduced.
class CyclicWord {
 public:
  explicit CyclicWord(const Word& w) : rank_(w.rank()) {
    std::vector<std::int32_t> ls = w.letters();
    // peel matching first/last letters until cyclically reduced
    std::size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
      ++lo;
      --hi;
    }
    letters_.assign(ls.begin() + static_cast<std::ptrdiff_t>(lo),
                    ls.begin() + static_cast<std::ptrdiff_t>(hi));
  }

  int rank() const noexcept { return rank_; }
  const std::vector<std::int32_t>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }

  // Equality of oriented free homotopy classes: rotation only.
  friend bool same_oriented_class(const CyclicWord& a, const CyclicWord& b) {
    if (a.rank_ != b.rank_ || a.size() != b.size()) return false;
    if (a.letters_.empty()) return true;
    std::vector<std::int32_t> doubled = a.letters_;
    doubled.insert(doubled.end(), a.letters_.begin(), a.letters_.end());
    return std::search(doubled.begin(), doubled.end(), b.letters_.begin(), b.letters_.end()) !=
           doubled.end();
  }

  // Equality of unoriented classes: rotation or rotation of the inverse.
  // This is the right comparison for unoriented simple closed curves.
  friend bool same_unoriented_class(const CyclicWord& a, const CyclicWord& b) {
    if (same_oriented_class(a, b)) return true;
    std::vector<std::int32_t> inv;
    inv.reserve(b.letters_.size());
    for (auto it = b.letters_.rbegin(); it != b.letters_.rend(); ++it) inv.push_back(-*it);
    CyclicWord binv(Word(b.rank_, std::move(inv)));
    return same_oriented_class(a, binv);
  }

 private:
  int rank_;
  std::vector<std::int32_t> letters_;
};

}  // namespace twistlab
