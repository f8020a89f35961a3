#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/word.hpp"

namespace twistlab {

// An endomorphism of the free group of the given rank, stored as the image
// of each generator.  Nothing here assumes invertibility; invertible maps
// travel as AutWitness pairs so that no inverse ever has to be solved for.
class FreeMap {
 public:
  FreeMap() : rank_(0) {}

  FreeMap(int rank, std::vector<Word> images) : rank_(rank), images_(std::move(images)) {
    if (rank < 0) throw std::invalid_argument("map rank must be nonnegative");
    if (images_.size() != static_cast<std::size_t>(rank))
      throw std::invalid_argument("map needs exactly one image per generator");
    for (const Word& w : images_)
      if (w.rank() != rank) throw std::invalid_argument("image rank mismatch");
  }

  static FreeMap identity(int rank) {
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(rank));
    for (int i = 1; i <= rank; ++i) images.push_back(Word::generator(rank, i));
    return FreeMap(rank, std::move(images));
  }

  int rank() const noexcept { return rank_; }
  const Word& image(int index) const {
    if (index < 1 || index > rank_) throw std::invalid_argument("generator index out of range");
    return images_[static_cast<std::size_t>(index - 1)];
  }
  const std::vector<Word>& images() const noexcept { return images_; }

  bool operator==(const FreeMap& o) const noexcept {
    return rank_ == o.rank_ && images_ == o.images_;
  }
  bool operator!=(const FreeMap& o) const noexcept { return !(*this == o); }
  bool operator<(const FreeMap& o) const noexcept {
    if (rank_ != o.rank_) return rank_ < o.rank_;
    return images_ < o.images_;
  }

  bool is_identity() const { return *this == identity(rank_); }

 private:
  int rank_;
  std::vector<Word> images_;
};

// Substitutes images letter by letter, reducing as it goes, so intermediate
// garbage never exceeds the final length plus one image.
// Substitutes images letter by letter.  The growth guard is checked against
// the freely reduced prefix after each substituted letter, so compositions
// whose intermediate results stay small are fine no matter how large the
// nominal operand-size product gets.
inline Word apply_map(const FreeMap& f, const Word& w) {
  if (f.rank() != w.rank()) throw std::invalid_argument("rank mismatch in apply_map");
  Word out = Word::identity(w.rank());
  for (std::int32_t l : w.letters()) {
    const Word& img = f.image(std::abs(l));
    if (l > 0) {
      for (std::int32_t m : img.letters()) out.push(m);
    } else {
      const auto& ls = img.letters();
      for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.push(-*it);
    }
    check_word_length(out.size());
  }
  return out;
}

// compose(f, g) applies g first: compose(f, g)(w) == f(g(w)).
inline FreeMap compose(const FreeMap& f, const FreeMap& g) {
  if (f.rank() != g.rank()) throw std::invalid_argument("rank mismatch in compose");
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(g.rank()));
  for (int i = 1; i <= g.rank(); ++i) images.push_back(apply_map(f, g.image(i)));
  return FreeMap(f.rank(), std::move(images));
}

inline bool equal_maps(const FreeMap& f, const FreeMap& g) { return f == g; }

// True iff f(g(x_i)) == x_i and g(f(x_i)) == x_i for every generator.
inline bool verify_inverse(const FreeMap& f, const FreeMap& g) {
  if (f.rank() != g.rank()) return false;
  const int rank = f.rank();
  for (int i = 1; i <= rank; ++i) {
    const Word gen = Word::generator(rank, i);
    if (apply_map(f, g.image(i)) != gen) return false;
    if (apply_map(g, f.image(i)) != gen) return false;
  }
  return true;
}

// An automorphism carried together with its inverse.  The inverse is always
// constructed alongside the map (conjugation, composition, inversion all
// transform both halves), never recovered from the forward images.
class AutWitness {
 public:
  AutWitness() = default;

  AutWitness(FreeMap forward, FreeMap backward)
      : forward_(std::move(forward)), backward_(std::move(backward)) {
    if (!verify_inverse(forward_, backward_))
      throw std::invalid_argument("witness rejected: maps are not mutually inverse");
  }

  static AutWitness identity(int rank) {
    return AutWitness(FreeMap::identity(rank), FreeMap::identity(rank));
  }

  int rank() const noexcept { return forward_.rank(); }
  const FreeMap& forward() const noexcept { return forward_; }
  const FreeMap& backward() const noexcept { return backward_; }

  AutWitness inverse() const { return AutWitness(backward_, forward_, unchecked_tag{}); }

  // compose(a, b) applies b first, mirroring compose on FreeMap.
  friend AutWitness compose(const AutWitness& a, const AutWitness& b) {
    return AutWitness(compose(a.forward_, b.forward_), compose(b.backward_, a.backward_),
                      unchecked_tag{});
  }

  friend AutWitness pow(const AutWitness& a, long long n) {
    AutWitness out = AutWitness::identity(a.rank());
    const AutWitness base = n < 0 ? a.inverse() : a;
    for (long long i = 0, m = n < 0 ? -n : n; i < m; ++i) out = compose(out, base);
    return out;
  }

  bool operator==(const AutWitness& o) const noexcept { return forward_ == o.forward_; }
  bool operator!=(const AutWitness& o) const noexcept { return !(*this == o); }

 private:
  struct unchecked_tag {};
  // Internal fast path for compositions whose halves are inverse by
  // construction; public construction always verifies.
  AutWitness(FreeMap forward, FreeMap backward, unchecked_tag)
      : forward_(std::move(forward)), backward_(std::move(backward)) {}

  FreeMap forward_;
  FreeMap backward_;
};

}  // namespace twistlab
