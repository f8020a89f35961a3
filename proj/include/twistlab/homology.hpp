#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/freemap.hpp"
#include "twistlab/mapclass.hpp"
#include "twistlab/surface.hpp"
#include "twistlab/word.hpp"

namespace twistlab {

// Dense square integer matrix, row-major.  Everything here is exact: products
// accumulate in 128 bits and refuse to return anything that does not fit back
// into 64, and elimination is fraction-free.
class IntMatrix {
 public:
  IntMatrix() : n_(0) {}

  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw std::invalid_argument("matrix dimension must be nonnegative");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int dim() const noexcept { return n_; }

  long long& at(int r, int c) { return a_[index(r, c)]; }
  long long at(int r, int c) const { return a_[index(r, c)]; }

  bool operator==(const IntMatrix& o) const noexcept { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const IntMatrix& o) const noexcept { return !(*this == o); }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.n_ != y.n_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix out(x.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int j = 0; j < x.n_; ++j) {
        __int128 s = 0;
        for (int l = 0; l < x.n_; ++l)
          s += static_cast<__int128>(x.at(i, l)) * y.at(l, j);
        out.at(i, j) = narrow(s);
      }
    return out;
  }

  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    if (x.n_ != y.n_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix out(x.n_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] - y.a_[i];
    return out;
  }

  bool is_zero() const noexcept {
    for (long long v : a_)
      if (v != 0) return false;
    return true;
  }

  bool is_identity() const { return *this == identity(n_); }

  // Entrywise representative in [0, m).
  IntMatrix mod(long long m) const {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    IntMatrix out(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      long long r = a_[i] % m;
      out.a_[i] = r < 0 ? r + m : r;
    }
    return out;
  }

  bool is_identity_mod(long long m) const { return mod(m) == identity(n_).mod(m); }

  // Exact determinant by fraction-free elimination.
  long long determinant() const {
    if (n_ == 0) return 1;
    std::vector<std::vector<long long>> w = rows();
    long long prev = 1;
    int sign = 1;
    for (int c = 0; c < n_; ++c) {
      int pivot = -1;
      for (int r = c; r < n_; ++r)
        if (w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      if (pivot != c) {
        std::swap(w[static_cast<std::size_t>(pivot)], w[static_cast<std::size_t>(c)]);
        sign = -sign;
      }
      eliminate_below(w, c, c, prev);
      prev = w[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    }
    return sign * prev;
  }

  std::vector<std::vector<long long>> rows() const {
    std::vector<std::vector<long long>> out(static_cast<std::size_t>(n_));
    for (int r = 0; r < n_; ++r)
      out[static_cast<std::size_t>(r)] =
          std::vector<long long>(a_.begin() + index(r, 0), a_.begin() + index(r, 0) + n_);
    return out;
  }

  std::vector<long long> flat() const { return a_; }

  // Bareiss elimination step shared with the rank routine below: clears
  // column c under row r, dividing by the previous pivot (exact).
  static void eliminate_below(std::vector<std::vector<long long>>& w, int r, int c,
                              long long prev) {
    const std::size_t cols = w.empty() ? 0 : w.front().size();
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < w.size(); ++i) {
      for (std::size_t j = static_cast<std::size_t>(c) + 1; j < cols; ++j) {
        __int128 v = static_cast<__int128>(w[i][j]) * w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                     static_cast<__int128>(w[i][static_cast<std::size_t>(c)]) * w[static_cast<std::size_t>(r)][j];
        w[i][j] = narrow(v / prev);
      }
      w[i][static_cast<std::size_t>(c)] = 0;
    }
  }

  static long long narrow(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
      throw std::overflow_error("integer matrix entry exceeds 64 bits");
    return static_cast<long long>(v);
  }

 private:
  std::size_t index(int r, int c) const {
    if (r < 0 || r >= n_ || c < 0 || c >= n_) throw std::out_of_range("matrix index");
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(c);
  }

  int n_;
  std::vector<long long> a_;
};

// Rank over the rationals of a rectangular integer matrix, by fraction-free
// Gaussian elimination.
inline int integer_rank(std::vector<std::vector<long long>> w) {
  if (w.empty()) return 0;
  const std::size_t cols = w.front().size();
  for (const auto& row : w)
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
  int rank = 0;
  long long prev = 1;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(w.size()); ++c) {
    int pivot = -1;
    for (std::size_t r = static_cast<std::size_t>(rank); r < w.size(); ++r)
      if (w[r][c] != 0) {
        pivot = static_cast<int>(r);
        break;
      }
    if (pivot < 0) continue;
    std::swap(w[static_cast<std::size_t>(pivot)], w[static_cast<std::size_t>(rank)]);
    IntMatrix::eliminate_below(w, rank, static_cast<int>(c), prev);
    prev = w[static_cast<std::size_t>(rank)][c];
    ++rank;
  }
  return rank;
}

// Column j records the exponent sums of the image of x_j: the induced map on
// the abelianization, so composition of maps becomes matrix product.
inline IntMatrix abelianize(const FreeMap& f) {
  const int k = f.rank();
  IntMatrix m(k);
  for (int j = 1; j <= k; ++j)
    for (int i = 1; i <= k; ++i) m.at(i - 1, j - 1) = f.image(j).exponent_sum(i);
  return m;
}

// The orientation double cover: the kernel of the word-length-parity
// character is free of rank 2k-1 with Schreier transversal {1, x1}.  The
// basis order is fixed once and for all:
//   index 1..k-1:   y_m = x_m x1^-1   for m = 2..k
//   index k..2k-1:  z_m = x1 x_m      for m = 1..k
// Every even word rewrites uniquely into this basis by scanning letters and
// tracking the coset of the prefix.
class DoubleCoverBasis {
 public:
  explicit DoubleCoverBasis(int crosscaps) : k_(crosscaps) {
    if (crosscaps < 1) throw std::invalid_argument("cover needs at least one crosscap");
  }

  int base_rank() const noexcept { return k_; }
  int rank() const noexcept { return 2 * k_ - 1; }

  // The basis element as a word downstairs.
  Word basis_word(int index) const {
    if (index < 1 || index > rank()) throw std::out_of_range("cover basis index");
    if (index <= k_ - 1) {
      const int m = index + 1;  // y_m
      return Word(k_, {m, -1});
    }
    const int m = index - (k_ - 1);  // z_m
    return Word(k_, {1, m});
  }

  // Rewrites an even word downstairs into the cover basis.  The letter-by-
  // letter scan emits the Schreier generator consumed at each step; the
  // generator attached to (coset 1, x1) is trivial and emits nothing.
  Word rewrite(const Word& w) const {
    if (w.rank() != k_) throw std::invalid_argument("rank mismatch in cover rewrite");
    if (orientation_character(w) != 0)
      throw std::invalid_argument("only even words lie in the cover kernel");
    Word out = Word::identity(rank());
    int parity = 0;
    for (std::int32_t l : w.letters()) {
      const int m = l > 0 ? l : -l;
      if (l > 0) {
        // consumes the generator at (current coset, x_m)
        if (parity == 0) {
          if (m != 1) out.push(m - 1);  // y_m
        } else {
          out.push(k_ - 1 + m);  // z_m
        }
        parity ^= 1;
      } else {
        // consumes the inverse of the generator at (next coset, x_m)
        parity ^= 1;
        if (parity == 0) {
          if (m != 1) out.push(-(m - 1));
        } else {
          out.push(-(k_ - 1 + m));
        }
      }
      check_word_length(out.size());
    }
    return out;
  }

 private:
  int k_;
};

// The induced automorphism of the cover kernel, in the fixed Schreier basis.
inline FreeMap double_cover_lift(const FreeMap& f) {
  if (!preserves_character(f))
    throw std::invalid_argument("map does not preserve the orientation character; no lift");
  DoubleCoverBasis basis(f.rank());
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(basis.rank()));
  for (int i = 1; i <= basis.rank(); ++i)
    images.push_back(basis.rewrite(apply_map(f, basis.basis_word(i))));
  return FreeMap(basis.rank(), std::move(images));
}

// Action of a mapping class on the first homology of the double cover.
inline IntMatrix double_cover_h1(const MappingClass& mc) {
  return abelianize(double_cover_lift(mc.forward()));
}

// Membership in the level-m congruence subgroup on the cover: the class acts
// as the identity on H1 of the double cover with Z/m coefficients.
inline bool gamma_prime_member(const MappingClass& mc, long long m) {
  if (m < 2) throw std::invalid_argument("congruence level must be at least 2");
  return double_cover_h1(mc).is_identity_mod(m);
}

// Rank over the rationals of the span of {M_i - I}, the M_i acting on cover
// homology.  For commuting unipotent classes this bounds from below the rank
// of the abelian group they generate; commutativity is a precondition and is
// checked.
inline int transvection_rank_lower_bound(const std::vector<MappingClass>& classes) {
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      if (!commutes(classes[i], classes[j]))
        throw std::invalid_argument("rank bound needs pairwise commuting classes");
  std::vector<std::vector<long long>> rows;
  rows.reserve(classes.size());
  for (const MappingClass& mc : classes) {
    IntMatrix m = double_cover_h1(mc);
    rows.push_back((m - IntMatrix::identity(m.dim())).flat());
  }
  return integer_rank(std::move(rows));
}

}  // namespace twistlab
