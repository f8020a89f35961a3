#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistlab/freemap.hpp"
#include "twistlab/word.hpp"

namespace twistlab {

// Model: a disc with k crosscaps in a row, one boundary circle.  pi_1 is free
// on x_1..x_k, where x_i passes once through crosscap i, and the boundary
// reads x_1^2 x_2^2 ... x_k^2.  Every generator is one-sided, so the
// orientation character of a loop is the parity of its word length.
//
// The curve through crosscaps i..j (based word x_i x_{i+1} ... x_j) is
// two-sided exactly when j - i is odd; those are the twistable basic curves.

inline int orientation_character(const Word& w) { return w.length_parity(); }

inline bool preserves_character(const FreeMap& f) {
  for (int i = 1; i <= f.rank(); ++i)
    if (f.image(i).length_parity() != 1) return false;
  return true;
}

struct BasicCurve {
  int lo = 0;
  int hi = 0;
  bool two_sided() const { return ((hi - lo) & 1) == 1; }
  bool operator==(const BasicCurve& o) const { return lo == o.lo && hi == o.hi; }
  bool operator<(const BasicCurve& o) const { return lo != o.lo ? lo < o.lo : hi < o.hi; }
};

enum class Linking {
  Disjointable,  // crosscap ranges share nothing: curves are disjoint, twists commute
  OnceLinked,    // ranges interleave over an odd block: curves meet once, twists braid
  Nested,        // one range contains the other: curves are disjoint, twists commute
  TwiceLinked,   // ranges interleave over an even block: curves meet twice, no relation
};

// Two basic curves can be isotoped so that the crossings all sit over the
// shared crosscap block.  Disjoint ranges give disjoint curves; a contained
// range can be pushed off entirely; ranges that properly interleave meet in
// one point when the overlap is odd (twists then satisfy the braid relation)
// and in two when it is even (neither the braid nor the commuting relation
// holds; [1,4] vs [3,6] is the smallest witness).
inline Linking linked(const BasicCurve& a, const BasicCurve& b) {
  const int lo = a.lo > b.lo ? a.lo : b.lo;
  const int hi = a.hi < b.hi ? a.hi : b.hi;
  const int shared = hi - lo + 1;
  if (shared <= 0) return Linking::Disjointable;
  const bool contained = (a.lo <= b.lo && b.hi <= a.hi) || (b.lo <= a.lo && a.hi <= b.hi);
  if (contained) return Linking::Nested;
  return (shared & 1) ? Linking::OnceLinked : Linking::TwiceLinked;
}

namespace detail {

// x_a x_{a+1} ... x_b as letters (empty when b < a).
inline void append_run(std::vector<std::int32_t>& out, int a, int b) {
  for (int m = a; m <= b; ++m) out.push_back(m);
}

// x_a^2 ... x_b^2.
inline void append_square_run(std::vector<std::int32_t>& out, int a, int b) {
  for (int m = a; m <= b; ++m) {
    out.push_back(m);
    out.push_back(m);
  }
}

// Dehn twist about the curve x_i...x_j read off the disc-with-crosscaps
// picture.  Each generator x_l with i <= l <= j crosses the curve once, at
// crosscap l; the twist splices in the full curve loop based at that
// crossing.  Transported to the basepoint the spliced loop is
//
//   L_l = (x_l ... x_j) (x_i^2 ... x_j^2)^-1 (x_i ... x_{l-1}),
//
// a conjugate of the curve word, and the splice direction alternates with l
// because consecutive passes through the crosscap row approach the curve's
// annulus from alternating sides.  So x_l -> L_l^(e_l) x_l with
// e_l = +1, -1, +1, ... along l = i..j for the right-handed twist, and the
// opposite exponents for its inverse.  Generators outside i..j are
// untouched.  Right-handedness here is pinned by the relation catalog: with
// these exponents the braid relations and every transposition identity in
// the suite hold verbatim.
inline FreeMap twist_map(int rank, int i, int j, bool right_handed) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int l = 1; l <= rank; ++l) {
    if (l < i || l > j) {
      images.push_back(Word::generator(rank, l));
      continue;
    }
    std::vector<std::int32_t> lam;
    append_run(lam, l, j);
    {
      std::vector<std::int32_t> sq;
      append_square_run(sq, i, j);
      for (auto it = sq.rbegin(); it != sq.rend(); ++it) lam.push_back(-*it);
    }
    append_run(lam, i, l - 1);
    Word lambda(rank, lam);
    const bool negate = (((l - i) % 2 == 1) == right_handed);
    Word insert = negate ? invert_word(lambda) : lambda;
    images.push_back(multiply(insert, Word::generator(rank, l)));
  }
  return FreeMap(rank, std::move(images));
}

// Transposition of crosscaps k-1 and k: slide one crosscap across its
// neighbour.  One handedness sends x_{k-1} -> x_k and x_k to the conjugate
// x_k^-2 x_{k-1} x_k^2; the other is its inverse.
inline FreeMap transposition_map(int rank, bool forward) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  const int a = rank - 1, b = rank;
  for (int l = 1; l <= rank; ++l) {
    if (l == a) {
      images.push_back(forward ? Word::generator(rank, b)
                               : Word(rank, {a, a, b, -a, -a}));
    } else if (l == b) {
      images.push_back(forward ? Word(rank, {-b, -b, a, b, b})
                               : Word::generator(rank, a));
    } else {
      images.push_back(Word::generator(rank, l));
    }
  }
  return FreeMap(rank, std::move(images));
}

}  // namespace detail

// Handedness conventions.  Fixed by requiring the identity catalog of the
// relation suite (braid relations plus the conjugation-transport identity
// R-e and the v^2 identities) to hold verbatim; see tests.
inline constexpr bool kTwistRightHanded = true;
inline constexpr bool kTranspositionForward = true;

struct TableEntry {
  std::string name;
  std::optional<BasicCurve> curve;  // empty for the transposition
  AutWitness map;
};

struct ValidationIssue {
  std::string check;
  std::string detail;
};

struct ValidationReport {
  int entries = 0;
  int pairs_checked = 0;
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

class SurfaceModel {
 public:
  explicit SurfaceModel(int crosscaps) : k_(crosscaps) {
    if (crosscaps < 1) throw std::invalid_argument("a model needs at least one crosscap");
    std::vector<std::int32_t> b;
    detail::append_square_run(b, 1, k_);
    boundary_ = Word(k_, std::move(b));
    for (int i = 1; i <= k_; ++i)
      for (int j = i + 1; j <= k_; j += 2) {
        AutWitness w(detail::twist_map(k_, i, j, kTwistRightHanded),
                     detail::twist_map(k_, i, j, !kTwistRightHanded));
        table_.emplace(twist_name(i, j),
                       TableEntry{twist_name(i, j), BasicCurve{i, j}, std::move(w)});
      }
    if (k_ >= 2) {
      AutWitness w(detail::transposition_map(k_, kTranspositionForward),
                   detail::transposition_map(k_, !kTranspositionForward));
      table_.emplace("U", TableEntry{"U", std::nullopt, std::move(w)});
    }
  }

  int crosscaps() const noexcept { return k_; }
  int rank() const noexcept { return k_; }
  const Word& boundary_word() const noexcept { return boundary_; }
  const std::map<std::string, TableEntry>& table() const noexcept { return table_; }

  static std::string twist_name(int i, int j) {
    std::ostringstream os;
    os << "T(" << i << ',' << j << ')';
    return os.str();
  }

  bool has_entry(const std::string& name) const { return table_.count(name) != 0; }

  const TableEntry& entry(const std::string& name) const {
    auto it = table_.find(name);
    if (it == table_.end()) throw std::invalid_argument("no elementary map named " + name);
    return it->second;
  }

  // Word of the basic curve through crosscaps i..j.
  Word curve_word(int i, int j) const {
    check_range(i, j);
    std::vector<std::int32_t> ls;
    detail::append_run(ls, i, j);
    return Word(k_, std::move(ls));
  }

  // The elementary Dehn twist about the two-sided curve x_i...x_j.
  const AutWitness& elementary_twist(int i, int j) const {
    check_range(i, j);
    if (((j - i) & 1) == 0)
      throw std::invalid_argument("curve through crosscaps " + std::to_string(i) + ".." +
                                  std::to_string(j) + " is one-sided; no twist about it");
    return entry(twist_name(i, j)).map;
  }

  // The transposition of the last two crosscaps.
  const AutWitness& crosscap_transposition() const {
    if (k_ < 2)
      throw std::invalid_argument("crosscap transposition needs at least two crosscaps");
    return entry("U").map;
  }

  ValidationReport validate_table() const;

 private:
  void check_range(int i, int j) const {
    if (i < 1 || j < i || j > k_) throw std::invalid_argument("curve crosscap range out of bounds");
  }

  int k_;
  Word boundary_;
  std::map<std::string, TableEntry> table_;
};

inline bool fixes_word(const FreeMap& f, const Word& w) { return apply_map(f, w) == w; }

// t s t == s t s, composition applying the right factor first.
inline bool braid_holds(const FreeMap& t, const FreeMap& s) {
  return compose(t, compose(s, t)) == compose(s, compose(t, s));
}

inline bool commute_holds(const FreeMap& t, const FreeMap& s) {
  return compose(t, s) == compose(s, t);
}

inline ValidationReport SurfaceModel::validate_table() const {
  ValidationReport report;
  for (const auto& [name, e] : table_) {
    ++report.entries;
    if (!fixes_word(e.map.forward(), boundary_))
      report.issues.push_back({"boundary", name + " moves the boundary word"});
    if (!preserves_character(e.map.forward()))
      report.issues.push_back({"character", name + " breaks the orientation character"});
    if (!verify_inverse(e.map.forward(), e.map.backward()))
      report.issues.push_back({"witness", name + " has a broken inverse witness"});
  }
  for (const auto& [na, ea] : table_) {
    if (!ea.curve) continue;
    for (const auto& [nb, eb] : table_) {
      if (!eb.curve || !(na < nb)) continue;
      ++report.pairs_checked;
      switch (linked(*ea.curve, *eb.curve)) {
        case Linking::OnceLinked:
          if (!braid_holds(ea.map.forward(), eb.map.forward()))
            report.issues.push_back({"braid", na + " / " + nb});
          break;
        case Linking::Disjointable:
        case Linking::Nested:
          if (!commute_holds(ea.map.forward(), eb.map.forward()))
            report.issues.push_back({"commute", na + " / " + nb});
          break;
        case Linking::TwiceLinked:
          break;  // curves meet twice; neither relation applies
      }
    }
  }
  if (k_ >= 2) {
    // The transposition inverts its underlying twist: u t u^-1 = t^-1 for the
    // twist about the curve through the last two crosscaps.
    const FreeMap& u = crosscap_transposition().forward();
    const AutWitness& t = elementary_twist(k_ - 1, k_);
    FreeMap lhs = compose(u, compose(t.forward(), crosscap_transposition().backward()));
    if (lhs != t.backward())
      report.issues.push_back({"transposition", "U T(k-1,k) U^-1 != T(k-1,k)^-1"});
  }
  return report;
}

}  // namespace twistlab
