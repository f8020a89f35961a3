#pragma once

// Relation fixtures: a versioned catalog of exact identities between mapping
// classes, a verifier with overflow-aware status reporting, a deterministic
// suite runner, and a searcher for nonorientable twist triangles.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "twistlab/config.hpp"
#include "twistlab/expr.hpp"
#include "twistlab/homology.hpp"
#include "twistlab/mapclass.hpp"
#include "twistlab/surface.hpp"
#include "twistlab/word.hpp"

namespace twistlab {

inline constexpr int kCatalogVersion = 1;

// How a fixture's two sides are compared.
//   Exact:    equality of the induced free-group automorphisms.
//   Cover:    equality of the integral double-cover homology matrices.
//   CoverMod: equality of those matrices reduced mod `modulus`.
enum class FixtureKind { Exact, Cover, CoverMod };

enum class FixtureStatus { Pass, Fail, Overflow };

inline const char* to_string(FixtureKind k) {
  switch (k) {
    case FixtureKind::Exact: return "exact";
    case FixtureKind::Cover: return "cover";
    case FixtureKind::CoverMod: return "cover-mod";
  }
  return "?";
}

inline const char* to_string(FixtureStatus s) {
  switch (s) {
    case FixtureStatus::Pass: return "pass";
    case FixtureStatus::Fail: return "fail";
    case FixtureStatus::Overflow: return "overflow";
  }
  return "?";
}

inline std::optional<FixtureKind> fixture_kind_from_string(const std::string& s) {
  if (s == "exact") return FixtureKind::Exact;
  if (s == "cover") return FixtureKind::Cover;
  if (s == "cover-mod") return FixtureKind::CoverMod;
  return std::nullopt;
}

struct RelationFixture {
  std::string id;
  int model = 0;           // crosscap count of the surface both sides live on
  std::string lhs;         // expression; empty means the identity class
  std::string rhs;
  std::string provenance;  // self-contained statement of why this holds
  FixtureKind kind = FixtureKind::Exact;
  long long modulus = 0;   // CoverMod only, >= 2

  friend bool operator==(const RelationFixture&, const RelationFixture&) = default;
};

struct FixtureResult {
  std::string id;
  FixtureStatus status = FixtureStatus::Fail;
  std::string detail;  // first differing image or entry, or the overflow note
  double millis = 0.0;
};

// Results are sorted by fixture id, so a report is independent of execution
// order and of the number of worker threads.
struct SuiteReport {
  std::vector<FixtureResult> results;
  int passed = 0;
  int failed = 0;
  int overflowed = 0;
  bool all_passed() const { return failed == 0 && overflowed == 0; }
};

namespace reldetail {

inline std::string clip(const std::string& s) {
  constexpr std::string::size_type kMax = 160;
  if (s.size() <= kMax) return s;
  return s.substr(0, kMax) + "...";
}

}  // namespace reldetail

// Verifies one fixture.  Malformed fixtures (bad expressions, bad modulus,
// bad model size) throw; exceeding the word-length guard while evaluating
// is an ordinary outcome and is reported as FixtureStatus::Overflow.
inline FixtureResult verify_relation(const RelationFixture& f) {
  const auto start = std::chrono::steady_clock::now();
  FixtureResult out;
  out.id = f.id;
  out.status = FixtureStatus::Pass;
  if (f.kind == FixtureKind::CoverMod && f.modulus < 2)
    throw std::invalid_argument("fixture " + f.id + ": cover-mod comparison needs modulus >= 2");
  const SurfaceModel model(f.model);
  const MappingClass lhs = Expr::parse(f.lhs).realize(model);
  const MappingClass rhs = Expr::parse(f.rhs).realize(model);
  try {
    if (f.kind == FixtureKind::Exact) {
      const FreeMap& a = lhs.forward();
      const FreeMap& b = rhs.forward();
      if (!(a == b)) {
        out.status = FixtureStatus::Fail;
        for (int g = 1; g <= a.rank(); ++g) {
          if (!(a.image(g) == b.image(g))) {
            out.detail = "x" + std::to_string(g) + ": " + reldetail::clip(a.image(g).str()) +
                         " != " + reldetail::clip(b.image(g).str());
            break;
          }
        }
      }
    } else {
      IntMatrix a = double_cover_h1(lhs);
      IntMatrix b = double_cover_h1(rhs);
      if (f.kind == FixtureKind::CoverMod) {
        a = a.mod(f.modulus);
        b = b.mod(f.modulus);
      }
      if (!(a == b)) {
        out.status = FixtureStatus::Fail;
        for (int r = 0; r < a.dim() && out.detail.empty(); ++r)
          for (int c = 0; c < a.dim(); ++c)
            if (a.at(r, c) != b.at(r, c)) {
              out.detail = "cover(" + std::to_string(r) + "," + std::to_string(c) + "): " +
                           std::to_string(a.at(r, c)) + " != " + std::to_string(b.at(r, c));
              break;
            }
      }
    }
  } catch (const word_growth_overflow& e) {
    out.status = FixtureStatus::Overflow;
    out.detail = e.what();
  }
  out.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// Runs every fixture whose id starts with `filter`.  With threads > 1 the
// fixtures are verified concurrently; each verification builds its own model,
// so workers share nothing.
inline SuiteReport run_suite(const std::vector<RelationFixture>& catalog,
                             const std::string& filter = std::string(), unsigned threads = 1) {
  std::vector<const RelationFixture*> picked;
  for (const auto& f : catalog)
    if (f.id.rfind(filter, 0) == 0) picked.push_back(&f);

  std::vector<FixtureResult> results(picked.size());
  if (threads <= 1 || picked.size() <= 1) {
    for (std::size_t i = 0; i < picked.size(); ++i) results[i] = verify_relation(*picked[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= picked.size()) return;
        try {
          results[i] = verify_relation(*picked[i]);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const unsigned n = static_cast<unsigned>(
        std::min<std::size_t>(threads, picked.size()));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  std::sort(results.begin(), results.end(),
            [](const FixtureResult& a, const FixtureResult& b) { return a.id < b.id; });
  SuiteReport report;
  report.results = std::move(results);
  for (const auto& r : report.results) {
    if (r.status == FixtureStatus::Pass) ++report.passed;
    else if (r.status == FixtureStatus::Fail) ++report.failed;
    else ++report.overflowed;
  }
  return report;
}

// Appends one elementary factor to the left side.  Every catalog fixture has
// at least two crosscaps, and no comparison kind tolerates the extra twist:
// an exact equality gains a non-identity factor, and the double-cover matrix
// of T(1,2) differs from the identity both integrally and mod every m >= 2.
// (Flipping the sign of an existing factor would NOT be a sound universal
// mutation: u t u^-1 = t^-1 still holds with u replaced by u^-1.)
inline RelationFixture corrupted(const RelationFixture& f) {
  RelationFixture c = f;
  c.id += "~mutant";
  c.lhs = f.lhs.empty() ? std::string("T(1,2)") : f.lhs + " * T(1,2)";
  return c;
}

// Checks that every fixture passes as written and fails once corrupted.
// Returns the ids that violate either expectation (empty = sweep clean).
inline std::vector<std::string> mutation_sweep(const std::vector<RelationFixture>& catalog) {
  std::vector<std::string> offenders;
  for (const auto& f : catalog) {
    if (verify_relation(f).status != FixtureStatus::Pass)
      offenders.push_back(f.id + ": original does not pass");
    else if (verify_relation(corrupted(f)).status != FixtureStatus::Fail)
      offenders.push_back(f.id + ": mutant does not fail");
  }
  return offenders;
}

// Maximal families of pairwise disjoint two-sided curves, one per model:
// T(1,2), T(3,4), ... as far as the crosscap count allows.
struct RankFamily {
  int model = 0;
  std::vector<std::string> twists;
};

struct RankRecord {
  int model = 0;
  std::vector<std::string> twists;
  int bound = 0;
};

inline std::vector<RankFamily> rank_family_specs() {
  std::vector<RankFamily> out;
  for (int k = 3; k <= 6; ++k) {
    RankFamily fam;
    fam.model = k;
    for (int i = 1; i + 1 <= k; i += 2)
      fam.twists.push_back(SurfaceModel::twist_name(i, i + 1));
    out.push_back(std::move(fam));
  }
  return out;
}

// Rank lower bounds for the abelian subgroups generated by each family, from
// the span of the (cover matrix - identity) images.
inline std::vector<RankRecord> rank_families() {
  std::vector<RankRecord> out;
  for (const auto& fam : rank_family_specs()) {
    const SurfaceModel model(fam.model);
    std::vector<MappingClass> classes;
    classes.reserve(fam.twists.size());
    for (const auto& name : fam.twists) classes.push_back(MappingClass::named(model, name));
    out.push_back({fam.model, fam.twists, transvection_rank_lower_bound(classes)});
  }
  return out;
}

// The shipped catalog.  Deterministic: programmatic families are generated in
// table order, then everything is sorted by id.  data/fixtures.json is the
// serialized form of exactly this list.
inline std::vector<RelationFixture> builtin_catalog() {
  std::vector<RelationFixture> cat;
  auto add = [&cat](std::string id, int k, std::string lhs, std::string rhs, std::string why,
                    FixtureKind kind = FixtureKind::Exact, long long modulus = 0) {
    cat.push_back({std::move(id), k, std::move(lhs), std::move(rhs), std::move(why), kind, modulus});
  };

  // Braid and commutation relations for every two-sided pair, k = 3..6.
  // TwiceLinked pairs satisfy neither relation and are omitted.
  for (int k = 3; k <= 6; ++k) {
    const SurfaceModel m(k);
    std::vector<std::pair<std::string, BasicCurve>> curves;
    for (const auto& [name, entry] : m.table())
      if (entry.curve) curves.emplace_back(name, *entry.curve);
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = i + 1; j < curves.size(); ++j) {
        const std::string& a = curves[i].first;
        const std::string& b = curves[j].first;
        const std::string tag = "k" + std::to_string(k) + "-" + a + "x" + b;
        switch (linked(curves[i].second, curves[j].second)) {
          case Linking::OnceLinked:
            add("R-braid-" + tag, k, a + " * " + b + " * " + a, b + " * " + a + " * " + b,
                "the two curves cross exactly once, so their twists satisfy the braid relation");
            break;
          case Linking::Disjointable:
            add("R-commute-" + tag, k, a + " * " + b, b + " * " + a,
                "the curves have disjoint crosscap ranges, hence disjoint representatives, "
                "so their twists commute");
            break;
          case Linking::Nested:
            add("R-commute-" + tag, k, a + " * " + b, b + " * " + a,
                "one curve's crosscap range contains the other's and the circles are "
                "disjoint, so their twists commute");
            break;
          case Linking::TwiceLinked:
            break;
        }
      }
  }

  // Presentation relations on three crosscaps.  u1 is the conjugate of the
  // transposition U by the inverse chain product T(1,2) T(2,3).
  const std::string u1 = "T(2,3)^-1 * T(1,2)^-1 * U^-1 * T(1,2) * T(2,3)";
  const std::string U1 = "(" + u1 + ")";
  add("R-pres3-1", 3, "T(2,3) * T(1,2) * T(2,3)", "T(1,2) * T(2,3) * T(1,2)",
      "braid relation for the once-crossing curves with ranges [1,2] and [2,3]");
  add("R-pres3-2", 3, "U * " + U1 + " * U", U1 + " * U * " + U1,
      "the transposition U and its chain conjugate u1 satisfy the braid relation");
  add("R-pres3-3", 3, "U * " + U1 + " * T(2,3)", "T(1,2) * U * " + U1,
      "the product U u1 carries the twist with range [2,3] to the twist with range [1,2]");
  add("R-pres3-4", 3, "T(2,3) * " + U1 + " * U", U1 + " * U * T(1,2)",
      "the product u1 U carries the twist with range [1,2] to the twist with range [2,3], "
      "written with the twist on the outside of each product");
  add("R-pres3-5", 3, "U * T(2,3) * U^-1", "T(2,3)^-1",
      "conjugating the twist with range [2,3] by the transposition of crosscaps 2,3 "
      "reverses the twist direction");
  add("R-pres3-6", 3, "U * T(1,2) * T(2,3) * " + U1, "T(1,2) * T(2,3)",
      "the chain product T(1,2) T(2,3) intertwines the transposition U and its chain "
      "conjugate u1");
  add("R-conj-inv-1", 3, U1 + " * T(1,2) * " + U1 + "^-1", "T(1,2)^-1",
      "conjugating the twist with range [1,2] by the chain conjugate u1 of the "
      "transposition reverses the twist direction");

  // The twist about the [1,2] curve pushed across the third crosscap: two
  // factorizations and the conjugated-twist form are one element.
  const std::string edef = "T(2,3) * U^-1 * T(1,2) * U * T(2,3)^-1";
  add("R-etwist-def", 3, edef, "T(2,3) * T(1,2) * T(2,3) * " + U1 + " * U",
      "two factorizations of the twist about the [1,2] curve pushed by T(2,3) U^-1");
  add("R-etwist-push", 3, edef, "CONJ(T(1,2), T(2,3) * U^-1)",
      "the pushed twist written directly as a conjugated elementary twist");

  // v = e u1 on three crosscaps: conjugation by v reverses both elementary
  // twists, and v^2 = (u1 U u1)^2 is conjugation by the inverse boundary word.
  const std::string V = "(" + edef + " * " + u1 + ")";
  add("R-vsq3-inv-1", 3, V + " * T(1,2) * " + V + "^-1", "T(1,2)^-1",
      "conjugation by v = e u1 reverses the twist with range [1,2]");
  add("R-vsq3-inv-2", 3, V + " * T(2,3) * " + V + "^-1", "T(2,3)^-1",
      "conjugation by v = e u1 reverses the twist with range [2,3]");
  add("R-vsq3-square", 3, V + "^2", "(" + U1 + " * U * " + U1 + ")^2",
      "v^2 equals the square of u1 U u1; both sides equal conjugation by the inverse "
      "boundary word of the three-crosscap model");

  // Fourth power of the 3-chain product: commutes with the boundary twist of
  // the chain neighborhood, with any twist disjoint from that neighborhood,
  // and splits as the product of the twists about the two boundary circles
  // (one elementary, one pushed) once a fifth crosscap is available.
  const std::string chain3 = "(T(1,2) * T(2,3) * T(3,4))^4";
  const std::string split3 = "T(1,4) * CONJ(T(4,5), T(2,5) * T(1,2) * T(2,3) * T(3,4))";
  for (int k = 4; k <= 6; ++k)
    add("R-chain3-k" + std::to_string(k) + "-commute-T(1,4)", k, chain3 + " * T(1,4)",
        "T(1,4) * " + chain3,
        "the fourth power of the 3-chain product is supported in a neighborhood of the "
        "first four crosscaps with the [1,4] curve in its boundary, so the twists commute");
  add("R-chain3-k6-commute-T(5,6)", 6, chain3 + " * T(5,6)", "T(5,6) * " + chain3,
      "the [5,6] curve is disjoint from the support of the 3-chain product");
  for (int k = 5; k <= 6; ++k)
    add("R-chain3-k" + std::to_string(k) + "-split", k, chain3, split3,
        "the fourth power of the 3-chain product equals the product of the twists about "
        "the two boundary circles of the chain neighborhood, one elementary and one pushed");

  // Five-chain with a leaf attached to the [1,4] node, on six crosscaps.
  // With the elementary leaf T(5,6) the combination collapses to one twist.
  const std::string leaf = "CONJ(T(4,5), T(4,5) * T(1,4) * U^-1 * T(1,6)^-1 * U^-1)";
  add("R-chain6-single", 6,
      "(T(5,6) * T(1,4) * T(4,5) * T(3,4) * T(2,3) * T(1,2))^5 * "
      "(T(5,6) * T(4,5) * T(3,4) * T(2,3) * T(1,2))^-6",
      "T(1,6)",
      "fifth power of the six-twist configuration product times the inverse sixth power "
      "of the five-chain product collapses to the single twist with range [1,6]");
  // With the pushed leaf the same combination is instead central for the
  // configuration and acts trivially on double-cover homology.
  const std::string w3 = "(" + leaf + " * T(1,4) * T(4,5) * T(3,4) * T(2,3) * T(1,2))^5 * (" +
                         leaf + " * T(4,5) * T(3,4) * T(2,3) * T(1,2))^-6";
  const std::string W3 = "(" + w3 + ")";
  const std::string config[] = {"T(1,2)", "T(2,3)", "T(3,4)", "T(4,5)", "T(1,4)"};
  for (const std::string& f : config)
    add("R-chain6-push-central-" + f, 6, W3 + " * " + f, f + " * " + W3,
        "with the pushed leaf in place of T(5,6), the chain combination commutes with "
        "each twist of the configuration");
  add("R-chain6-push-central-leaf", 6, W3 + " * " + leaf, leaf + " * " + W3,
      "with the pushed leaf in place of T(5,6), the chain combination commutes with the "
      "pushed leaf twist itself");
  add("R-chain6-push-cover", 6, w3, "",
      "with the pushed leaf in place of T(5,6), the chain combination acts trivially on "
      "the homology of the orientable double cover",
      FixtureKind::Cover);

  // Square of v = T(1,6) U on six crosscaps: the product of the twists about
  // the two boundary circles of the 3-chain neighborhood.
  add("R-vsq6-split", 6, "(T(1,6) * U)^2", "T(1,4) * " + leaf + "^-1",
      "the square of v = T(1,6) U equals the [1,4] twist times the reverse twist about "
      "the pushed boundary circle of the 3-chain neighborhood");

  // Presentation relations on six crosscaps, with v = T(1,6) U.
  const std::string v6 = "(T(1,6) * U)";
  add("R-pres6-1", 6, "T(5,6) * T(1,6)", "T(1,6) * T(5,6)",
      "the [5,6] range is contained in [1,6]; the circles are disjoint and the twists "
      "commute");
  add("R-pres6-2", 6, v6 + " * T(5,6)", "T(5,6)^-1 * " + v6,
      "conjugation by v = T(1,6) U reverses the twist with range [5,6]");
  add("R-pres6-3", 6, v6 + "^2 * T(1,6)", "T(1,6) * " + v6 + "^2",
      "v^2 commutes with the twist with range [1,6]");
  add("R-pres6-4", 6, "T(1,4) * " + v6, v6 + " * T(1,4)",
      "v = T(1,6) U commutes with the twist with range [1,4]");
  add("R-pres6-5", 6, "T(1,4) * T(5,6)", "T(5,6) * T(1,4)",
      "the ranges [1,4] and [5,6] are disjoint; the twists commute");
  add("R-pres6-6", 6, "T(1,4) * T(1,6)", "T(1,6) * T(1,4)",
      "the [1,4] range is contained in [1,6]; the circles are disjoint and the twists "
      "commute");

  // Nonorientable triangle witness on four crosscaps: the third curve is the
  // [2,3] curve pushed by the transposition U.  Two pairs braid plainly; the
  // last pair braids only after reversing the third twist.
  const std::string c4 = "CONJ(T(2,3), U)";
  add("R-triangle-ab", 4, "T(1,2) * T(2,3) * T(1,2)", "T(2,3) * T(1,2) * T(2,3)",
      "the base pair of the triangle crosses once and braids");
  add("R-triangle-ac", 4, "T(1,2) * " + c4 + " * T(1,2)", c4 + " * T(1,2) * " + c4,
      "the first curve crosses the pushed third curve once and the twists braid");
  add("R-triangle-bc", 4, c4 + "^-1 * T(2,3) * " + c4 + "^-1",
      "T(2,3) * " + c4 + "^-1 * T(2,3)",
      "the second curve braids with the REVERSE twist about the pushed third curve; no "
      "choice of curve orientations makes all three pairs braid plainly, which is what "
      "makes the triangle nonorientable");

  // Twist powers act trivially on double-cover homology mod m: every cover
  // matrix M of a twist satisfies (M - I)^2 = 0, so M^m = I + m(M - I).
  for (int k = 2; k <= 6; ++k) {
    const SurfaceModel m(k);
    for (const auto& [name, entry] : m.table()) {
      if (!entry.curve) continue;
      for (long long mod : {2LL, 3LL, 5LL})
        add("R-gamma-k" + std::to_string(k) + "-" + name + "-m" + std::to_string(mod), k,
            name + "^" + std::to_string(mod), "",
            "the cover matrix M of a twist is unipotent with (M - I)^2 = 0, so its m-th "
            "power is I + m(M - I), which is the identity mod m",
            FixtureKind::CoverMod, mod);
    }
  }

  // Pairwise commutation inside each disjoint-family used for rank records.
  for (const auto& fam : rank_family_specs())
    for (std::size_t i = 0; i < fam.twists.size(); ++i)
      for (std::size_t j = i + 1; j < fam.twists.size(); ++j)
        add("R-rank-k" + std::to_string(fam.model) + "-commute-" + fam.twists[i] + "x" +
                fam.twists[j],
            fam.model, fam.twists[i] + " * " + fam.twists[j],
            fam.twists[j] + " * " + fam.twists[i],
            "members of a disjoint family of two-sided curves have commuting twists");

  std::sort(cat.begin(), cat.end(),
            [](const RelationFixture& a, const RelationFixture& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < cat.size(); ++i)
    if (cat[i].id == cat[i - 1].id)
      throw std::logic_error("duplicate fixture id: " + cat[i].id);
  return cat;
}

// A nonorientable triangle of twists: three curves, each pair crossing once,
// whose twists braid pairwise but only with a reversed sign on one pair, so
// no choice of curve orientations makes all three braids plain.
struct TriangleWitness {
  CurveSpec a, b, c;
};

inline std::string describe(const MappingClass& g) {
  if (g.factors().empty()) return "1";
  std::string out;
  for (const auto& f : g.factors()) {
    if (!out.empty()) out += " * ";
    out += f.name;
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
  return out;
}

inline std::string describe(const CurveSpec& spec) {
  if (const auto* b = std::get_if<BasicCurve>(&spec.node))
    return "Basic(" + std::to_string(b->lo) + "," + std::to_string(b->hi) + ")";
  const auto& p = std::get<CurveSpec::Push>(spec.node);
  return "Pushed(" + describe(*p.base) + ", " + describe(p.by) + ")";
}

// Re-derives the three twists from the curve specs and checks the triangle
// relations plus the certificate that the plain braid on the last pair
// genuinely fails.  Callers must run this on any search result they use.
inline bool verify_triangle(const SurfaceModel& m, const TriangleWitness& w) {
  const MappingClass ta = twist_about(m, w.a);
  const MappingClass tb = twist_about(m, w.b);
  const MappingClass tc = twist_about(m, w.c);
  if (mc_equal(ta, tb) || mc_equal(ta, tc) || mc_equal(tb, tc)) return false;
  return braid_with(ta, tb) && braid_with(ta, tc) && braid_with(tb, tc.power(-1)) &&
         !braid_with(tb, tc);
}

// Searches for a nonorientable triangle with the first two curves basic and
// the third basic or pushed by a product of at most `depth` table atoms.
// Deterministic: candidates are generated in table order, level by level.
inline std::optional<TriangleWitness> find_triangle(const SurfaceModel& m, int depth) {
  if (m.crosscaps() < 4)
    throw std::invalid_argument("find_triangle: the search needs at least four crosscaps");
  if (depth < 0) throw std::invalid_argument("find_triangle: depth must be nonnegative");

  std::vector<std::pair<CurveSpec, MappingClass>> basics;
  for (const auto& [name, entry] : m.table())
    if (entry.curve)
      basics.emplace_back(CurveSpec::basic(entry.curve->lo, entry.curve->hi),
                          MappingClass::named(m, name));

  auto scan = [&](const std::vector<std::pair<CurveSpec, MappingClass>>& candidates)
      -> std::optional<TriangleWitness> {
    for (const auto& [sa, ta] : basics)
      for (const auto& [sb, tb] : basics) {
        if (mc_equal(ta, tb) || !braid_with(ta, tb)) continue;
        for (const auto& [sc, tc] : candidates) {
          if (mc_equal(tc, ta) || mc_equal(tc, tb)) continue;
          if (braid_with(ta, tc) && braid_with(tb, tc.power(-1)) && !braid_with(tb, tc)) {
            TriangleWitness w{sa, sb, sc};
            if (verify_triangle(m, w)) return w;
          }
        }
      }
    return std::nullopt;
  };

  if (auto w = scan(basics)) return w;

  std::vector<MappingClass> letters;
  for (const auto& [name, entry] : m.table()) {
    letters.push_back(MappingClass::named(m, name));
    letters.push_back(MappingClass::named(m, name, -1));
  }

  std::set<FreeMap> seen_twists;
  for (const auto& [spec, t] : basics) seen_twists.insert(t.forward());
  std::vector<MappingClass> frontier{MappingClass::identity(m)};
  std::set<FreeMap> seen_pushes{frontier.front().forward()};

  for (int d = 1; d <= depth; ++d) {
    std::vector<MappingClass> next_frontier;
    std::vector<std::pair<CurveSpec, MappingClass>> candidates;
    for (const auto& g : frontier)
      for (const auto& letter : letters) {
        MappingClass g2 = g * letter;
        if (!seen_pushes.insert(g2.forward()).second) continue;
        for (const auto& [spec, t] : basics) {
          CurveSpec pushed = CurveSpec::pushed(spec, g2);
          MappingClass tw = twist_about(m, pushed);
          if (!seen_twists.insert(tw.forward()).second) continue;
          candidates.emplace_back(std::move(pushed), std::move(tw));
        }
        next_frontier.push_back(std::move(g2));
      }
    if (auto w = scan(candidates)) return w;
    frontier = std::move(next_frontier);
  }
  return std::nullopt;
}

}  // namespace twistlab
