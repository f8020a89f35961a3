#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "twistlab/config.hpp"
#include "twistlab/expr.hpp"
#include "twistlab/relations.hpp"
#include "twistlab/surface.hpp"

using namespace twistlab;

namespace {

long long count_prefix(const std::vector<RelationFixture>& cat, const std::string& prefix) {
  return std::count_if(cat.begin(), cat.end(), [&](const RelationFixture& f) {
    return f.id.rfind(prefix, 0) == 0;
  });
}

std::vector<std::pair<std::string, FixtureStatus>> skeleton(const SuiteReport& rep) {
  std::vector<std::pair<std::string, FixtureStatus>> out;
  for (const auto& r : rep.results) out.emplace_back(r.id, r.status);
  return out;
}

}  // namespace

TEST_CASE("builtin catalog is well formed") {
  const auto cat = builtin_catalog();
  REQUIRE(cat.size() == 164);

  for (std::size_t i = 1; i < cat.size(); ++i) REQUIRE(cat[i - 1].id < cat[i].id);

  CHECK(count_prefix(cat, "R-braid-") == 19);
  CHECK(count_prefix(cat, "R-commute-") == 38);
  CHECK(count_prefix(cat, "R-pres3-") == 6);
  CHECK(count_prefix(cat, "R-pres6-") == 6);
  CHECK(count_prefix(cat, "R-conj-inv-") == 1);
  CHECK(count_prefix(cat, "R-etwist-") == 2);
  CHECK(count_prefix(cat, "R-vsq3-") == 3);
  CHECK(count_prefix(cat, "R-vsq6-") == 1);
  CHECK(count_prefix(cat, "R-chain3-") == 6);
  CHECK(count_prefix(cat, "R-chain6-") == 8);
  CHECK(count_prefix(cat, "R-triangle-") == 3);
  CHECK(count_prefix(cat, "R-gamma-") == 66);
  CHECK(count_prefix(cat, "R-rank-") == 5);

  for (const auto& f : cat) {
    INFO(f.id);
    REQUIRE(f.model >= 2);
    REQUIRE_FALSE(f.provenance.empty());
    const SurfaceModel m(f.model);
    REQUIRE_NOTHROW(Expr::parse(f.lhs).realize(m));
    REQUIRE_NOTHROW(Expr::parse(f.rhs).realize(m));
    if (f.kind == FixtureKind::CoverMod)
      REQUIRE(f.modulus >= 2);
    else
      REQUIRE(f.modulus == 0);
  }
}

TEST_CASE("braid and commute fixtures cover every two-sided pair") {
  const auto cat = builtin_catalog();
  for (int k = 3; k <= 6; ++k) {
    const SurfaceModel m(k);
    std::vector<BasicCurve> curves;
    for (const auto& [name, entry] : m.table())
      if (entry.curve) curves.push_back(*entry.curve);
    int braid = 0, commute = 0, skipped = 0;
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = i + 1; j < curves.size(); ++j)
        switch (linked(curves[i], curves[j])) {
          case Linking::OnceLinked: ++braid; break;
          case Linking::Disjointable:
          case Linking::Nested: ++commute; break;
          case Linking::TwiceLinked: ++skipped; break;
        }
    const std::string kk = "k" + std::to_string(k) + "-";
    CHECK(count_prefix(cat, "R-braid-" + kk) == braid);
    CHECK(count_prefix(cat, "R-commute-" + kk) == commute);
    CHECK(skipped == (k == 6 ? 1 : 0));
  }
}

TEST_CASE("full suite passes serially") {
  const auto cat = builtin_catalog();
  const SuiteReport rep = run_suite(cat);
  REQUIRE(rep.results.size() == cat.size());
  CHECK(rep.passed == static_cast<int>(cat.size()));
  CHECK(rep.failed == 0);
  CHECK(rep.overflowed == 0);
  CHECK(rep.all_passed());
  for (std::size_t i = 1; i < rep.results.size(); ++i)
    CHECK(rep.results[i - 1].id < rep.results[i].id);
  for (const auto& r : rep.results) {
    INFO(r.id);
    CHECK(r.detail.empty());
    CHECK(r.millis >= 0.0);
  }
}

TEST_CASE("filter selects fixtures by id prefix") {
  const auto cat = builtin_catalog();

  const SuiteReport pres3 = run_suite(cat, "R-pres3");
  REQUIRE(pres3.results.size() == 6);
  CHECK(pres3.all_passed());
  for (int i = 0; i < 6; ++i)
    CHECK(pres3.results[i].id == "R-pres3-" + std::to_string(i + 1));

  CHECK(run_suite(cat, "R-pres6").results.size() == 6);
  CHECK(run_suite(cat, "R-gamma-k2").results.size() == 3);

  const SuiteReport none = run_suite(cat, "no-such-prefix");
  CHECK(none.results.empty());
  CHECK(none.passed == 0);
  CHECK(none.all_passed());
}

TEST_CASE("suite reports are deterministic and independent of concurrency") {
  const auto cat = builtin_catalog();
  const SuiteReport serial_a = run_suite(cat);
  const SuiteReport serial_b = run_suite(cat);
  const SuiteReport threaded = run_suite(cat, "", 4);
  CHECK(skeleton(serial_a) == skeleton(serial_b));
  CHECK(skeleton(serial_a) == skeleton(threaded));
  for (std::size_t i = 0; i < serial_a.results.size(); ++i) {
    CHECK(serial_a.results[i].detail == threaded.results[i].detail);
  }
}

TEST_CASE("failures report the first differing generator image") {
  const RelationFixture bad{"bad-exact", 3, "T(1,2)", "T(2,3)", "differs", FixtureKind::Exact, 0};
  const FixtureResult r = verify_relation(bad);
  CHECK(r.status == FixtureStatus::Fail);
  CHECK(r.detail.rfind("x1: ", 0) == 0);
  CHECK(r.detail.find(" != ") != std::string::npos);

  const RelationFixture bad_cover{"bad-cover", 3, "T(1,2)", "", "differs", FixtureKind::Cover, 0};
  const FixtureResult rc = verify_relation(bad_cover);
  CHECK(rc.status == FixtureStatus::Fail);
  CHECK(rc.detail.rfind("cover(", 0) == 0);

  // A single twist is trivial on the cover mod 2 only after squaring.
  const RelationFixture one{"one", 3, "T(1,2)", "", "", FixtureKind::CoverMod, 2};
  CHECK(verify_relation(one).status == FixtureStatus::Fail);
  const RelationFixture two{"two", 3, "T(1,2)^2", "", "", FixtureKind::CoverMod, 2};
  CHECK(verify_relation(two).status == FixtureStatus::Pass);
}

TEST_CASE("hitting the word-length guard is reported as overflow") {
  const RelationFixture huge{"huge", 3, "(T(1,2) * T(2,3))^16 * (T(1,2) * T(2,3))^-16", "",
                             "true identity whose intermediate words grow past a small cap",
                             FixtureKind::Exact, 0};
  {
    const scoped_word_length_limit guard(64);
    const FixtureResult r = verify_relation(huge);
    CHECK(r.status == FixtureStatus::Overflow);
    CHECK_FALSE(r.detail.empty());
    const SuiteReport rep = run_suite({huge});
    REQUIRE(rep.results.size() == 1);
    CHECK(rep.overflowed == 1);
    CHECK_FALSE(rep.all_passed());
  }
  CHECK(verify_relation(huge).status == FixtureStatus::Pass);
}

TEST_CASE("malformed fixtures throw instead of failing") {
  CHECK_THROWS_AS(verify_relation({"p", 3, "T(1,", "", "", FixtureKind::Exact, 0}),
                  expr_parse_error);
  CHECK_THROWS_AS(verify_relation({"n", 3, "T(1,4)", "", "", FixtureKind::Exact, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_relation({"m", 3, "T(1,2)", "", "", FixtureKind::CoverMod, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_relation({"k", 0, "", "", "", FixtureKind::Exact, 0}),
                  std::invalid_argument);

  const std::vector<RelationFixture> broken(4, {"p", 3, "T(1,", "", "", FixtureKind::Exact, 0});
  CHECK_THROWS_AS(run_suite(broken, "", 2), expr_parse_error);
}

TEST_CASE("corruption appends one factor and flips the verdict") {
  const RelationFixture f{"f", 3, "T(1,2) * T(2,3)", "x", "", FixtureKind::Exact, 0};
  const RelationFixture c = corrupted(f);
  CHECK(c.id == "f~mutant");
  CHECK(c.lhs == "T(1,2) * T(2,3) * T(1,2)");
  CHECK(c.rhs == f.rhs);

  const RelationFixture empty_side{"e", 3, "", "", "", FixtureKind::Exact, 0};
  CHECK(corrupted(empty_side).lhs == "T(1,2)");

  const auto cat = builtin_catalog();
  std::vector<RelationFixture> sample;
  for (const auto& fix : cat)
    for (const char* prefix : {"R-pres3", "R-etwist", "R-vsq3", "R-triangle", "R-rank",
                               "R-gamma-k2", "R-chain3-k4"})
      if (fix.id.rfind(prefix, 0) == 0) sample.push_back(fix);
  REQUIRE(sample.size() == 23);
  CHECK(mutation_sweep(sample).empty());
}

TEST_CASE("triangle search finds the pushed witness at depth one") {
  const SurfaceModel m(4);

  CHECK_FALSE(find_triangle(m, 0).has_value());

  const auto w = find_triangle(m, 1);
  REQUIRE(w.has_value());
  CHECK(verify_triangle(m, *w));
  CHECK(describe(w->a) == "Basic(1,2)");
  CHECK(describe(w->b) == "Basic(2,3)");
  CHECK(describe(w->c) == "Pushed(Basic(2,3), U)");

  // the a,c pair braids plainly; the b,c pair braids only after reversing c
  const MappingClass ta = twist_about(m, w->a);
  const MappingClass tb = twist_about(m, w->b);
  const MappingClass tc = twist_about(m, w->c);
  CHECK(braid_with(ta, tc));
  CHECK(braid_with(tb, tc.power(-1)));
  CHECK_FALSE(braid_with(tb, tc));
}

TEST_CASE("triangle verification rejects non-witnesses") {
  const SurfaceModel m(4);
  CHECK_FALSE(verify_triangle(
      m, {CurveSpec::basic(1, 2), CurveSpec::basic(3, 4), CurveSpec::basic(1, 4)}));
  CHECK_FALSE(verify_triangle(
      m, {CurveSpec::basic(1, 2), CurveSpec::basic(1, 2), CurveSpec::basic(2, 3)}));
  // plain braid triple with no reversal needed on the last pair
  CHECK_FALSE(verify_triangle(
      m, {CurveSpec::basic(1, 2), CurveSpec::basic(2, 3),
          CurveSpec::pushed(CurveSpec::basic(2, 3), MappingClass::identity(m))}));

  const SurfaceModel small(3);
  CHECK_THROWS_AS(find_triangle(small, 1), std::invalid_argument);
  CHECK_THROWS_AS(find_triangle(m, -1), std::invalid_argument);
}

TEST_CASE("triangle search works on five crosscaps too") {
  const SurfaceModel m(5);
  const auto w = find_triangle(m, 1);
  REQUIRE(w.has_value());
  CHECK(verify_triangle(m, *w));
}

TEST_CASE("rank families record the expected lower bounds") {
  const auto records = rank_families();
  REQUIRE(records.size() == 4);
  const int expected_size[] = {1, 2, 2, 3};
  const int expected_bound[] = {1, 2, 2, 3};
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].model == static_cast<int>(i) + 3);
    CHECK(records[i].twists.size() == static_cast<std::size_t>(expected_size[i]));
    CHECK(records[i].bound == expected_bound[i]);
    CHECK(records[i].bound >= 1);
  }
}

TEST_CASE("describe prints factor lists and curve specs") {
  const SurfaceModel m(4);
  CHECK(describe(MappingClass::identity(m)) == "1");
  CHECK(describe(MappingClass::named(m, "T(1,2)", -3)) == "T(1,2)^-3");
  CHECK(describe(MappingClass::named(m, "U") * MappingClass::named(m, "T(3,4)", 2)) ==
        "U * T(3,4)^2");
  const CurveSpec nested = CurveSpec::pushed(
      CurveSpec::pushed(CurveSpec::basic(1, 2), MappingClass::named(m, "U")),
      MappingClass::named(m, "T(2,3)", -1));
  CHECK(describe(nested) == "Pushed(Pushed(Basic(1,2), U), T(2,3)^-1)");
}

TEST_CASE("status and kind names round-trip") {
  CHECK(std::string(to_string(FixtureStatus::Pass)) == "pass");
  CHECK(std::string(to_string(FixtureStatus::Fail)) == "fail");
  CHECK(std::string(to_string(FixtureStatus::Overflow)) == "overflow");
  for (FixtureKind k : {FixtureKind::Exact, FixtureKind::Cover, FixtureKind::CoverMod})
    CHECK(fixture_kind_from_string(to_string(k)) == k);
  CHECK_FALSE(fixture_kind_from_string("nonsense").has_value());
}
