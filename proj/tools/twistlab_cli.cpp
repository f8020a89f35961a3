// Command-line front end: evaluate twist-word expressions, compare them,
// compute homology matrices, and run the relation suite.
//
// Exit codes: 0 success/pass, 1 comparison or fixture failure, 2 usage or
// input error, 3 word-length or matrix-entry overflow.

#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twistlab/config.hpp"
#include "twistlab/expr.hpp"
#include "twistlab/homology.hpp"
#include "twistlab/json_io.hpp"
#include "twistlab/mapclass.hpp"
#include "twistlab/relations.hpp"
#include "twistlab/surface.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitOverflow = 3;

// "Nk,1" -> k.  The trailing ",1" is the single boundary component; no other
// surface family is supported.
int parse_surface(const std::string& text) {
  const std::string bad = "--surface expects Nk,1 with k >= 1 crosscaps, got '" + text + "'";
  if (text.size() < 4 || text.front() != 'N' || text.substr(text.size() - 2) != ",1")
    throw std::invalid_argument(bad);
  const std::string digits = text.substr(1, text.size() - 3);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(bad);
  if (digits.size() > 3) throw std::invalid_argument(bad);
  const int k = std::stoi(digits);
  if (k < 1) throw std::invalid_argument(bad);
  return k;
}

void print_matrix(const char* title, const twistlab::IntMatrix& m) {
  std::printf("%s (dim %d):\n", title, m.dim());
  for (int r = 0; r < m.dim(); ++r) {
    std::printf(" ");
    for (int c = 0; c < m.dim(); ++c) std::printf(" %lld", m.at(r, c));
    std::printf("\n");
  }
}

int cmd_eval(const std::string& surface, const std::string& expr_text, bool as_json) {
  const twistlab::SurfaceModel model(parse_surface(surface));
  const twistlab::Expr expr = twistlab::Expr::parse(expr_text);
  const twistlab::MappingClass cls = expr.realize(model);
  const twistlab::FreeMap& f = cls.forward();
  if (as_json) {
    twistlab::Json j;
    j["command"] = "eval";
    j["surface"] = surface;
    j["expr"] = expr.str();
    twistlab::Json images = twistlab::Json::array();
    for (int g = 1; g <= f.rank(); ++g) images.push_back(f.image(g).str());
    j["images"] = std::move(images);
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    for (int g = 1; g <= f.rank(); ++g)
      std::printf("x%d -> %s\n", g, f.image(g).str().c_str());
  }
  return kExitPass;
}

int cmd_equal(const std::string& surface, const std::string& lhs_text,
              const std::string& rhs_text, bool as_json) {
  const twistlab::SurfaceModel model(parse_surface(surface));
  const twistlab::Expr lhs = twistlab::Expr::parse(lhs_text);
  const twistlab::Expr rhs = twistlab::Expr::parse(rhs_text);
  const twistlab::MappingClass lhs_class = lhs.realize(model);
  const twistlab::MappingClass rhs_class = rhs.realize(model);
  const twistlab::FreeMap& a = lhs_class.forward();
  const twistlab::FreeMap& b = rhs_class.forward();

  const bool equal = a == b;
  std::string detail;
  if (!equal)
    for (int g = 1; g <= a.rank(); ++g)
      if (!(a.image(g) == b.image(g))) {
        detail = "x" + std::to_string(g) + ": " + a.image(g).str() + " != " + b.image(g).str();
        break;
      }

  if (as_json) {
    twistlab::Json j;
    j["command"] = "equal";
    j["surface"] = surface;
    j["lhs"] = lhs.str();
    j["rhs"] = rhs.str();
    j["verdict"] = equal ? "EQUAL" : "DIFFER";
    j["detail"] = detail;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("%s\n", equal ? "EQUAL" : "DIFFER");
    if (!equal) std::printf("  %s\n", detail.c_str());
  }
  return equal ? kExitPass : kExitFail;
}

int cmd_homology(const std::string& surface, const std::string& expr_text, long long mod,
                 bool as_json) {
  const twistlab::SurfaceModel model(parse_surface(surface));
  const twistlab::Expr expr = twistlab::Expr::parse(expr_text);
  const twistlab::MappingClass cls = expr.realize(model);
  twistlab::IntMatrix ab = twistlab::abelianize(cls.forward());
  twistlab::IntMatrix cover = twistlab::double_cover_h1(cls);
  if (mod >= 2) {
    ab = ab.mod(mod);
    cover = cover.mod(mod);
  }
  if (as_json) {
    twistlab::Json j;
    j["command"] = "homology";
    j["surface"] = surface;
    j["expr"] = expr.str();
    j["mod"] = mod >= 2 ? twistlab::Json(mod) : twistlab::Json(nullptr);
    j["cover"] = twistlab::matrix_to_json(cover);
    j["abelianized"] = twistlab::matrix_to_json(ab);
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    print_matrix("cover", cover);
    print_matrix("abelianized", ab);
  }
  return kExitPass;
}

int cmd_suite(const std::string& fixtures_path, const std::string& filter, unsigned threads,
              bool as_json) {
  const std::vector<twistlab::RelationFixture> catalog =
      fixtures_path.empty() ? twistlab::builtin_catalog() : twistlab::load_catalog(fixtures_path);
  const twistlab::SuiteReport report = twistlab::run_suite(catalog, filter, threads);

  if (as_json) {
    twistlab::Json j;
    j["command"] = "suite";
    j["catalog_version"] = twistlab::kCatalogVersion;
    j["filter"] = filter;
    j["report"] = twistlab::report_to_json(report);
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    double total = 0.0;
    for (const auto& r : report.results) {
      std::printf("[%s] %s (%.1f ms)\n", to_string(r.status), r.id.c_str(), r.millis);
      if (!r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
      total += r.millis;
    }
    std::printf("passed %d, failed %d, overflowed %d of %zu (%.1f ms)\n", report.passed,
                report.failed, report.overflowed, report.results.size(), total);
  }
  if (report.failed > 0) return kExitFail;
  if (report.overflowed > 0) return kExitOverflow;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mapping-class computations on a disc with crosscaps"};
  app.require_subcommand(1);

  long long max_word_length = 0;
  app.add_option("--max-word-length", max_word_length,
                 "cap on freely reduced word length (default 1000000)")
      ->check(CLI::PositiveNumber);

  std::string surface, expr_text, lhs_text, rhs_text, filter, fixtures_path;
  long long mod = 0;
  unsigned threads = 1;
  bool eval_json = false, equal_json = false, hom_json = false, suite_json = false;

  CLI::App* eval = app.add_subcommand("eval", "print the generator images of an expression");
  eval->add_option("--surface", surface, "surface Nk,1")->required();
  eval->add_option("expr", expr_text, "twist-word expression")->required();
  eval->add_flag("--json", eval_json, "emit JSON");

  CLI::App* equal = app.add_subcommand("equal", "compare two expressions exactly");
  equal->add_option("--surface", surface, "surface Nk,1")->required();
  equal->add_option("lhs", lhs_text, "left expression")->required();
  equal->add_option("rhs", rhs_text, "right expression")->required();
  equal->add_flag("--json", equal_json, "emit JSON");

  CLI::App* homology =
      app.add_subcommand("homology", "abelianized and double-cover matrices of an expression");
  homology->add_option("--surface", surface, "surface Nk,1")->required();
  homology->add_option("expr", expr_text, "twist-word expression")->required();
  homology->add_option("--mod", mod, "reduce matrix entries mod m")->check(CLI::Range(2LL, 1000000000LL));
  homology->add_flag("--json", hom_json, "emit JSON");

  CLI::App* suite = app.add_subcommand("suite", "verify the relation fixture catalog");
  suite->add_option("--fixtures", fixtures_path, "catalog JSON path (default: built-in catalog)");
  suite->add_option("--filter", filter, "run only fixtures whose id starts with this prefix");
  suite->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 64u));
  suite->add_flag("--json", suite_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (max_word_length > 0) twistlab::set_max_word_length(max_word_length);
    if (eval->parsed()) return cmd_eval(surface, expr_text, eval_json);
    if (equal->parsed()) return cmd_equal(surface, lhs_text, rhs_text, equal_json);
    if (homology->parsed()) return cmd_homology(surface, expr_text, mod, hom_json);
    return cmd_suite(fixtures_path, filter, threads, suite_json);
  } catch (const twistlab::word_growth_overflow& e) {
    std::fprintf(stderr, "overflow: %s\n", e.what());
    return kExitOverflow;
  } catch (const std::overflow_error& e) {
    std::fprintf(stderr, "overflow: %s\n", e.what());
    return kExitOverflow;
  } catch (const twistlab::expr_parse_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
