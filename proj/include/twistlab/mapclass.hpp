#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "twistlab/freemap.hpp"
#include "twistlab/surface.hpp"

namespace twistlab {

// One table entry raised to an integer power.  Negative exponents use the
// stored inverse witness, so no inversion is ever computed from scratch.
struct Factor {
  std::string name;
  int exponent = 1;

  bool operator==(const Factor& o) const { return name == o.name && exponent == o.exponent; }
};

// A mapping class presented as a product of table factors, rightmost factor
// applied first.  The realized automorphism is computed once on demand and
// shared between copies; concurrent first calls race only on a once_flag, so
// evaluation is idempotent and thread-safe.
class MappingClass {
 public:
  explicit MappingClass(const SurfaceModel& model)
      : model_(&model), cache_(std::make_shared<Cache>()) {}

  MappingClass(const SurfaceModel& model, std::vector<Factor> factors)
      : model_(&model), factors_(std::move(factors)), cache_(std::make_shared<Cache>()) {
    for (const Factor& f : factors_) {
      model.entry(f.name);  // throws on an unknown name
      if (f.exponent == 0) throw std::invalid_argument("factor exponent must be nonzero");
    }
  }

  static MappingClass identity(const SurfaceModel& model) { return MappingClass(model); }

  static MappingClass named(const SurfaceModel& model, const std::string& name,
                            int exponent = 1) {
    return MappingClass(model, {Factor{name, exponent}});
  }

  const SurfaceModel& model() const noexcept { return *model_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool trivially_identity() const noexcept { return factors_.empty(); }

  // Product in the mapping class group: (a * b) applies b first.
  friend MappingClass operator*(const MappingClass& a, const MappingClass& b) {
    a.require_same_model(b);
    std::vector<Factor> fs = a.factors_;
    fs.insert(fs.end(), b.factors_.begin(), b.factors_.end());
    return MappingClass(*a.model_, std::move(fs));
  }

  MappingClass inverse() const {
    std::vector<Factor> fs;
    fs.reserve(factors_.size());
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
      fs.push_back(Factor{it->name, -it->exponent});
    return MappingClass(*model_, std::move(fs));
  }

  MappingClass power(int n) const {
    if (n == 0) return MappingClass(*model_);
    MappingClass base = n < 0 ? inverse() : *this;
    std::vector<Factor> fs;
    fs.reserve(base.factors_.size() * static_cast<std::size_t>(n < 0 ? -n : n));
    for (int i = 0, m = n < 0 ? -n : n; i < m; ++i)
      fs.insert(fs.end(), base.factors_.begin(), base.factors_.end());
    return MappingClass(*model_, std::move(fs));
  }

  // Realizes the product as an automorphism with inverse witness.  Factors
  // fold left to right, so the rightmost acts on the surface first.  A growth
  // overflow propagates to the caller and leaves the cache unset.
  const AutWitness& evaluate() const {
    std::call_once(cache_->flag, [this] {
      AutWitness acc = AutWitness::identity(model_->rank());
      for (const Factor& f : factors_) acc = compose(acc, factor_witness(f));
      cache_->value.emplace(std::move(acc));
    });
    return *cache_->value;
  }

  const FreeMap& forward() const { return evaluate().forward(); }
  const FreeMap& backward() const { return evaluate().backward(); }

  Word apply(const Word& w) const { return apply_map(forward(), w); }

 private:
  struct Cache {
    std::once_flag flag;
    std::optional<AutWitness> value;
  };

  void require_same_model(const MappingClass& o) const {
    if (model_ != o.model_) throw std::invalid_argument("mapping classes live on different models");
  }

  AutWitness factor_witness(const Factor& f) const {
    const AutWitness& base = model_->entry(f.name).map;
    const AutWitness start = f.exponent < 0 ? base.inverse() : AutWitness(base);
    AutWitness acc = start;
    for (int i = 1, m = f.exponent < 0 ? -f.exponent : f.exponent; i < m; ++i)
      acc = compose(acc, start);
    return acc;
  }

  const SurfaceModel* model_;
  std::vector<Factor> factors_;
  std::shared_ptr<Cache> cache_;
};

// Mapping classes are compared through the automorphisms they induce; the
// forward map determines the backward one.
inline bool mc_equal(const MappingClass& a, const MappingClass& b) {
  if (&a.model() != &b.model()) return false;
  return a.forward() == b.forward();
}

inline bool commutes(const MappingClass& a, const MappingClass& b) {
  return commute_holds(a.forward(), b.forward());
}

inline bool braid_with(const MappingClass& a, const MappingClass& b) {
  return braid_holds(a.forward(), b.forward());
}

// g t g^-1 for a named table twist t: the twist about the image curve.
inline MappingClass conjugated_twist(const SurfaceModel& model, const std::string& base_name,
                                     const MappingClass& by, int exponent = 1) {
  return by * MappingClass::named(model, base_name, exponent) * by.inverse();
}

// A curve given either by its crosscap range or as the image of another
// curve under a mapping class.
struct CurveSpec {
  struct Push {
    std::shared_ptr<const CurveSpec> base;
    MappingClass by;
  };

  std::variant<BasicCurve, Push> node;

  static CurveSpec basic(int i, int j) { return CurveSpec{BasicCurve{i, j}}; }

  static CurveSpec pushed(CurveSpec base, MappingClass by) {
    return CurveSpec{Push{std::make_shared<const CurveSpec>(std::move(base)), std::move(by)}};
  }

  bool is_basic() const noexcept { return std::holds_alternative<BasicCurve>(node); }
};

// The twist about the given curve: table lookup for a basic curve, and
// g . twist(base) . g^-1 when the curve is the image of base under g.  The
// handedness of a pushed twist follows the pushing map; callers that need
// the opposite one take power(-1) of the result.
inline MappingClass twist_about(const SurfaceModel& model, const CurveSpec& curve) {
  if (const BasicCurve* b = std::get_if<BasicCurve>(&curve.node)) {
    model.elementary_twist(b->lo, b->hi);  // rejects one-sided curves with a precise error
    return MappingClass::named(model, SurfaceModel::twist_name(b->lo, b->hi));
  }
  const CurveSpec::Push& p = std::get<CurveSpec::Push>(curve.node);
  return p.by * twist_about(model, *p.base) * p.by.inverse();
}

}  // namespace twistlab
