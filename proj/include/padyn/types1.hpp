// Truncated complete 1-types over Qp and their concrete witnesses.
//
// A type is Realized(a), Near(a, C) (infinitesimally close to a, with x - a
// in class C) or AtInfinity(C) (valuation below every integer, x in class C).
// Witnesses are exact rationals placed at the magnitudes of a ScaleLadder.

#ifndef PADYN_TYPES1_HPP_
#define PADYN_TYPES1_HPP_

#include <optional>
#include <string>
#include <vector>

#include "padyn/padic.hpp"
#include "padyn/residues.hpp"

namespace padyn {

enum class TypeKind { Realized = 0, Near = 1, AtInfinity = 2 };

std::string to_string(TypeKind k);

class TruncType1 {
 public:
  static TruncType1 realized(Rational a);
  static TruncType1 near(Rational a, ResidueClass c);
  static TruncType1 at_infinity(ResidueClass c);

  [[nodiscard]] TypeKind            kind() const noexcept { return kind_; }
  [[nodiscard]] bool                is_realized() const noexcept { return kind_ == TypeKind::Realized; }
  [[nodiscard]] bool                is_near() const noexcept { return kind_ == TypeKind::Near; }
  [[nodiscard]] bool                is_at_infinity() const noexcept {
    return kind_ == TypeKind::AtInfinity;
  }
  // Realized and Near only.
  [[nodiscard]] Rational const&     base() const;
  // Near and AtInfinity only.
  [[nodiscard]] ResidueClass const& cls() const;
  [[nodiscard]] std::string         to_string() const;

  friend bool operator==(TruncType1 const& a, TruncType1 const& b) {
    return a.kind_ == b.kind_ && a.base_ == b.base_ && a.class_ == b.class_;
  }
  friend bool operator<(TruncType1 const& a, TruncType1 const& b);

 private:
  TruncType1(TypeKind k, Rational base, std::optional<ResidueClass> c)
      : kind_(k), base_(std::move(base)), class_(std::move(c)) {}

  TypeKind                    kind_;
  Rational                    base_;
  std::optional<ResidueClass> class_;
};

// Valuation magnitudes r_0 < r_1 < ... with r_{i+1} >= gap * (r_i + w).
class ScaleLadder {
 public:
  // The standard ladder for a configuration: first rung 2(w + m) + n + 3,
  // each next rung exactly gap * (previous + w).
  static ScaleLadder standard(GlobalConfig const& cfg, std::size_t rungs = 4);
  // Validates the separation rule; throws padyn::Error on violation.
  static ScaleLadder from_rungs(std::vector<long> rungs, long gap, long w);

  [[nodiscard]] std::size_t              size() const noexcept { return rungs_.size(); }
  [[nodiscard]] long                     gap() const noexcept { return gap_; }
  [[nodiscard]] long                     window() const noexcept { return w_; }
  [[nodiscard]] std::vector<long> const& rungs() const noexcept { return rungs_; }
  // Throws "ladder exhausted" past the end.
  [[nodiscard]] long                     rung(std::size_t i) const;
  // Same rung count, separation gap doubled.
  [[nodiscard]] ScaleLadder              with_doubled_gap() const;
  // Every magnitude multiplied by factor (the separation rule survives).
  [[nodiscard]] ScaleLadder              scaled(long factor) const;

 private:
  ScaleLadder(std::vector<long> rungs, long gap, long w)
      : rungs_(std::move(rungs)), gap_(gap), w_(w) {}

  std::vector<long> rungs_;
  long              gap_;
  long              w_;
};

// Least multiple of n that is >= magnitude.
long scale_exponent(long magnitude, int n);

// Witness at an explicit magnitude.
Rational realize_at(TruncType1 const& t, long magnitude);
Rational realize(TruncType1 const& t, std::size_t rung, ScaleLadder const& ladder);

// Classification through window w. Base points are compared exactly first;
// throws "window too coarse" when two base points are within the window.
TruncType1 classify(Rational const& x, std::vector<Rational> const& bases, long w,
                    std::uint64_t p, int n);

// Base points a type refers to (empty for AtInfinity).
std::vector<Rational> bases_of(TruncType1 const& t);

// classify(realize(t, r), bases, w) == t for every rung above the first.
bool roundtrip_check(TruncType1 const& t, ScaleLadder const& ladder, std::vector<Rational> const& bases,
                     std::uint64_t p, int n);
bool roundtrip_check(TruncType1 const& t, ScaleLadder const& ladder, std::uint64_t p, int n);

// True iff every pair of base points has v(a - b) <= w.
bool separated(std::vector<Rational> const& bases, std::uint64_t p, long w);

// Realized(b) for every base, then Near(b, C), then AtInfinity(C).
std::vector<TruncType1> enumerate_all_types(std::vector<Rational> const& bases,
                                            ResidueGroup const& group);

}  // namespace padyn

#endif  // PADYN_TYPES1_HPP_
