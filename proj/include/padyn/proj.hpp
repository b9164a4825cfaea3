// SL(2, Qp) acting on truncated types of the projective line: the p0* and
// q0* operators, the collapse of (q0 * p0)*, and finite-level minimality.
//
// Points in |x| <= 1 use the affine coordinate x; the rest (including the
// point at infinity) use y = 1/x. Class tags of Near types are measured in the
// chart of their base point.

#ifndef PADYN_PROJ_HPP_
#define PADYN_PROJ_HPP_

#include <optional>
#include <string>
#include <vector>

#include "padyn/sl2.hpp"

namespace padyn {

class ProjPoint {
 public:
  static ProjPoint finite(Rational x) { return ProjPoint(false, std::move(x)); }
  static ProjPoint infinity() { return ProjPoint(true, Rational(0)); }

  [[nodiscard]] bool            is_infinity() const noexcept { return inf_; }
  [[nodiscard]] Rational const& x() const;  // finite points only
  // Affine chart iff finite with v(x) >= 0.
  [[nodiscard]] bool            affine_chart(std::uint64_t p) const;
  // x in the affine chart, 1/x (0 at infinity) otherwise.
  [[nodiscard]] Rational        chart_coordinate(std::uint64_t p) const;
  [[nodiscard]] std::string     to_string() const;

  friend bool operator==(ProjPoint const& a, ProjPoint const& b) {
    return a.inf_ == b.inf_ && a.x_ == b.x_;
  }
  friend bool operator<(ProjPoint const& a, ProjPoint const& b) {
    return a.inf_ != b.inf_ ? a.inf_ < b.inf_ : a.x_ < b.x_;
  }

 private:
  ProjPoint(bool inf, Rational x) : inf_(inf), x_(std::move(x)) { x_.canonicalize(); }

  bool     inf_;
  Rational x_;
};

// The point with the given chart coordinate.
ProjPoint from_chart(bool affine, Rational const& z);
ProjPoint mobius(Mat2 const& g, ProjPoint const& pt);

class ProjTruncType {
 public:
  static ProjTruncType realized(ProjPoint pt) { return {std::move(pt), std::nullopt}; }
  static ProjTruncType near(ProjPoint pt, ResidueClass c) { return {std::move(pt), std::move(c)}; }

  [[nodiscard]] bool                is_realized() const noexcept { return !class_; }
  [[nodiscard]] bool                is_near() const noexcept { return class_.has_value(); }
  [[nodiscard]] ProjPoint const&    point() const noexcept { return pt_; }
  [[nodiscard]] ResidueClass const& cls() const;
  // Realized(inf) or Near(inf, C).
  [[nodiscard]] bool                infinity_based() const noexcept { return pt_.is_infinity(); }
  [[nodiscard]] std::string         to_string() const;

  friend bool operator==(ProjTruncType const& a, ProjTruncType const& b) {
    return a.pt_ == b.pt_ && a.class_ == b.class_;
  }
  friend bool operator<(ProjTruncType const& a, ProjTruncType const& b) {
    if (!(a.pt_ == b.pt_)) {
      return a.pt_ < b.pt_;
    }
    return a.class_ < b.class_;
  }

 private:
  ProjTruncType(ProjPoint pt, std::optional<ResidueClass> c) : pt_(std::move(pt)), class_(std::move(c)) {}

  ProjPoint                   pt_;
  std::optional<ResidueClass> class_;
};

// P^1(Z/p^w): a in [0, p^w) in the affine chart, then y = p b for
// b in [0, p^(w-1)) in the chart at infinity (y = 0 is infinity).
std::vector<ProjPoint> proj_bases(std::uint64_t p, long w);

// Base point of pt at resolution p^r.
ProjPoint reduce_point(ProjPoint const& pt, std::uint64_t p, long r);

// Exact action. Near(a, C) goes to Near(g a, D C) with D the class of the
// derivative of g in the charts of a and g a: +-1 / den^2, den the second
// (affine target) or first (target at infinity) homogeneous coordinate.
ProjTruncType act_proj(Mat2 const& g, ProjTruncType const& t, std::uint64_t p, int n);

// Witness: the chart coordinate displaced by rep(C) p^(nk).
ProjPoint realize_proj(ProjTruncType const& t, long magnitude, int n);
ProjTruncType classify_proj(ProjPoint const& pt, std::vector<ProjPoint> const& bases, long w,
                            std::uint64_t p, int n);

// The truncated P^1 type space at one level.
class ProjLevel {
 public:
  explicit ProjLevel(GlobalConfig const& cfg);

  [[nodiscard]] GlobalConfig const&               config() const noexcept { return cfg_; }
  [[nodiscard]] std::vector<ProjPoint> const&     bases() const noexcept { return bases_; }
  // Realized base points, then every Near type.
  [[nodiscard]] std::vector<ProjTruncType> const& all_types() const noexcept { return all_; }
  [[nodiscard]] std::vector<ProjTruncType> const& nonalgebraic() const noexcept { return near_; }
  [[nodiscard]] ResidueGroup const&               residues() const noexcept { return residues_; }

  // Base point reduced into bases(), class kept.
  [[nodiscard]] ProjTruncType canonicalize(ProjTruncType const& t) const;

  // p0 = tp(alpha, beta) at rungs (0, 1) applied to t realized at rung 2.
  [[nodiscard]] ProjTruncType p0_star(ProjTruncType const& t, ScaleLadder const& ladder) const;
  // The q0-witness perturbation P(R) at rung 0 applied to t realized at rung 1.
  [[nodiscard]] ProjTruncType q0_star(ProjTruncType const& t, ScaleLadder const& ladder) const;
  // For t at infinity: [[1, 0], [1/x, 1]] == I mod p^m on the witness x.
  [[nodiscard]] bool          q0_mechanism(ProjTruncType const& t, ScaleLadder const& ladder) const;

 private:
  GlobalConfig               cfg_;
  ResidueGroup               residues_;
  std::vector<ProjPoint>     bases_;
  std::vector<ProjTruncType> all_;
  std::vector<ProjTruncType> near_;
};

struct CollapseReport {
  std::size_t                  states = 0;
  bool                         p0_at_infinity = false;
  bool                         q0_constant    = false;  // q0* constant on types at infinity
  bool                         mechanism      = false;  // q0 witness congruence
  bool                         collapsed      = false;
  std::optional<ProjTruncType> collapsed_type;
  // Realized inputs whose chart valuation lies within 1 of the window.
  std::vector<ProjTruncType>   boundary_inputs;
};

CollapseReport collapse_check(GlobalConfig const& cfg, ScaleLadder const& ladder);

struct ProjMinimalityReport {
  std::size_t                  states = 0;
  bool                         strongly_connected = false;
  bool                         proximal = false;
  std::optional<ProjTruncType> collapsed_type;
};

ProjMinimalityReport minimality_proximality_report(GlobalConfig const& cfg, ScaleLadder const& ladder);

// On base points, the projection of x * y agrees with x acting
// on the projection of y, at resolution p^min(m, w). Returns the number of
// disagreeing pairs among the given flow-point index pairs.
std::size_t projection_mismatches(GFlow const& flow, std::vector<std::pair<std::size_t, std::size_t>> const& pairs,
                                  ScaleLadder const& ladder);

}  // namespace padyn

#endif  // PADYN_PROJ_HPP_
