// The Borel group B(Qp) as pairs (a, c) ~ [[a, c], [0, 1/a]], witnesses for
// the type p0 and its translates, and the level-n group J.

#ifndef PADYN_BOREL_HPP_
#define PADYN_BOREL_HPP_

#include <vector>

#include "padyn/types1.hpp"

namespace padyn {

struct BorelElem {
  Rational a{1};
  Rational c{0};

  BorelElem() = default;
  BorelElem(Rational a_, Rational c_);  // throws on a == 0

  [[nodiscard]] Mat2      matrix() const;
  [[nodiscard]] BorelElem inverse() const;
  static BorelElem        from_matrix(Mat2 const& m);  // upper triangular, det 1

  friend bool operator==(BorelElem const& x, BorelElem const& y) { return x.a == y.a && x.c == y.c; }
};

// (a, c)(alpha, beta) = (a alpha, a beta + c / alpha)
BorelElem operator*(BorelElem const& x, BorelElem const& y);

// A point of J at level n: the translate of p0 by any (a, c) with a in class
// a_class. The additive coordinate carries no level-n data.
struct BorelTruncType {
  ResidueClass a_class;

  static BorelTruncType identity(std::uint64_t p, int n) { return {ResidueClass::identity(p, n)}; }

  friend bool operator==(BorelTruncType const&, BorelTruncType const&) = default;
  friend auto operator<=>(BorelTruncType const& x, BorelTruncType const& y) {
    return x.a_class <=> y.a_class;
  }
};

// Rung indices used by one witness. beta sits strictly above alpha: the type
// of alpha over (M, beta) is finitely satisfiable, so v(beta) lies below
// everything definable from v(alpha).
struct WitnessRungs {
  std::size_t alpha = 0;
  std::size_t beta  = 1;
};

// (alpha, beta) with alpha = realize(Near(0, A)) and beta =
// realize(AtInfinity(A)), A = t.a_class.
BorelElem borel_witness(BorelTruncType const& t, ScaleLadder const& ladder, WitnessRungs r = {});

// Reads a witness back: a-coordinate infinitesimal, c-coordinate at infinity,
// both in the same class, and -v(c) > v(a). Throws otherwise.
BorelTruncType classify_borel(BorelElem const& x, std::uint64_t p, int n, long w);

// Heir-side product: s realized at rungs (0, 1), t at rungs (2, 3), the
// exact product classified back.
BorelTruncType star_B(BorelTruncType const& s, BorelTruncType const& t, ScaleLadder const& ladder);

BorelTruncType left_translate_B(BorelElem const& g, BorelTruncType const& t, ScaleLadder const& ladder);

struct BorelGroupReport {
  int                         level = 0;
  int                         order = 0;
  std::vector<BorelTruncType> elements;  // ordered as ResidueGroup(n)
  std::vector<int>            table;
  bool                        idempotent = false;        // p0 * p0 == p0
  bool                        group_axioms = false;
  bool                        iso_to_residue_group = false;
};

BorelGroupReport build_J(GlobalConfig const& cfg, ScaleLadder const& ladder);

}  // namespace padyn

#endif  // PADYN_BOREL_HPP_
