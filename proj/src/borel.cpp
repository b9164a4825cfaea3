#include "padyn/borel.hpp"

#include "padyn/kernels.hpp"

namespace padyn {

BorelElem::BorelElem(Rational a_, Rational c_) : a(std::move(a_)), c(std::move(c_)) {
  if (a == 0) {
    throw Error("Borel element needs a nonzero diagonal");
  }
  a.canonicalize();
  c.canonicalize();
}

Mat2 BorelElem::matrix() const { return {a, c, Rational(0), Rational(1 / a)}; }

BorelElem BorelElem::inverse() const { return {Rational(1 / a), Rational(-c)}; }

BorelElem BorelElem::from_matrix(Mat2 const& m) {
  if (!is_upper_triangular(m) || !is_sl2(m)) {
    throw Error("not an element of B: needs upper triangular with det 1");
  }
  return {m(0, 0), m(0, 1)};
}

BorelElem operator*(BorelElem const& x, BorelElem const& y) {
  return {Rational(x.a * y.a), Rational(x.a * y.c + x.c / y.a)};
}

BorelElem borel_witness(BorelTruncType const& t, ScaleLadder const& ladder, WitnessRungs r) {
  if (r.beta <= r.alpha) {
    throw Error("borel_witness: the beta rung must lie above the alpha rung");
  }
  auto const& A     = t.a_class;
  Rational    alpha = realize(TruncType1::near(Rational(0), A), r.alpha, ladder);
  Rational    beta  = realize(TruncType1::at_infinity(A), r.beta, ladder);
  return {alpha, beta};
}

BorelTruncType classify_borel(BorelElem const& x, std::uint64_t p, int n, long w) {
  if (x.c == 0) {
    throw Error("not a p0-family witness: c-coordinate is zero");
  }
  Valuation va = valuation(x.a, p);
  Valuation vc = valuation(x.c, p);
  if (va <= w) {
    throw Error("not a p0-family witness: a-coordinate is not infinitesimal");
  }
  if (vc >= -w) {
    throw Error("not a p0-family witness: c-coordinate is not at infinity");
  }
  if (-vc.value() <= va.value()) {
    throw Error("not a p0-family witness: c-coordinate does not dominate");
  }
  auto ca = class_of(x.a, p, n);
  if (class_of(x.c, p, n) != ca) {
    throw Error("not a p0-family witness: coordinates lie in different classes");
  }
  return {ca};
}

BorelTruncType star_B(BorelTruncType const& s, BorelTruncType const& t, ScaleLadder const& ladder) {
  auto const& A = s.a_class;
  BorelElem   g = borel_witness(s, ladder, {0, 1});
  BorelElem   h = borel_witness(t, ladder, {2, 3});
  return classify_borel(g * h, A.prime(), A.level(), ladder.window());
}

BorelTruncType left_translate_B(BorelElem const& g, BorelTruncType const& t, ScaleLadder const& ladder) {
  auto const& A = t.a_class;
  return classify_borel(g * borel_witness(t, ladder), A.prime(), A.level(), ladder.window());
}

BorelGroupReport build_J(GlobalConfig const& cfg, ScaleLadder const& ladder) {
  auto const       G = ResidueGroup::build(cfg.prime, cfg.residue_level_n);
  BorelGroupReport r;
  r.level = cfg.residue_level_n;
  r.order = G.order();
  for (auto const& c : G.elements()) {
    r.elements.push_back({c});
  }
  r.table = kernels::parallel::build_table(r.order, [&](int i, int j) {
    return G.index_of(star_B(r.elements[i], r.elements[j], ladder).a_class);
  });
  int const e    = G.identity_index();
  r.idempotent   = r.table[static_cast<std::size_t>(e) * r.order + e] == e;
  r.group_axioms = kernels::parallel::associative(r.table, r.order);
  for (int i = 0; i < r.order && r.group_axioms; ++i) {
    bool inv = false;
    for (int j = 0; j < r.order; ++j) {
      inv = inv || r.table[static_cast<std::size_t>(i) * r.order + j] == e;
    }
    r.group_axioms = inv && r.table[static_cast<std::size_t>(e) * r.order + i] == i &&
                     r.table[static_cast<std::size_t>(i) * r.order + e] == i;
  }
  r.iso_to_residue_group = r.table == G.table();
  return r;
}

}  // namespace padyn
