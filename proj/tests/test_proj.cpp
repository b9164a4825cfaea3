#include "support.hpp"

#include <set>

#include "padyn/verify.hpp"

using namespace padyn;
using padyn::test::pw;
using padyn::test::q;

namespace {

ResidueClass cls(long rep, int n = 2) { return class_of(q(rep), 5, n); }

ProjPoint pt(long num, long den = 1) { return ProjPoint::finite(q(num, den)); }

ProjPoint const inf = ProjPoint::infinity();

// Coordinate of x in the chart of the reference point.
Rational coordinate_near(ProjPoint const& ref, ProjPoint const& x) {
  bool const affine = !ref.is_infinity() && valuation(ref.x(), 5) >= 0;
  if (affine) {
    return x.x();
  }
  return x.is_infinity() ? Rational(0) : Rational(1 / x.x());
}

// Oracle for act_proj: push a nearby point through the Mobius map and read the
// class of its displacement from the image of the base.
ProjTruncType act_oracle(Mat2 const& g, ProjTruncType const& t, int n) {
  ProjPoint const img0 = mobius(g, t.point());
  if (t.is_realized()) {
    return ProjTruncType::realized(img0);
  }
  bool const affine = !t.point().is_infinity() && valuation(t.point().x(), 5) >= 0;
  Rational   z      = affine ? t.point().x() : coordinate_near(t.point(), t.point());
  Rational   eps    = Rational(t.cls().representative()) * pw(5, scale_exponent(60, n));
  ProjPoint  x      = affine ? ProjPoint::finite(Rational(z + eps))
                             : (z + eps == 0 ? inf : ProjPoint::finite(Rational(1 / (z + eps))));
  Rational   diff   = coordinate_near(img0, mobius(g, x)) - coordinate_near(img0, img0);
  REQUIRE(valuation(diff, 5) > 20);
  return ProjTruncType::near(img0, class_of(diff, 5, n));
}

GlobalConfig level(int n, int w) {
  GlobalConfig cfg;
  cfg.residue_level_n    = n;
  cfg.valuation_window_w = w;
  return cfg;
}

Mat2 const T(q(1), q(1), q(0), q(1));
Mat2 const W(q(0), q(-1), q(1), q(0));

}  // namespace

TEST_CASE("points, charts and reduction") {
  CHECK(mobius(T, pt(3)) == pt(4));
  CHECK(mobius(W, pt(0)) == inf);
  CHECK(mobius(W, inf) == pt(0));
  CHECK(mobius(Mat2(q(5), q(0), q(0), q(1, 5)), pt(1)) == pt(25));
  CHECK(pt(1, 5).chart_coordinate(5) == 5);
  CHECK(pt(7).chart_coordinate(5) == 7);
  CHECK(inf.to_string() == "inf");
  CHECK(reduce_point(pt(27), 5, 2) == pt(2));
  CHECK(reduce_point(pt(1, 35), 5, 2) == pt(1, 10));
  CHECK(reduce_point(pt(1, 25), 5, 2) == inf);
  CHECK(reduce_point(inf, 5, 2) == inf);
  CHECK_THROWS_AS((void)inf.x(), Error);

  auto const b = proj_bases(5, 2);
  CHECK(b.size() == 30);
  CHECK(std::set<ProjPoint>(b.begin(), b.end()).size() == 30);
  for (auto const& x : b) {
    REQUIRE(reduce_point(x, 5, 2) == x);
  }
  CHECK(proj_bases(5, 1).size() == 6);
}

TEST_CASE("act_proj examples") {
  for (auto const& c : test::classes(5, 2)) {
    CHECK(act_proj(T, ProjTruncType::near(pt(0), c), 5, 2) == ProjTruncType::near(pt(1), c));
  }
  auto const w0 = act_proj(W, ProjTruncType::near(pt(0), cls(1)), 5, 2);
  CHECK(w0 == act_oracle(W, ProjTruncType::near(pt(0), cls(1)), 2));
  CHECK(w0.point() == inf);
  CHECK(w0.cls() == class_of(q(-1), 5, 2));
  CHECK(act_proj(W, ProjTruncType::realized(inf), 5, 2) == ProjTruncType::realized(pt(0)));
  CHECK_THROWS_AS(act_proj(Mat2(q(2), q(0), q(0), q(1)), ProjTruncType::realized(inf), 5, 2), Error);
}

TEST_CASE("act_proj agrees with pushing a realization") {
  auto g = test::rng(41);
  for (int n : {1, 2, 3}) {
    ProjLevel const L(level(n, 2));
    std::vector<Mat2> moves = sl2_generators(L.config());
    for (int i = 0; i < 30; ++i) {
      moves.push_back(verify::random_unimodular(5, g));
    }
    for (auto const& m : moves) {
      for (auto const& t : L.all_types()) {
        CAPTURE(t);
        REQUIRE(act_proj(m, t, 5, n) == act_oracle(m, t, n));
      }
    }
  }
}

TEST_CASE("act_proj is a group action") {
  ProjLevel const   L(level(2, 2));
  auto const        gens = sl2_generators(L.config());
  for (auto const& a : gens) {
    for (auto const& b : gens) {
      for (auto const& t : L.all_types()) {
        REQUIRE(act_proj(a * b, t, 5, 2) == act_proj(a, act_proj(b, t, 5, 2), 5, 2));
      }
    }
  }
  auto g = test::rng(42);
  for (int i = 0; i < 1000; ++i) {
    Mat2 const a = verify::random_unimodular(5, g);
    Mat2 const b = verify::random_unimodular(5, g);
    auto const& t = L.all_types()[static_cast<std::size_t>(i) % L.all_types().size()];
    REQUIRE(act_proj(a * b, t, 5, 2) == act_proj(a, act_proj(b, t, 5, 2), 5, 2));
    REQUIRE(act_proj(inverse(a), act_proj(a, t, 5, 2), 5, 2) == t);
  }
}

TEST_CASE("realize and classify round trip") {
  for (int n : {1, 2, 3}) {
    ProjLevel const L(level(n, 2));
    for (auto const& t : L.all_types()) {
      REQUIRE(classify_proj(realize_proj(t, 40, n), L.bases(), 2, 5, n) == t);
    }
  }
}

TEST_CASE("p0_star examples") {
  auto const      cfg = level(2, 2);
  ProjLevel const L(cfg);
  auto const      lad   = ScaleLadder::standard(cfg);
  auto const      id    = ResidueClass::identity(5, 2);
  Rational const  alpha = realize(TruncType1::near(Rational(0), id), 0, lad);
  Rational const  beta  = realize(TruncType1::at_infinity(id), 1, lad);

  CHECK(L.p0_star(ProjTruncType::realized(pt(0)), lad) == ProjTruncType::near(inf, id));
  CHECK(class_of(Rational(1 / (alpha * beta)), 5, 2) == id);
  CHECK(L.p0_star(ProjTruncType::realized(inf), lad) == ProjTruncType::realized(inf));

  // image of x under [[alpha, beta], [0, 1/alpha]] is alpha^2 x + alpha beta
  for (auto const& t : L.all_types()) {
    if (t.infinity_based()) {
      continue;
    }
    ProjPoint const x = realize_proj(t, lad.rung(2), 2);
    Rational const  X = alpha * alpha * x.x() + alpha * beta;
    auto const      r = L.p0_star(t, lad);
    CAPTURE(t);
    REQUIRE(r == ProjTruncType::near(inf, class_of(Rational(1 / X), 5, 2)));
  }
  auto const t = ProjTruncType::near(pt(3), cls(2));
  CHECK(L.p0_star(t, lad).infinity_based());
  CHECK(L.p0_star(t, lad) == L.p0_star(t, lad.with_doubled_gap()));
}

TEST_CASE("q0_star examples") {
  auto const      cfg = level(2, 2);
  ProjLevel const L(cfg);
  auto const      lad = ScaleLadder::standard(cfg);
  auto const      q0  = L.q0_star(ProjTruncType::realized(inf), lad);
  CHECK(q0 == ProjTruncType::near(inf, ResidueClass::identity(5, 2)));
  CHECK(L.q0_star(ProjTruncType::near(inf, cls(1)), lad) == q0);
  CHECK(L.q0_star(ProjTruncType::near(inf, cls(10)), lad) == q0);
  for (auto const& c : test::classes(5, 2)) {
    auto const t = ProjTruncType::near(inf, c);
    REQUIRE(L.q0_star(t, lad) == q0);
    REQUIRE(L.q0_mechanism(t, lad));
  }
}

TEST_CASE("collapse examples") {
  for (auto [n, w, states] : {std::tuple{1, 1, 12}, std::tuple{2, 2, 150}, std::tuple{3, 2, 120}}) {
    auto const cfg = level(n, w);
    auto const r   = collapse_check(cfg, ScaleLadder::standard(cfg));
    CAPTURE(n);
    CAPTURE(w);
    CHECK(r.states == static_cast<std::size_t>(states));
    CHECK(r.p0_at_infinity);
    CHECK(r.q0_constant);
    CHECK(r.mechanism);
    CHECK(r.collapsed);
    REQUIRE(r.collapsed_type.has_value());
    CHECK(*r.collapsed_type == ProjTruncType::near(inf, ResidueClass::identity(5, n)));
    auto const d = collapse_check(cfg, ScaleLadder::standard(cfg).with_doubled_gap());
    CHECK(d.collapsed_type == r.collapsed_type);
  }
}

TEST_CASE("finite-level minimality and proximality") {
  auto const a = minimality_proximality_report(level(2, 2), ScaleLadder::standard(level(2, 2)));
  CHECK(a.states == 120);
  CHECK(a.strongly_connected);
  CHECK(a.proximal);
  auto const b = minimality_proximality_report(level(1, 1), ScaleLadder::standard(level(1, 1)));
  CHECK(b.states == 6);
  CHECK(b.strongly_connected);
  CHECK(b.proximal);
}

TEST_CASE("the flow projects onto P1 base points") {
  GlobalConfig cfg;
  cfg.matrix_level_m  = 1;
  cfg.residue_level_n = 2;
  GFlow const F(cfg);
  auto        g = test::rng(43);
  std::uniform_int_distribution<std::size_t>       pick(0, F.size() - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int i = 0; i < 400; ++i) {
    pairs.emplace_back(pick(g), pick(g));
  }
  CHECK(projection_mismatches(F, pairs, ScaleLadder::standard(cfg)) == 0);
}
