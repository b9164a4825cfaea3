#include "support.hpp"

#include "padyn/kernels.hpp"

using namespace padyn;
using padyn::test::pw;
using padyn::test::q;

namespace {

ResidueClass cls(long rep, int n = 2) { return class_of(q(rep), 5, n); }

// Class of the diagonal of the exact matrix product of two witnesses.
ResidueClass product_class(BorelElem const& x, BorelElem const& y, int n) {
  Mat2 const m = x.matrix() * y.matrix();
  return class_of(m(0, 0), 5, n);
}

}  // namespace

TEST_CASE("product law matches matrix multiplication") {
  auto g = test::rng(21);
  for (int i = 0; i < 2000; ++i) {
    BorelElem const x(test::nonzero_rational(g), test::random_rational(g));
    BorelElem const y(test::nonzero_rational(g), test::random_rational(g));
    REQUIRE((x * y).matrix() == x.matrix() * y.matrix());
    REQUIRE((x * x.inverse()) == BorelElem());
    REQUIRE(BorelElem::from_matrix(x.matrix()) == x);
  }
  CHECK_THROWS_AS(BorelElem(q(0), q(1)), Error);
  CHECK_THROWS_AS(BorelElem::from_matrix(Mat2(q(1), q(0), q(1), q(1))), Error);
}

TEST_CASE("borel_witness examples") {
  auto const L  = ScaleLadder::from_rungs({20, 176, 1424, 11408}, 8, 2);
  auto const id = borel_witness(BorelTruncType::identity(5, 2), L);
  CHECK(id.a == pw(5, 20));
  CHECK(id.c == pw(5, -176));
  auto const two = borel_witness({cls(2)}, L);
  CHECK(two.a == 2 * pw(5, 20));
  CHECK(class_of(two.c, 5, 2) == cls(2));
  CHECK(valuation(two.c, 5) == -176);
  CHECK_THROWS_AS(borel_witness({cls(2)}, L, {1, 0}), Error);
  CHECK_THROWS_WITH_AS(borel_witness({cls(2)}, ScaleLadder::from_rungs({20}, 8, 2)),
                       doctest::Contains("ladder exhausted"), Error);
}

TEST_CASE("classify_borel rejects non-witnesses") {
  CHECK(classify_borel(BorelElem(pw(5, 20), pw(5, -176)), 5, 2, 2) == BorelTruncType::identity(5, 2));
  CHECK_THROWS_AS(classify_borel(BorelElem(pw(5, 20), q(0)), 5, 2, 2), Error);
  CHECK_THROWS_AS(classify_borel(BorelElem(q(1), pw(5, -176)), 5, 2, 2), Error);
  CHECK_THROWS_AS(classify_borel(BorelElem(pw(5, 20), q(1)), 5, 2, 2), Error);
  CHECK_THROWS_AS(classify_borel(BorelElem(pw(5, 20), pw(5, -10)), 5, 2, 2), Error);
  CHECK_THROWS_AS(classify_borel(BorelElem(pw(5, 20), 2 * pw(5, -176)), 5, 2, 2), Error);
}

TEST_CASE("star_B examples") {
  GlobalConfig const cfg;
  auto const         L = ScaleLadder::standard(cfg);
  auto const         e = BorelTruncType::identity(5, 2);
  CHECK(star_B(e, e, L) == e);
  auto const two  = BorelTruncType{cls(2)};
  auto const five = BorelTruncType{cls(5)};
  CHECK(product_class(borel_witness(two, L, {0, 1}), borel_witness(five, L, {2, 3}), 2) == cls(10));
  CHECK(star_B(two, five, L) == BorelTruncType{cls(10)});
  for (auto const& c : test::classes(5, 2)) {
    CHECK(star_B({c}, e, L) == BorelTruncType{c});
  }
}

TEST_CASE("left_translate_B examples") {
  GlobalConfig const cfg;
  auto const         L = ScaleLadder::standard(cfg);
  auto const         e = BorelTruncType::identity(5, 2);
  for (auto const& c : test::classes(5, 2)) {
    CHECK(left_translate_B(BorelElem(q(1), q(17)), {c}, L) == BorelTruncType{c});
  }
  CHECK(left_translate_B(BorelElem(q(5), q(0)), e, L) == BorelTruncType{cls(5)});
  CHECK(is_nth_power(q(4), 5, 2));
  CHECK(left_translate_B(BorelElem(q(4), q(0)), e, L) == e);
}

TEST_CASE("left translates by nth powers fix every type") {
  GlobalConfig cfg;
  auto         g = test::rng(22);
  for (int n = 1; n <= 4; ++n) {
    cfg.residue_level_n = n;
    auto const L        = ScaleLadder::standard(cfg);
    for (int i = 0; i < 50; ++i) {
      Rational y = test::nonzero_rational(g, 50);
      Rational a = 1;
      for (int k = 0; k < n; ++k) {
        a *= y;
      }
      BorelElem const h(a, test::random_rational(g, 1000));
      for (auto const& c : test::classes(5, n)) {
        REQUIRE(left_translate_B(h, {c}, L) == BorelTruncType{c});
      }
      BorelElem const h2(y, q(0));
      for (auto const& c : test::classes(5, n)) {
        REQUIRE(left_translate_B(h2, {c}, L) == BorelTruncType{class_of(y, 5, n) * c});
      }
    }
  }
}

TEST_CASE("build_J examples") {
  GlobalConfig cfg;
  for (int n : {1, 2, 3}) {
    cfg.residue_level_n = n;
    auto const r        = build_J(cfg, ScaleLadder::standard(cfg));
    auto const shape    = group_shape(r.table, r.order, ResidueGroup::build(5, n).identity_index());
    CAPTURE(n);
    CHECK(r.idempotent);
    CHECK(r.group_axioms);
    CHECK(r.iso_to_residue_group);
    if (n == 1) {
      CHECK(r.order == 1);
    } else if (n == 2) {
      CHECK(r.order == 4);
      CHECK(shape.element_orders == std::vector<int>{1, 2, 2, 2});
    } else {
      CHECK(r.order == 3);
      CHECK(shape.cyclic);
    }
  }
}

TEST_CASE("J is associative, isomorphic to the residue group and stable up to n = 6") {
  GlobalConfig cfg;
  for (int n = 1; n <= 6; ++n) {
    cfg.residue_level_n = n;
    auto const L        = ScaleLadder::standard(cfg);
    auto const r        = build_J(cfg, L);
    auto const G        = ResidueGroup::build(5, n);
    CAPTURE(n);
    CHECK(kernels::serial::associative(r.table, r.order));
    CHECK(r.table == G.table());
    // oracle: the diagonal class of the exact witness product
    for (int i = 0; i < r.order; ++i) {
      for (int j = 0; j < r.order; ++j) {
        auto const c = product_class(borel_witness(r.elements[i], L, {0, 1}), borel_witness(r.elements[j], L, {2, 3}), n);
        REQUIRE(r.table[static_cast<std::size_t>(i) * r.order + j] == G.index_of(c));
      }
    }
    CHECK(build_J(cfg, L.with_doubled_gap()).table == r.table);
    CHECK(build_J(cfg, L.scaled(2)).table == r.table);
  }
}
