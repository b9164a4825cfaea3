#include "support.hpp"

#include <set>

using namespace padyn;
using padyn::test::pw;
using padyn::test::q;

namespace {

ResidueClass cls(long rep, std::uint64_t p = 5, int n = 2) { return class_of(q(rep), p, n); }

// Witness oracle for the exact actions: realize, apply, classify against the
// image base point.
TruncType1 oracle_add(Rational const& b, TruncType1 const& t, ScaleLadder const& L, std::uint64_t p, int n) {
  Rational const        y = realize(t, 1, L) + b;
  std::vector<Rational> bases;
  if (!t.is_at_infinity()) {
    bases.push_back(Rational(t.base() + b));
  }
  return classify(y, bases, L.window(), p, n);
}

TruncType1 oracle_mul(Rational const& g, TruncType1 const& t, ScaleLadder const& L, std::uint64_t p, int n) {
  Rational const        y = realize(t, 1, L) * g;
  std::vector<Rational> bases;
  if (!t.is_at_infinity()) {
    bases.push_back(Rational(t.base() * g));
  }
  return classify(y, bases, L.window(), p, n);
}

// classify reads a Near point beyond the window as at infinity.
TruncType1 seen_through_window(TruncType1 const& t, long w) {
  if (t.is_near() && t.base() != 0 && valuation(t.base(), 5) < -w) {
    return TruncType1::at_infinity(class_of(t.base(), 5, 2));
  }
  return t;
}

}  // namespace

TEST_CASE("act_add examples") {
  GlobalConfig const cfg;
  auto const         L = ScaleLadder::standard(cfg);
  CHECK(act_add(q(3), TruncType1::at_infinity(cls(1))) == TruncType1::at_infinity(cls(1)));
  for (auto const& t : {TruncType1::realized(q(4)), TruncType1::near(q(7), cls(2)), TruncType1::at_infinity(cls(5))}) {
    CHECK(act_add(q(0), t) == t);
  }
  auto const t = TruncType1::near(q(7), cls(2));
  CHECK(oracle_add(q(3), t, L, 5, 2) == TruncType1::near(q(10), cls(2)));
  CHECK(act_add(q(3), t) == TruncType1::near(q(10), cls(2)));
}

TEST_CASE("act_mul examples") {
  GlobalConfig const cfg;
  auto const         L = ScaleLadder::standard(cfg);
  auto const         t0 = TruncType1::near(q(0), cls(1));
  CHECK(oracle_mul(q(5), t0, L, 5, 2) == TruncType1::near(q(0), cls(5)));
  CHECK(act_mul(q(5), t0) == TruncType1::near(q(0), cls(5)));
  CHECK(act_mul(q(1), TruncType1::at_infinity(cls(10))) == TruncType1::at_infinity(cls(10)));
  auto const t1 = TruncType1::near(q(1), cls(1));
  CHECK(oracle_mul(q(2), t1, L, 5, 2) == TruncType1::near(q(2), cls(2)));
  CHECK(act_mul(q(2), t1) == TruncType1::near(q(2), cls(2)));
  CHECK_THROWS_AS(act_mul(q(0), t1), Error);
}

TEST_CASE("symbolic actions agree with the witness oracle") {
  for (long gap : {8L, 16L}) {
    GlobalConfig cfg;
    cfg.ladder_gap = gap;
    auto const L = ScaleLadder::standard(cfg);
    auto const G = ResidueGroup::build(5, 2);
    auto       g = test::rng(static_cast<std::uint64_t>(gap));
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> which(0, G.order() - 1);
    for (int i = 0; i < 1000; ++i) {
      Rational const     b    = test::random_rational(g);
      Rational const     a    = test::random_rational(g, 1000);
      ResidueClass const c    = G.element(which(g));
      int const          k    = kind(g);
      TruncType1 const   t    = k == 0 ? TruncType1::realized(a) : k == 1 ? TruncType1::near(a, c) : TruncType1::at_infinity(c);
      REQUIRE(seen_through_window(act_add(b, t), L.window()) == oracle_add(b, t, L, 5, 2));
      if (b != 0) {
        REQUIRE(seen_through_window(act_mul(b, t), L.window()) == oracle_mul(b, t, L, 5, 2));
      }
    }
  }
}

TEST_CASE("closure transitions match extreme-valuation sampling") {
  GlobalConfig const cfg;
  long const         N = cfg.valuation_window_w + 2 * cfg.residue_level_n + 5;
  auto const         G = ResidueGroup::build(5, 2);

  AffineModel const  gm(AffineGroup::Gm, cfg);
  auto const         from_one = closure_transitions(TruncType1::realized(q(1)), gm);
  std::set<TruncType1> const s1(from_one.begin(), from_one.end());
  for (auto const& c : G.elements()) {
    for (long sgn : {1L, -1L}) {
      Rational const g = Rational(c.representative()) * pw(5, sgn * N);
      CHECK(s1.count(gm.act(g, TruncType1::realized(q(1)))) == 1);
    }
  }

  AffineModel const  ga(AffineGroup::Ga, cfg);
  auto const         from_zero = closure_transitions(TruncType1::realized(q(0)), ga);
  std::set<TruncType1> const s0(from_zero.begin(), from_zero.end());
  std::set<TruncType1> hit;
  for (auto const& c : G.elements()) {
    Rational const b   = Rational(c.representative()) * pw(5, -N);
    auto const     img = ga.act(b, TruncType1::realized(q(0)));
    CHECK(img == TruncType1::at_infinity(class_of(b, 5, 2)));
    CHECK(s0.count(img) == 1);
    hit.insert(img);
  }
  CHECK(hit.size() == 4);

  for (auto const& c : G.elements()) {
    for (auto const& t : closure_transitions(TruncType1::near(q(0), c), gm)) {
      CHECK(t.is_near());
      CHECK(t.base() == 0);
    }
  }
  CHECK(closure_transitions(TruncType1::at_infinity(cls(1)), ga).empty());
}

TEST_CASE("minimal subflow examples") {
  GlobalConfig cfg;
  auto const   gm = minimal_subflows(AffineGroup::Gm, cfg);
  REQUIRE(gm.minimal_subflows.size() == 2);
  for (auto const& m : gm.minimal_subflows) {
    CHECK(m.size() == 4);
  }
  for (bool b : gm.transitive_under_classes) {
    CHECK(b);
  }
  for (auto const& [t, f] : gm.fgeneric) {
    CHECK(f == (t.is_at_infinity() || (t.is_near() && t.base() == 0)));
  }

  cfg.residue_level_n = 1;
  auto const ga = minimal_subflows(AffineGroup::Ga, cfg);
  REQUIRE(ga.minimal_subflows.size() == 1);
  CHECK(ga.minimal_subflows.front().size() == 1);
  CHECK(ga.minimal_subflows.front().front().is_at_infinity());

  cfg.residue_level_n    = 2;
  cfg.valuation_window_w = 1;
  auto const za = minimal_subflows(AffineGroup::ZpAdd, cfg);
  REQUIRE(za.minimal_subflows.size() == 1);
  CHECK(za.minimal_subflows.front().size() == 20);
  std::set<TruncType1> const minimal(za.minimal_subflows.front().begin(), za.minimal_subflows.front().end());
  int inside = 0;
  for (auto const& o : za.orbits) {
    if (minimal.count(o.front()) != 0) {
      ++inside;
      CHECK(o.size() == 5);
      for (auto const& t : o) {
        CHECK(t.cls() == o.front().cls());
      }
    }
  }
  CHECK(inside == 4);
}

TEST_CASE("Ga minimal subflows are the AtInfinity singletons") {
  GlobalConfig cfg;
  auto const   ga = minimal_subflows(AffineGroup::Ga, cfg);
  CHECK(ga.minimal_subflows.size() == 4);
  for (auto const& m : ga.minimal_subflows) {
    REQUIRE(m.size() == 1);
    CHECK(m.front().is_at_infinity());
  }
  for (auto const& [t, f] : ga.fgeneric) {
    CHECK(f == t.is_at_infinity());
  }
  AffineModel const model(AffineGroup::Ga, cfg);
  auto              g = test::rng(3);
  for (int i = 0; i < 1000; ++i) {
    Rational const b = test::random_rational(g);
    for (auto const& c : test::classes(5, 2)) {
      REQUIRE(model.act(b, TruncType1::at_infinity(c)) == TruncType1::at_infinity(c));
    }
  }
}

TEST_CASE("Zp-mul orbits follow p_{a, aC}") {
  GlobalConfig const cfg;
  auto const         r = minimal_subflows(AffineGroup::ZpMul, cfg);
  REQUIRE(r.minimal_subflows.size() == 1);
  std::set<TruncType1> const minimal(r.minimal_subflows.front().begin(), r.minimal_subflows.front().end());
  for (auto const& o : r.orbits) {
    if (minimal.count(o.front()) == 0) {
      continue;
    }
    auto const twist = inverse(class_of(o.front().base(), 5, 2)) * o.front().cls();
    for (auto const& t : o) {
      CHECK(inverse(class_of(t.base(), 5, 2)) * t.cls() == twist);
    }
  }
}

TEST_CASE("orbits partition the state space") {
  GlobalConfig const cfg;
  for (auto g : {AffineGroup::Ga, AffineGroup::Gm, AffineGroup::ZpAdd, AffineGroup::ZpMul}) {
    AffineModel const model(g, cfg);
    auto const        r = minimal_subflows(model);
    std::set<TruncType1> seen;
    std::size_t          total = 0;
    for (auto const& o : r.orbits) {
      total += o.size();
      seen.insert(o.begin(), o.end());
    }
    CHECK(total == model.states().size());
    CHECK(seen.size() == model.states().size());
    // minimal subflows are closed under the generators
    for (auto const& m : r.minimal_subflows) {
      std::set<TruncType1> const ms(m.begin(), m.end());
      for (auto const& t : m) {
        for (auto const& x : model.generators()) {
          CHECK(ms.count(model.act(x, t)) == 1);
        }
        for (auto const& u : closure_transitions(t, model)) {
          CHECK(ms.count(u) == 1);
        }
      }
    }
  }
}

TEST_CASE("group tags parse") {
  CHECK(parse_affine_group("zp-add") == AffineGroup::ZpAdd);
  CHECK(to_string(AffineGroup::Gm) == "gm");
  CHECK_THROWS_AS(parse_affine_group("sl2"), Error);
}
