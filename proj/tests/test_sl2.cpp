#include "support.hpp"

#include <deque>

#include "padyn/verify.hpp"

using namespace padyn;
using padyn::test::pw;
using padyn::test::q;

namespace {

bool entries_integral(Mat2 const& a, std::uint64_t p) {
  for (auto const& x : a.e) {
    if (mpz_divisible_ui_p(x.get_den().get_mpz_t(), p) != 0) {
      return false;
    }
  }
  return true;
}

bool unimodular(Mat2 const& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) == 1; }

// a == I mod p^m, checked entrywise on a - I.
bool near_identity(Mat2 const& a, std::uint64_t p, int m) {
  Mat2 const d(Rational(a(0, 0) - 1), a(0, 1), a(1, 0), Rational(a(1, 1) - 1));
  for (auto const& x : d.e) {
    if (x != 0 && test::naive_valuation(x.get_num(), p) - test::naive_valuation(x.get_den(), p) < m) {
      return false;
    }
  }
  return entries_integral(a, p);
}

ResidueClass cls(long rep, int n = 2) { return class_of(q(rep), 5, n); }

GlobalConfig level(int m, int n) {
  GlobalConfig cfg;
  cfg.matrix_level_m  = m;
  cfg.residue_level_n = n;
  return cfg;
}

Mat2 const W(q(0), q(-1), q(1), q(0));

}  // namespace

TEST_CASE("iwasawa examples") {
  Mat2 const b(q(5), q(1, 25), q(0), q(1, 5));
  auto const fb = iwasawa(b, 5);
  CHECK(fb.t == Mat2::identity());
  CHECK(fb.h.matrix() == b);

  Mat2 const g(q(1), q(0), q(1, 5), q(1));
  auto const f = iwasawa(g, 5);
  CHECK(f.t == Mat2(q(5), q(-1), q(1), q(0)));
  CHECK(f.h.matrix() == Mat2(q(1, 5), q(1), q(0), q(5)));
  CHECK(f.t * f.h.matrix() == g);

  Mat2 const k(q(2), q(3), q(1), q(2));
  auto const fk = iwasawa(k, 5);
  CHECK(fk.t == k);
  CHECK(fk.h == BorelElem());

  CHECK_THROWS_WITH_AS(iwasawa(Mat2(q(1), q(1), q(1), q(3)), 5), doctest::Contains("non-unimodular"), Error);
}

TEST_CASE("iwasawa reconstructs random unimodular matrices") {
  auto g = test::rng(31);
  for (std::uint64_t p : {3, 5, 7}) {
    for (int i = 0; i < 3000; ++i) {
      Mat2 const m = verify::random_unimodular(p, g);
      REQUIRE(unimodular(m));
      auto const th = iwasawa(m, p);
      REQUIRE(th.t * th.h.matrix() == m);
      REQUIRE(entries_integral(th.t, p));
      REQUIRE(unimodular(th.t));
      auto const ht = iwasawa_ht(m, p);
      REQUIRE(ht.h.matrix() * ht.t == m);
      REQUIRE(entries_integral(ht.t, p));
      REQUIRE(unimodular(ht.t));
    }
  }
}

TEST_CASE("B(Qp) meets SL(2, Zp) in B(Zp)") {
  auto g = test::rng(32);
  for (int i = 0; i < 3000; ++i) {
    Mat2 m = verify::random_unimodular(5, g);
    if (i % 3 == 0) {
      m = iwasawa(m, 5).h.matrix();
    }
    bool const borel    = m(1, 0) == 0;
    bool const integral = entries_integral(m, 5);
    REQUIRE(in_borel_integral(m, 5) == (borel && integral));
  }
  CHECK(in_borel_integral(Mat2(q(2), q(1, 3), q(0), q(1, 2)), 5));
  CHECK_FALSE(in_borel_integral(Mat2(q(5), q(0), q(0), q(1, 5)), 5));
  CHECK_FALSE(in_borel_integral(Mat2(q(2), q(1), q(1), q(1)), 5));
}

TEST_CASE("lemma35_factor against the closed form") {
  GlobalConfig const cfg;
  auto const         L = ScaleLadder::standard(cfg);
  auto const         J = test::classes(5, 2);
  KLevel const       K(5, 2);

  auto const h  = borel_witness({J[1]}, L);
  auto const rw = lemma35_factor(h, W, 5, 2);
  CHECK_FALSE(rw.borel_branch);
  CHECK(rw.t_prime == Mat2(q(1), q(0), Rational(1 / (h.a * h.c)), q(1)));
  CHECK(rw.h_prime == BorelElem(h.c, Rational(-h.a)));
  CHECK(rw.congruent);

  for (auto const& k : K.elements()) {
    Mat2 const t = K.lift(k);
    for (auto const& c : J) {
      auto const hc = borel_witness({c}, L);
      auto const r  = lemma35_factor(hc, t, 5, 2);
      REQUIRE(hc.matrix() * t == r.t_prime * r.h_prime.matrix());
      if (t(1, 0) == 0) {
        REQUIRE(r.borel_branch);
        REQUIRE(r.t_prime == t);
        REQUIRE(class_of(r.h_prime.a, 5, 2) == c);
      } else {
        Rational const x = hc.a * t(0, 0) + hc.c * t(1, 0);
        REQUIRE(r.t_prime == Mat2(q(1), q(0), Rational(t(1, 0) / (hc.a * x)), q(1)));
        REQUIRE(r.h_prime == BorelElem(x, Rational(hc.a * t(0, 1) + hc.c * t(1, 1))));
        REQUIRE(near_identity(r.t_prime, 5, 2));
        REQUIRE(r.congruent);
      }
    }
  }
  CHECK_THROWS_AS(lemma35_factor(h, Mat2(q(1), q(1, 5), q(0), q(1)), 5, 2), Error);
}

TEST_CASE("conj_stability examples") {
  Mat2 const t = Mat2(q(1), q(0), pw(5, 10), q(1));
  auto const same = conj_stability(t, 10, Mat2::identity(), 5, 2);
  CHECK(same.conjugate == t);

  auto const r = conj_stability(t, 10, Mat2(q(5), q(0), q(0), q(1, 5)), 5, 2);
  CHECK(r.conjugate == Mat2(q(1), q(0), pw(5, 8), q(1)));
  CHECK(r.congruent);

  auto const w = conj_stability(t, 10, W, 5, 9);
  CHECK(w.conjugate == Mat2(q(1), Rational(-pw(5, 10)), q(0), q(1)));
  CHECK(w.congruent);
  CHECK(near_identity(w.conjugate, 5, 10));
  CHECK_FALSE(near_identity(w.conjugate, 5, 11));

  CHECK_THROWS_WITH_AS(conj_stability(t, 10, Mat2(q(5), q(0), q(0), q(1, 5)), 5, 8), doctest::Contains("precondition"),
                       Error);
  CHECK_THROWS_AS(conj_stability(t, 11, Mat2::identity(), 5, 2), Error);
}

TEST_CASE("conjugation shifts the congruence level by at most 2 d(g)") {
  auto g = test::rng(33);
  for (int i = 0; i < 500; ++i) {
    Mat2 const m = verify::random_unimodular(5, g);
    long const d = max_abs_valuation(m, 5);
    long const s = 2 * d + 3;
    Mat2 const t = perturbation(5, s);
    REQUIRE(near_identity(t, 5, static_cast<int>(s)));
    auto const r = conj_stability(t, s, m, 5, 2);
    REQUIRE(r.conjugate == m * t * inverse(m));
    REQUIRE(r.congruent);
    REQUIRE(near_identity(r.conjugate, 5, 2));
  }
}

TEST_CASE("KLevel is SL(2, Z/p^m)") {
  for (auto [p, m] : {std::pair<std::uint64_t, int>{5, 1}, {3, 2}, {2, 3}, {7, 1}}) {
    KLevel const K(p, m);
    auto const   mod = static_cast<std::uint32_t>(K.modulus());
    // brute force count of det == 1 mod p^m
    std::size_t count = 0;
    for (std::uint32_t a = 0; a < mod; ++a) {
      for (std::uint32_t b = 0; b < mod; ++b) {
        for (std::uint32_t c = 0; c < mod; ++c) {
          for (std::uint32_t d = 0; d < mod; ++d) {
            count += (static_cast<std::uint64_t>(a) * d + mod * mod - static_cast<std::uint64_t>(b) * c) % mod == 1;
          }
        }
      }
    }
    CAPTURE(p);
    CAPTURE(m);
    CHECK(K.size() == count);
    for (std::size_t i = 0; i < K.size(); ++i) {
      Mat2 const l = K.lift(K.element(i));
      REQUIRE(unimodular(l));
      REQUIRE(entries_integral(l, p));
      REQUIRE(K.reduce(l) == K.element(i));
      REQUIRE(K.index_of(K.element(i)) == static_cast<int>(i));
    }
  }
  CHECK(KLevel(5, 0).size() == 1);
}

TEST_CASE("star_G examples") {
  auto const cfg = level(1, 2);
  GFlow const F(cfg);
  auto const  L = ScaleLadder::standard(cfg);
  auto const  I = F.unit().k;
  auto const  e = BorelTruncType::identity(5, 2);

  CHECK(F.star_witness(F.unit(), F.unit(), L) == F.unit());
  CHECK(F.star_witness({I, {cls(2)}}, {I, {cls(5)}}, L) == GFlowPoint{I, {cls(10)}});
  for (auto const& k : F.K().elements()) {
    REQUIRE(F.star_witness({k, e}, F.unit(), L) == GFlowPoint{k, e});
  }
}

TEST_CASE("star_G symbolic matches the witness path on samples at level (2, 4)") {
  auto const  cfg = level(2, 4);
  GFlow const F(cfg);
  auto const  L = ScaleLadder::standard(cfg);
  auto        g = test::rng(34);
  std::uniform_int_distribution<std::size_t> pick(0, F.size() - 1);
  for (int i = 0; i < 300; ++i) {
    auto const x = F.point(pick(g));
    auto const y = F.point(pick(g));
    REQUIRE(F.star_witness(x, y, L) == F.star_symbolic(x, y));
  }
}

TEST_CASE("act_witness matches act_symbolic on the level (1, 2) flow") {
  auto const  cfg = level(1, 2);
  GFlow const F(cfg);
  auto const  L = ScaleLadder::standard(cfg);
  std::vector<Mat2> moves = F.generators();
  moves.insert(moves.end(), F.closure_generators().begin(), F.closure_generators().end());
  for (std::size_t s = 0; s < F.size(); ++s) {
    for (auto const& m : moves) {
      REQUIRE(F.act_witness(m, F.point(s), L) == F.act_symbolic(m, F.point(s)));
    }
  }
}

TEST_CASE("minimal_flow examples") {
  auto const L = [](GlobalConfig const& c) { return ScaleLadder::standard(c); };

  auto const a = minimal_flow(level(1, 1), L(level(1, 1)));
  CHECK(a.size == 120);
  CHECK(a.strongly_connected);
  CHECK(a.idempotent);

  auto const b = minimal_flow(level(1, 2), L(level(1, 2)));
  CHECK(b.size == 480);
  CHECK(b.strongly_connected);
  CHECK(b.idempotent);

  auto const c = minimal_flow(level(0, 1), L(level(0, 1)));
  CHECK(c.size == 1);
  CHECK(c.strongly_connected);
}

TEST_CASE("the level (1, 2) flow is strongly connected by direct search") {
  GFlow const       F(level(1, 2));
  std::vector<Mat2> moves = F.generators();
  moves.insert(moves.end(), F.closure_generators().begin(), F.closure_generators().end());
  std::size_t const              n = F.size();
  std::vector<std::vector<std::size_t>> fwd(n);
  std::vector<std::vector<std::size_t>> bwd(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (auto const& m : moves) {
      std::size_t const t = F.index_of(F.act_symbolic(m, F.point(s)));
      fwd[s].push_back(t);
      bwd[t].push_back(s);
    }
  }
  auto reach = [&](std::vector<std::vector<std::size_t>> const& adj) {
    std::vector<bool>       seen(n);
    std::deque<std::size_t> queue{0};
    seen[0]           = true;
    std::size_t count = 1;
    while (!queue.empty()) {
      auto s = queue.front();
      queue.pop_front();
      for (auto t : adj[s]) {
        if (!seen[t]) {
          seen[t] = true;
          ++count;
          queue.push_back(t);
        }
      }
    }
    return count;
  };
  CHECK(reach(fwd) == n);
  CHECK(reach(bwd) == n);
}

TEST_CASE("ellis_group examples") {
  auto const one = ellis_group(level(1, 1), ScaleLadder::standard(level(1, 1)));
  CHECK(one.order == 1);
  CHECK(one.group_axioms);

  auto const two = ellis_group(level(1, 2), ScaleLadder::standard(level(1, 2)));
  CHECK(two.order == 4);
  CHECK(two.symbolic_agrees);
  CHECK(two.group_axioms);
  CHECK(two.iso_to_J);
  CHECK(two.injective);
  CHECK(two.table == ResidueGroup::build(5, 2).table());

  auto const three = ellis_group(level(1, 3), ScaleLadder::standard(level(1, 3)));
  CHECK(three.order == 3);
  CHECK(three.group_axioms);
  CHECK(three.iso_to_J);
  auto const shape = group_shape(three.table, three.order, ResidueGroup::build(5, 3).identity_index());
  CHECK(shape.cyclic);
  CHECK(three.tower_commutes);
  bool found = false;
  for (auto const& tm : three.tower) {
    if (tm.from == 3 && tm.to == 1) {
      found = true;
      CHECK(tm.homomorphism);
      CHECK(tm.images == std::vector<int>{0, 0, 0});
    }
  }
  CHECK(found);
}

TEST_CASE("ellis tower at n = 4 commutes and is homomorphic") {
  auto const r = ellis_group(level(1, 4), ScaleLadder::standard(level(1, 4)));
  CHECK(r.order == 16);
  CHECK(r.group_axioms);
  CHECK(r.iso_to_J);
  CHECK(r.tower_commutes);
  CHECK(r.levels.size() == 3);
  for (auto const& tm : r.tower) {
    CAPTURE(tm.from);
    CAPTURE(tm.to);
    CHECK(tm.homomorphism);
  }
}
