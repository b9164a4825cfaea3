#include "padyn/sl2.hpp"

#include <algorithm>
#include <set>

#include "padyn/kernels.hpp"

namespace padyn {

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  Integer r;
  Integer aa(static_cast<unsigned long>(a)), mm(static_cast<unsigned long>(m));
  mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t());
  return r.get_ui();
}

}  // namespace

// ---------------------------------------------------------------------------
// KLevel
// ---------------------------------------------------------------------------

KLevel::KLevel(std::uint64_t p, int m) : p_(p), m_(m) {
  if (m < 0 || m > GlobalConfig::kMaxMatrixLevel) {
    throw Error("matrix level out of range");
  }
  mod_ = static_cast<std::uint32_t>(power(p, static_cast<unsigned long>(m)).get_ui());
  std::uint64_t const M = mod_;
  if (M == 1) {
    elems_.push_back(KElem{{0, 0, 0, 0}});
  } else {
    // a a unit: d is forced. a not a unit: c must be a unit and b is forced.
    for (std::uint64_t a = 0; a < M; ++a) {
      for (std::uint64_t b = 0; b < M; ++b) {
        for (std::uint64_t c = 0; c < M; ++c) {
          if (a % p != 0) {
            std::uint64_t d = (1 + b * c) % M * inv_mod(a, M) % M;
            elems_.push_back(KElem{{std::uint32_t(a), std::uint32_t(b), std::uint32_t(c), std::uint32_t(d)}});
          } else if (c % p != 0 && b == 0) {
            std::uint64_t ci = inv_mod(c, M);
            for (std::uint64_t d = 0; d < M; ++d) {
              std::uint64_t bb = (a * d % M + M - 1) % M * ci % M;
              elems_.push_back(KElem{{std::uint32_t(a), std::uint32_t(bb), std::uint32_t(c), std::uint32_t(d)}});
            }
          }
        }
      }
    }
    std::sort(elems_.begin(), elems_.end());
  }
  index_.reserve(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    index_.emplace(key(elems_[i]), static_cast<int>(i));
  }
}

std::uint64_t KLevel::key(KElem const& k) const {
  std::uint64_t r = 0;
  for (auto x : k.e) {
    r = r * mod_ + x % mod_;
  }
  return r;
}

int KLevel::index_of(KElem const& k) const {
  auto it = index_.find(key(k));
  if (it == index_.end()) {
    throw Error("matrix is not in SL(2, Z/p^m)");
  }
  return it->second;
}

KElem KLevel::mul(KElem const& x, KElem const& y) const {
  std::uint64_t const M = mod_;
  auto at = [](KElem const& k, int i) { return static_cast<std::uint64_t>(k.e[i]); };
  KElem r;
  r.e[0] = static_cast<std::uint32_t>((at(x, 0) * at(y, 0) + at(x, 1) * at(y, 2)) % M);
  r.e[1] = static_cast<std::uint32_t>((at(x, 0) * at(y, 1) + at(x, 1) * at(y, 3)) % M);
  r.e[2] = static_cast<std::uint32_t>((at(x, 2) * at(y, 0) + at(x, 3) * at(y, 2)) % M);
  r.e[3] = static_cast<std::uint32_t>((at(x, 2) * at(y, 1) + at(x, 3) * at(y, 3)) % M);
  return r;
}

KElem KLevel::reduce(Mat2 const& t) const {
  KElem k;
  for (int i = 0; i < 4; ++i) {
    k.e[i] = static_cast<std::uint32_t>(reduce_mod(t.e[i], p_, static_cast<unsigned>(m_)).get_ui());
  }
  return k;
}

Mat2 KLevel::lift(KElem const& k) const {
  if (mod_ == 1) {
    return Mat2::identity();
  }
  auto     q = [](std::uint32_t x) { return Rational(static_cast<unsigned long>(x)); };
  Rational a = q(k.e[0]), b = q(k.e[1]), c = q(k.e[2]), d = q(k.e[3]);
  if (k.e[0] % p_ != 0) {
    return {a, b, c, Rational((1 + b * c) / a)};
  }
  return {a, Rational((a * d - 1) / c), c, d};
}

Mat2 perturbation(std::uint64_t p, long R) {
  Rational e = power_rational(p, R);
  return {Rational(1), e, e, Rational(1 + e * e)};
}

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

IwasawaTH iwasawa(Mat2 const& g, std::uint64_t p) {
  if (!is_sl2(g)) {
    throw Error("iwasawa: non-unimodular input (det " + format_rational(det(g)) + ")");
  }
  if (is_integral(g, p)) {
    return {g, BorelElem{}};
  }
  Rational const& g11 = g(0, 0);
  Rational const& g21 = g(1, 0);
  Mat2            t;
  if (valuation(g21, p) >= valuation(g11, p)) {
    t = Mat2(Rational(1), Rational(0), Rational(g21 / g11), Rational(1));
  } else {
    t = Mat2(Rational(g11 / g21), Rational(-1), Rational(1), Rational(0));
  }
  return {t, BorelElem::from_matrix(inverse(t) * g)};
}

IwasawaHT iwasawa_ht(Mat2 const& g, std::uint64_t p) {
  // g^-1 = t h pivots on the first column of g^-1, which is (g22, -g21).
  auto th = iwasawa(inverse(g), p);
  return {th.h.inverse(), inverse(th.t)};
}

bool in_borel_integral(Mat2 const& g, std::uint64_t p) {
  return is_sl2(g) && is_upper_triangular(g) && is_integral(g, p);
}

BorelRewrite lemma35_factor(BorelElem const& h, Mat2 const& t, std::uint64_t p, int m) {
  if (!is_sl2(t) || !is_integral(t, p)) {
    throw Error("lemma35_factor: t must lie in SL(2, Z_p)");
  }
  Rational const& a  = h.a;
  Rational const& c  = h.c;
  Rational const& u1 = t(0, 0);
  Rational const& u2 = t(0, 1);
  Rational const& u3 = t(1, 0);
  Rational const& u4 = t(1, 1);
  BorelRewrite   r;
  if (u3 == 0) {
    r.borel_branch = true;
    r.t_prime      = t;
    r.h_prime      = BorelElem::from_matrix(inverse(t) * h.matrix() * t);
  } else {
    Rational x = a * u1 + c * u3;
    if (x == 0) {
      throw Error("lemma35_factor: degenerate factorization (a u1 + c u3 = 0)");
    }
    r.t_prime = Mat2(Rational(1), Rational(0), Rational(u3 / (a * x)), Rational(1));
    r.h_prime = BorelElem(x, Rational(a * u2 + c * u4));
  }
  if (h.matrix() * t != r.t_prime * r.h_prime.matrix()) {
    throw Error("lemma35_factor: h t != t' h'");
  }
  r.congruent = congruent_identity(r.t_prime, p, m);
  return r;
}

ConjResult conj_stability(Mat2 const& t_small, long s, Mat2 const& g, std::uint64_t p, int m) {
  if (!congruent_identity(t_small, p, static_cast<int>(s))) {
    throw Error("conj_stability: t is not congruent to I mod p^" + std::to_string(s));
  }
  long const d = max_abs_valuation(g, p);
  if (s <= 2 * d + m) {
    throw Error("conj_stability: precondition s > 2 d(g) + m fails (s = " + std::to_string(s) +
                ", d(g) = " + std::to_string(d) + ")");
  }
  ConjResult r;
  r.conjugate = g * t_small * inverse(g);
  r.congruent = congruent_identity(r.conjugate, p, m);
  return r;
}

// ---------------------------------------------------------------------------
// GFlow
// ---------------------------------------------------------------------------

namespace {

unsigned vp(int n, std::uint64_t p) {
  unsigned v = 0;
  auto     x = static_cast<std::uint64_t>(n);
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Mat2 diag(Rational const& u) { return {u, Rational(0), Rational(0), Rational(1 / u)}; }

}  // namespace

std::vector<Mat2> sl2_generators(GlobalConfig const& cfg) {
  std::uint64_t const p = cfg.prime;
  std::vector<Mat2>   gens;
  gens.emplace_back(Rational(1), Rational(1), Rational(0), Rational(1));
  gens.emplace_back(Rational(1), Rational(0), Rational(1), Rational(1));
  auto k = std::max(static_cast<unsigned>(cfg.matrix_level_m + cfg.valuation_window_w),
                    2 * vp(cfg.residue_level_n, p) + 1);
  for (auto u : unit_group_generators(p, k)) {
    gens.push_back(diag(Rational(static_cast<unsigned long>(u))));
  }
  gens.push_back(diag(power_rational(p, 1)));
  gens.emplace_back(Rational(0), Rational(-1), Rational(1), Rational(0));
  return gens;
}

std::vector<Mat2> sl2_closure_generators(GlobalConfig const& cfg) {
  int const  n = cfg.residue_level_n;
  long const N = scale_exponent(cfg.matrix_level_m + cfg.valuation_window_w + 2L * n + 5, n);
  return {diag(power_rational(cfg.prime, N)), diag(power_rational(cfg.prime, -N))};
}

GFlow::GFlow(GlobalConfig const& cfg)
    : cfg_((cfg.validate(), cfg)),
      K_(cfg.prime, cfg.matrix_level_m),
      J_(ResidueGroup::build(cfg.prime, cfg.residue_level_n)),
      gens_(sl2_generators(cfg)),
      closure_(sl2_closure_generators(cfg)) {}

GFlowPoint GFlow::point(std::size_t i) const {
  std::size_t const nj = J_.elements().size();
  return {K_.element(i / nj), {J_.element(static_cast<int>(i % nj))}};
}

std::size_t GFlow::index_of(GFlowPoint const& x) const {
  return static_cast<std::size_t>(K_.index_of(x.k)) * J_.elements().size() +
         static_cast<std::size_t>(J_.index_of(x.j.a_class));
}

GFlowPoint GFlow::unit() const {
  return {K_.element(static_cast<std::size_t>(K_.identity_index())),
          BorelTruncType::identity(cfg_.prime, cfg_.residue_level_n)};
}

ResidueClass GFlow::gamma(KElem const& k) const {
  Mat2 l = K_.lift(k);
  return class_of(l(1, 0) != 0 ? l(1, 0) : l(0, 0), cfg_.prime, cfg_.residue_level_n);
}

GFlowPoint GFlow::star_witness(GFlowPoint const& x, GFlowPoint const& y, ScaleLadder const& ladder) const {
  std::uint64_t const p = cfg_.prime;
  int const           n = cfg_.residue_level_n;
  int const           m = cfg_.matrix_level_m;

  Mat2      t1 = K_.lift(x.k) * perturbation(p, scale_exponent(ladder.rung(0), n));
  BorelElem h1 = borel_witness(x.j, ladder, {0, 1});
  Mat2      t2 = K_.lift(y.k) * perturbation(p, scale_exponent(ladder.rung(2), n));
  BorelElem h2 = borel_witness(y.j, ladder, {2, 3});

  auto r = lemma35_factor(h1, t2, p, m);
  if (!r.borel_branch && !r.congruent) {
    throw Error("star_G: rewritten factor t' is not congruent to I mod p^m; ladder too compact");
  }
  // lemma35_factor checked h1 t2 = t' h' exactly, so t1 h1 t2 h2 = t h.
  Mat2      t = t1 * r.t_prime;
  BorelElem h = r.h_prime * h2;
  return {K_.reduce(t), classify_borel(h, p, n, ladder.window())};
}

GFlowPoint GFlow::star_symbolic(GFlowPoint const& x, GFlowPoint const& y) const {
  return {x.k, {x.j.a_class * gamma(y.k) * y.j.a_class}};
}

GFlowPoint GFlow::act_symbolic(Mat2 const& g, GFlowPoint const& x) const {
  auto f = iwasawa(g * K_.lift(x.k), cfg_.prime);
  return {K_.reduce(f.t), {class_of(f.h.a, cfg_.prime, cfg_.residue_level_n) * x.j.a_class}};
}

GFlowPoint GFlow::act_witness(Mat2 const& g, GFlowPoint const& x, ScaleLadder const& ladder) const {
  std::uint64_t const p = cfg_.prime;
  int const           n = cfg_.residue_level_n;
  Mat2      t = K_.lift(x.k) * perturbation(p, scale_exponent(ladder.rung(1), n));
  BorelElem h = borel_witness(x.j, ladder, {2, 3});
  auto      f = iwasawa(g * t, p);
  return {K_.reduce(f.t), classify_borel(f.h * h, p, n, ladder.window())};
}

// ---------------------------------------------------------------------------
// Flow graph, Ellis group
// ---------------------------------------------------------------------------

Digraph flow_graph(GFlow const& flow) {
  std::vector<Mat2> moves = flow.generators();
  moves.insert(moves.end(), flow.closure_generators().begin(), flow.closure_generators().end());
  auto const n    = flow.size();
  auto       step = kernels::parallel::build_transitions(n, moves.size(), [&](std::size_t s, std::size_t g) {
    return static_cast<int>(flow.index_of(flow.act_symbolic(moves[g], flow.point(s))));
  });
  Digraph graph(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t g = 0; g < moves.size(); ++g) {
      graph.add_edge(s, static_cast<std::size_t>(step[s * moves.size() + g]));
    }
  }
  return graph;
}

namespace {

std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
    }
  }
  return d;
}

bool group_axioms(std::vector<int> const& table, int order, int e) {
  auto at = [&](int i, int j) { return table[static_cast<std::size_t>(i) * order + j]; };
  for (int i = 0; i < order; ++i) {
    if (at(e, i) != i || at(i, e) != i) {
      return false;
    }
    bool inv = false;
    for (int j = 0; j < order && !inv; ++j) {
      inv = at(i, j) == e && at(j, i) == e;
    }
    if (!inv) {
      return false;
    }
  }
  return kernels::parallel::associative(table, order);
}

EllisReport ellis_core(GlobalConfig const& cfg, ScaleLadder const& ladder) {
  GFlow const flow(cfg);
  auto const& J = flow.J();
  int const   order = J.order();
  KElem const I     = flow.unit().k;

  EllisReport r;
  r.level_n = cfg.residue_level_n;
  r.level_m = cfg.matrix_level_m;
  r.order   = order;
  for (auto const& c : J.elements()) {
    r.elements.push_back({c});
  }
  auto point = [&](int i) { return GFlowPoint{I, r.elements[i]}; };
  auto index = [&](GFlowPoint const& x) {
    if (x.k != I) {
      throw Error("ellis: product left q0 * J");
    }
    return J.index_of(x.j.a_class);
  };
  r.table = kernels::parallel::build_table(order, [&](int i, int j) {
    return index(flow.star_witness(point(i), point(j), ladder));
  });
  auto symbolic = kernels::parallel::build_table(order, [&](int i, int j) {
    return index(flow.star_symbolic(point(i), point(j)));
  });
  r.symbolic_agrees = symbolic == r.table;
  r.group_axioms    = group_axioms(r.table, order, J.identity_index());
  r.iso_to_J        = build_J(cfg, ladder).table == r.table;

  std::set<int> images;
  for (int i = 0; i < order; ++i) {
    images.insert(index(flow.star_witness(flow.unit(), point(i), ladder)));
  }
  r.injective = static_cast<int>(images.size()) == order;
  return r;
}

}  // namespace

EllisReport ellis_group(GlobalConfig const& cfg, ScaleLadder const& ladder, bool with_tower) {
  EllisReport r = ellis_core(cfg, ladder);
  if (!with_tower) {
    return r;
  }
  int const                  n = cfg.residue_level_n;
  std::map<int, EllisReport> at;
  for (int d : divisors(n)) {
    GlobalConfig c    = cfg;
    c.residue_level_n = d;
    at.emplace(d, d == n ? r : ellis_core(c, ladder));
    auto const G     = ResidueGroup::build(cfg.prime, d);
    auto const shape = group_shape(G.table(), G.order(), G.identity_index());
    r.levels.push_back({d, G.order(), shape.cyclic, shape.element_orders,
                        induced_valuation_map(G).injective});
  }
  std::map<std::pair<int, int>, std::vector<int>> maps;
  for (int a : divisors(n)) {
    for (int b : divisors(a)) {
      auto const& src = at.at(a);
      auto const& dst = at.at(b);
      auto const  Gb  = ResidueGroup::build(cfg.prime, b);
      TowerMap    tm;
      tm.from = a;
      tm.to   = b;
      for (auto const& e : src.elements) {
        tm.images.push_back(Gb.index_of(project(e.a_class, b)));
      }
      tm.homomorphism = true;
      for (int i = 0; i < src.order; ++i) {
        for (int j = 0; j < src.order; ++j) {
          int lhs = tm.images[src.table[static_cast<std::size_t>(i) * src.order + j]];
          int rhs = dst.table[static_cast<std::size_t>(tm.images[i]) * dst.order + tm.images[j]];
          tm.homomorphism = tm.homomorphism && lhs == rhs;
        }
      }
      maps.emplace(std::make_pair(a, b), tm.images);
      r.tower.push_back(std::move(tm));
    }
  }
  r.tower_commutes = std::all_of(r.tower.begin(), r.tower.end(), [](auto const& t) { return t.homomorphism; });
  for (int a : divisors(n)) {
    for (int b : divisors(a)) {
      for (int c : divisors(b)) {
        auto const& ab = maps.at({a, b});
        auto const& bc = maps.at({b, c});
        auto const& ac = maps.at({a, c});
        for (std::size_t i = 0; i < ab.size(); ++i) {
          r.tower_commutes = r.tower_commutes && bc[ab[i]] == ac[i];
        }
      }
    }
  }
  return r;
}

MinimalFlowReport minimal_flow(GlobalConfig const& cfg, ScaleLadder const& ladder) {
  GFlow const       flow(cfg);
  MinimalFlowReport r;
  r.size               = flow.size();
  r.strongly_connected = strongly_connected(flow_graph(flow));
  r.idempotent         = flow.star_witness(flow.unit(), flow.unit(), ladder) == flow.unit();
  r.ellis              = ellis_group(cfg, ladder);
  return r;
}

}  // namespace padyn
