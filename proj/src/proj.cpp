#include "padyn/proj.hpp"

#include <algorithm>
#include <set>

#include "padyn/kernels.hpp"

namespace padyn {

Rational const& ProjPoint::x() const {
  if (inf_) {
    throw Error("the point at infinity has no affine coordinate");
  }
  return x_;
}

bool ProjPoint::affine_chart(std::uint64_t p) const { return !inf_ && valuation(x_, p) >= 0; }

Rational ProjPoint::chart_coordinate(std::uint64_t p) const {
  if (inf_) {
    return Rational(0);
  }
  if (affine_chart(p)) {
    return x_;
  }
  return Rational(1 / x_);
}

std::string ProjPoint::to_string() const { return inf_ ? std::string("inf") : format_rational(x_); }

ProjPoint from_chart(bool affine, Rational const& z) {
  if (affine) {
    return ProjPoint::finite(z);
  }
  if (z == 0) {
    return ProjPoint::infinity();
  }
  return ProjPoint::finite(Rational(1 / z));
}

namespace {

// Homogeneous image of pt: g (x, 1) or g (1, 0).
std::pair<Rational, Rational> homogeneous(Mat2 const& g, ProjPoint const& pt) {
  if (pt.is_infinity()) {
    return {g(0, 0), g(1, 0)};
  }
  return {Rational(g(0, 0) * pt.x() + g(0, 1)), Rational(g(1, 0) * pt.x() + g(1, 1))};
}

}  // namespace

ProjPoint mobius(Mat2 const& g, ProjPoint const& pt) {
  auto [X, Y] = homogeneous(g, pt);
  if (Y == 0) {
    return ProjPoint::infinity();
  }
  return ProjPoint::finite(Rational(X / Y));
}

ResidueClass const& ProjTruncType::cls() const {
  if (!class_) {
    throw Error("a realized type has no class");
  }
  return *class_;
}

std::string ProjTruncType::to_string() const {
  if (!class_) {
    return "Realized(" + pt_.to_string() + ")";
  }
  return "Near(" + pt_.to_string() + ", " + class_->to_string() + ")";
}

std::vector<ProjPoint> proj_bases(std::uint64_t p, long w) {
  std::vector<ProjPoint> out;
  auto const             pw = power(p, static_cast<unsigned long>(w)).get_ui();
  for (unsigned long a = 0; a < pw; ++a) {
    out.push_back(ProjPoint::finite(Rational(static_cast<long>(a))));
  }
  out.push_back(ProjPoint::infinity());
  for (unsigned long b = 1; b < pw / p; ++b) {
    out.push_back(ProjPoint::finite(Rational(Integer(1), Integer(static_cast<unsigned long>(p * b)))));
  }
  return out;
}

ProjPoint reduce_point(ProjPoint const& pt, std::uint64_t p, long r) {
  bool const affine = pt.affine_chart(p);
  return from_chart(affine, Rational(reduce_mod(pt.chart_coordinate(p), p, static_cast<unsigned>(r))));
}

ProjTruncType act_proj(Mat2 const& g, ProjTruncType const& t, std::uint64_t p, int n) {
  if (!is_sl2(g)) {
    throw Error("act_proj: the matrix must have determinant 1");
  }
  ProjPoint const& pt  = t.point();
  ProjPoint        img = mobius(g, pt);
  if (t.is_realized()) {
    return ProjTruncType::realized(img);
  }
  bool const in_affine  = pt.affine_chart(p);
  bool const out_affine = img.affine_chart(p);
  Rational   z          = pt.chart_coordinate(p);
  Rational   X, Y;
  if (in_affine) {
    X = g(0, 0) * z + g(0, 1);
    Y = g(1, 0) * z + g(1, 1);
  } else {
    X = g(0, 0) + g(0, 1) * z;
    Y = g(1, 0) + g(1, 1) * z;
  }
  Rational const& den = out_affine ? Y : X;
  Rational        derivative(Rational(in_affine == out_affine ? 1 : -1) / (den * den));
  return ProjTruncType::near(img, class_of(derivative, p, n) * t.cls());
}

ProjPoint realize_proj(ProjTruncType const& t, long magnitude, int n) {
  if (t.is_realized()) {
    return t.point();
  }
  auto const&   c = t.cls();
  std::uint64_t p = c.prime();
  Rational      z = t.point().chart_coordinate(p) +
                    Rational(c.representative()) * power_rational(p, scale_exponent(magnitude, n));
  return from_chart(t.point().affine_chart(p), z);
}

ProjTruncType classify_proj(ProjPoint const& pt, std::vector<ProjPoint> const& bases, long w,
                            std::uint64_t p, int n) {
  for (auto const& b : bases) {
    if (b == pt) {
      return ProjTruncType::realized(pt);
    }
  }
  bool const       affine = pt.affine_chart(p);
  Rational const   z      = pt.chart_coordinate(p);
  ProjPoint const* hit    = nullptr;
  Rational         diff;
  for (auto const& b : bases) {
    if (b.affine_chart(p) != affine) {
      continue;
    }
    Rational d = z - b.chart_coordinate(p);
    if (valuation(d, p) > w) {
      if (hit != nullptr) {
        throw Error("window too coarse: " + pt.to_string() + " is close to both " + hit->to_string() +
                    " and " + b.to_string());
      }
      hit  = &b;
      diff = d;
    }
  }
  if (hit != nullptr) {
    return ProjTruncType::near(*hit, class_of(diff, p, n));
  }
  return ProjTruncType::realized(pt);
}

ProjLevel::ProjLevel(GlobalConfig const& cfg)
    : cfg_((cfg.validate(), cfg)),
      residues_(ResidueGroup::build(cfg.prime, cfg.residue_level_n)),
      bases_(proj_bases(cfg.prime, cfg.valuation_window_w)) {
  for (auto const& b : bases_) {
    all_.push_back(ProjTruncType::realized(b));
  }
  for (auto const& b : bases_) {
    for (auto const& c : residues_.elements()) {
      near_.push_back(ProjTruncType::near(b, c));
    }
  }
  all_.insert(all_.end(), near_.begin(), near_.end());
}

ProjTruncType ProjLevel::canonicalize(ProjTruncType const& t) const {
  ProjPoint b = reduce_point(t.point(), cfg_.prime, cfg_.valuation_window_w);
  return t.is_realized() ? ProjTruncType::realized(b) : ProjTruncType::near(b, t.cls());
}

namespace {

std::vector<ProjPoint> bases_for(ProjTruncType const& t, std::vector<ProjPoint> const& level) {
  if (std::find(level.begin(), level.end(), t.point()) != level.end()) {
    return level;
  }
  return {t.point(), ProjPoint::infinity()};
}

}  // namespace

ProjTruncType ProjLevel::p0_star(ProjTruncType const& t, ScaleLadder const& ladder) const {
  std::uint64_t const p     = cfg_.prime;
  int const           n     = cfg_.residue_level_n;
  auto const          id    = ResidueClass::identity(p, n);
  Rational            alpha = realize(TruncType1::near(Rational(0), id), 0, ladder);
  Rational            beta  = realize(TruncType1::at_infinity(id), 1, ladder);
  ProjPoint           x     = realize_proj(t, ladder.rung(2), n);
  Mat2                h(alpha, beta, Rational(0), Rational(1 / alpha));
  return classify_proj(mobius(h, x), bases_for(t, bases_), ladder.window(), p, n);
}

ProjTruncType ProjLevel::q0_star(ProjTruncType const& t, ScaleLadder const& ladder) const {
  std::uint64_t const p = cfg_.prime;
  int const           n = cfg_.residue_level_n;
  Mat2                P = perturbation(p, scale_exponent(ladder.rung(0), n));
  ProjPoint           x = realize_proj(t, ladder.rung(1), n);
  return classify_proj(mobius(P, x), bases_for(t, bases_), ladder.window(), p, n);
}

bool ProjLevel::q0_mechanism(ProjTruncType const& t, ScaleLadder const& ladder) const {
  ProjPoint x = realize_proj(t, ladder.rung(1), cfg_.residue_level_n);
  if (x.is_infinity()) {
    return true;
  }
  Mat2 s(Rational(1), Rational(0), Rational(1 / x.x()), Rational(1));
  return congruent_identity(s, cfg_.prime, cfg_.matrix_level_m);
}

CollapseReport collapse_check(GlobalConfig const& cfg, ScaleLadder const& ladder) {
  ProjLevel const level(cfg);
  auto const&     types = level.all_types();
  std::uint64_t const p = cfg.prime;
  long const          w = cfg.valuation_window_w;

  CollapseReport r;
  r.states         = types.size();
  r.p0_at_infinity = true;
  r.q0_constant    = true;
  r.mechanism      = true;
  std::set<ProjTruncType>    collapsed;
  std::set<ProjTruncType>    at_infinity_images;
  for (auto const& t : types) {
    auto p0 = level.p0_star(t, ladder);
    if (!t.infinity_based() && !(p0.is_near() && p0.infinity_based())) {
      r.p0_at_infinity = false;
    }
    collapsed.insert(level.q0_star(p0, ladder));
    if (t.infinity_based()) {
      at_infinity_images.insert(level.q0_star(t, ladder));
      r.mechanism = r.mechanism && level.q0_mechanism(t, ladder);
    }
    if (t.is_realized() && !t.infinity_based()) {
      Rational z = t.point().chart_coordinate(p);
      if (z != 0 && valuation(z, p) >= w - 1) {
        r.boundary_inputs.push_back(t);
      }
    }
  }
  r.q0_constant = at_infinity_images.size() <= 1;
  r.collapsed   = collapsed.size() <= 1;
  if (collapsed.size() == 1) {
    r.collapsed_type = *collapsed.begin();
  }
  return r;
}

ProjMinimalityReport minimality_proximality_report(GlobalConfig const& cfg, ScaleLadder const& ladder) {
  ProjLevel const level(cfg);
  auto const&     states = level.nonalgebraic();
  std::uint64_t const p  = cfg.prime;
  int const           n  = cfg.residue_level_n;

  std::vector<Mat2> moves = sl2_generators(cfg);
  for (auto const& g : sl2_closure_generators(cfg)) {
    moves.push_back(g);
  }
  std::map<ProjTruncType, int> index;
  for (std::size_t i = 0; i < states.size(); ++i) {
    index.emplace(states[i], static_cast<int>(i));
  }
  auto step = kernels::parallel::build_transitions(states.size(), moves.size(), [&](std::size_t s, std::size_t g) {
    return index.at(level.canonicalize(act_proj(moves[g], states[s], p, n)));
  });

  Digraph graph(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t g = 0; g < moves.size(); ++g) {
      graph.add_edge(s, static_cast<std::size_t>(step[s * moves.size() + g]));
    }
  }
  // Closure: Near(b, C) has every Near(b, C') in its orbit closure.
  std::map<ProjPoint, std::size_t> hubs;
  for (std::size_t s = 0; s < states.size(); ++s) {
    auto it = hubs.find(states[s].point());
    if (it == hubs.end()) {
      it = hubs.emplace(states[s].point(), graph.add_vertex()).first;
    }
    graph.add_edge(s, it->second);
    graph.add_edge(it->second, s);
  }

  ProjMinimalityReport r;
  r.states = states.size();
  std::vector<int> real(states.size());
  for (std::size_t i = 0; i < real.size(); ++i) {
    real[i] = static_cast<int>(i);
  }
  r.strongly_connected = strongly_connected_on(graph, real);
  auto collapse        = collapse_check(cfg, ladder);
  r.proximal           = collapse.collapsed && collapse.collapsed_type.has_value();
  r.collapsed_type     = collapse.collapsed_type;
  return r;
}

std::size_t projection_mismatches(GFlow const& flow, std::vector<std::pair<std::size_t, std::size_t>> const& pairs,
                                  ScaleLadder const& ladder) {
  auto const&         cfg = flow.config();
  std::uint64_t const p   = cfg.prime;
  int const           n   = cfg.residue_level_n;
  long const          r   = std::min<long>(cfg.matrix_level_m, cfg.valuation_window_w);
  auto const&         K   = flow.K();

  return kernels::parallel::count_failures(pairs.size(), [&](std::uint64_t i) {
    auto const x = flow.point(pairs[i].first);
    auto const y = flow.point(pairs[i].second);
    auto const xy  = flow.star_witness(x, y, ladder);
    auto const lhs = reduce_point(mobius(K.lift(xy.k), ProjPoint::infinity()), p, r);

    Mat2      t1 = K.lift(x.k) * perturbation(p, scale_exponent(ladder.rung(0), n));
    BorelElem h1 = borel_witness(x.j, ladder, {0, 1});
    Mat2      t2 = K.lift(y.k) * perturbation(p, scale_exponent(ladder.rung(2), n));
    ProjPoint z  = mobius(t2, ProjPoint::infinity());
    auto const rhs = reduce_point(mobius(t1 * h1.matrix(), z), p, r);
    return lhs == rhs;
  });
}

}  // namespace padyn
