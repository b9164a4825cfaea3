#include "padyn/flows.hpp"

#include <algorithm>
#include <set>

#include "padyn/graph.hpp"
#include "padyn/kernels.hpp"

namespace padyn {

std::string to_string(AffineGroup g) {
  switch (g) {
    case AffineGroup::Ga: return "ga";
    case AffineGroup::Gm: return "gm";
    case AffineGroup::ZpAdd: return "zp-add";
    case AffineGroup::ZpMul: return "zp-mul";
  }
  return "?";
}

AffineGroup parse_affine_group(std::string const& s) {
  if (s == "ga") return AffineGroup::Ga;
  if (s == "gm") return AffineGroup::Gm;
  if (s == "zp-add") return AffineGroup::ZpAdd;
  if (s == "zp-mul") return AffineGroup::ZpMul;
  throw Error("unknown group '" + s + "' (expected ga, gm, zp-add or zp-mul)");
}

TruncType1 act_add(Rational const& b, TruncType1 const& t) {
  switch (t.kind()) {
    case TypeKind::Realized: return TruncType1::realized(Rational(t.base() + b));
    case TypeKind::Near: return TruncType1::near(Rational(t.base() + b), t.cls());
    case TypeKind::AtInfinity: return t;
  }
  throw Error("unknown type kind");
}

TruncType1 act_mul(Rational const& g, TruncType1 const& t) {
  if (g == 0) {
    throw Error("act_mul: zero multiplier");
  }
  switch (t.kind()) {
    case TypeKind::Realized: return TruncType1::realized(Rational(g * t.base()));
    case TypeKind::Near: {
      auto const& c = t.cls();
      return TruncType1::near(Rational(g * t.base()), class_of(g, c.prime(), c.level()) * c);
    }
    case TypeKind::AtInfinity: {
      auto const& c = t.cls();
      return TruncType1::at_infinity(class_of(g, c.prime(), c.level()) * c);
    }
  }
  throw Error("unknown type kind");
}

namespace {

bool is_zp(AffineGroup g) { return g == AffineGroup::ZpAdd || g == AffineGroup::ZpMul; }

unsigned vp(int n, std::uint64_t p) {
  unsigned v = 0;
  auto     m = static_cast<std::uint64_t>(n);
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

}  // namespace

AffineModel::AffineModel(AffineGroup group, GlobalConfig const& cfg)
    : group_(group), cfg_(cfg), residues_(ResidueGroup::build(cfg.prime, cfg.residue_level_n)) {
  cfg_.validate();
  std::uint64_t const p = cfg_.prime;
  long const          w = cfg_.valuation_window_w;
  unsigned const      hensel = 2 * vp(cfg_.residue_level_n, p) + 1;

  if (is_zp(group_)) {
    zp_precision_ = std::max(static_cast<unsigned>(w), hensel);
    auto const m  = power(p, zp_precision_).get_ui();
    for (unsigned long a = 0; a < m; ++a) {
      if (group_ == AffineGroup::ZpMul && a % p == 0) {
        continue;
      }
      bases_.emplace_back(static_cast<long>(a));
    }
  } else {
    auto const m = power(p, static_cast<unsigned long>(2 * w + 1)).get_ui();
    Rational   scale = power_rational(p, -w);
    for (unsigned long k = 0; k < m; ++k) {
      bases_.push_back(Rational(Rational(static_cast<long>(k)) * scale));
    }
  }

  for (auto const& b : bases_) {
    if (group_ == AffineGroup::Gm && b == 0) {
      continue;
    }
    states_.push_back(TruncType1::realized(b));
  }
  for (auto const& b : bases_) {
    for (auto const& c : residues_.elements()) {
      states_.push_back(TruncType1::near(b, c));
    }
  }
  if (!is_zp(group_)) {
    for (auto const& c : residues_.elements()) {
      states_.push_back(TruncType1::at_infinity(c));
    }
  }
  for (std::size_t i = 0; i < states_.size(); ++i) {
    index_.emplace(states_[i], static_cast<int>(i));
  }

  switch (group_) {
    case AffineGroup::Ga:
      gens_ = {Rational(1), power_rational(p, -w)};
      break;
    case AffineGroup::Gm:
      for (auto u : unit_group_generators(p, std::max(static_cast<unsigned>(2 * w + 1), hensel))) {
        gens_.emplace_back(static_cast<unsigned long>(u));
      }
      gens_.push_back(power_rational(p, 1));
      gens_.push_back(power_rational(p, -1));
      break;
    case AffineGroup::ZpAdd:
      gens_ = {Rational(1)};
      break;
    case AffineGroup::ZpMul:
      for (auto u : unit_group_generators(p, zp_precision_)) {
        gens_.emplace_back(static_cast<unsigned long>(u));
      }
      break;
  }
}

int AffineModel::index_of(TruncType1 const& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) {
    throw Error(t.to_string() + " is not a state of the " + to_string(group_) + " model");
  }
  return it->second;
}

Rational AffineModel::reduce_base(Rational const& a) const {
  std::uint64_t const p = cfg_.prime;
  if (is_zp(group_)) {
    return Rational(reduce_mod(a, p, zp_precision_));
  }
  long const w = cfg_.valuation_window_w;
  Integer    k = reduce_mod(Rational(a * power_rational(p, w)), p, static_cast<unsigned>(2 * w + 1));
  return Rational(Rational(k) * power_rational(p, -w));
}

TruncType1 AffineModel::canonicalize(TruncType1 const& t) const {
  std::uint64_t const p = cfg_.prime;
  int const           n = cfg_.residue_level_n;
  long const          w = cfg_.valuation_window_w;
  switch (t.kind()) {
    case TypeKind::AtInfinity: return t;
    case TypeKind::Realized: {
      Rational const& x = t.base();
      if (!is_zp(group_) && x != 0 && valuation(x, p) < -w) {
        return TruncType1::at_infinity(class_of(x, p, n));
      }
      Rational b = reduce_base(x);
      if (group_ == AffineGroup::Gm && b == 0 && x != 0) {
        // A nonzero point finer than the window is seen as infinitesimal.
        return TruncType1::near(Rational(0), class_of(x, p, n));
      }
      return TruncType1::realized(b);
    }
    case TypeKind::Near: {
      Rational const& a = t.base();
      if (!is_zp(group_) && a != 0 && valuation(a, p) < -w) {
        return TruncType1::at_infinity(class_of(a, p, n));
      }
      return TruncType1::near(reduce_base(a), t.cls());
    }
  }
  throw Error("unknown type kind");
}

TruncType1 AffineModel::act(Rational const& g, TruncType1 const& t) const {
  bool const additive = group_ == AffineGroup::Ga || group_ == AffineGroup::ZpAdd;
  return canonicalize(additive ? act_add(g, t) : act_mul(g, t));
}

namespace {

enum class Family { None, AllNearAndInfinity, NearZero, Infinity, AllNear };

Family closure_family(TruncType1 const& t, AffineGroup g) {
  switch (g) {
    case AffineGroup::Ga:
      return t.is_at_infinity() ? Family::None : Family::AllNearAndInfinity;
    case AffineGroup::Gm:
      if (t.is_at_infinity()) {
        return Family::Infinity;
      }
      if (t.is_near() && t.base() == 0) {
        return Family::NearZero;
      }
      return Family::AllNearAndInfinity;
    case AffineGroup::ZpAdd:
    case AffineGroup::ZpMul: return Family::AllNear;
  }
  return Family::None;
}

bool in_family(TruncType1 const& t, Family f) {
  switch (f) {
    case Family::None: return false;
    case Family::AllNearAndInfinity: return !t.is_realized();
    case Family::NearZero: return t.is_near() && t.base() == 0;
    case Family::Infinity: return t.is_at_infinity();
    case Family::AllNear: return t.is_near();
  }
  return false;
}

}  // namespace

std::vector<TruncType1> closure_transitions(TruncType1 const& t, AffineModel const& model) {
  Family const            f = closure_family(t, model.group());
  std::vector<TruncType1> out;
  for (auto const& s : model.states()) {
    if (in_family(s, f)) {
      out.push_back(s);
    }
  }
  return out;
}

AffineFlowReport minimal_subflows(AffineModel const& model) {
  auto const& states = model.states();
  auto const& gens   = model.generators();
  auto const  n      = states.size();

  auto step = kernels::parallel::build_transitions(n, gens.size(), [&](std::size_t s, std::size_t g) {
    return model.index_of(model.act(gens[g], states[s]));
  });

  Digraph action(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      action.add_edge(s, static_cast<std::size_t>(step[s * gens.size() + g]));
    }
  }

  // Closure families enter through one hub vertex each, so the graph stays
  // linear in the number of states.
  Digraph full = action;
  std::map<Family, std::size_t> hubs;
  for (std::size_t s = 0; s < n; ++s) {
    Family f = closure_family(states[s], model.group());
    if (f == Family::None) {
      continue;
    }
    auto it = hubs.find(f);
    if (it == hubs.end()) {
      std::size_t h = full.add_vertex();
      for (std::size_t t = 0; t < n; ++t) {
        if (in_family(states[t], f)) {
          full.add_edge(h, t);
        }
      }
      it = hubs.emplace(f, h).first;
    }
    full.add_edge(s, it->second);
  }

  AffineFlowReport report;
  report.group       = model.group();
  report.state_count = n;
  for (auto const& comp : sink_components(full)) {
    std::vector<TruncType1> flow;
    for (int v : comp) {
      if (static_cast<std::size_t>(v) < n) {
        flow.push_back(states[v]);
      }
    }
    if (!flow.empty()) {
      report.minimal_subflows.push_back(std::move(flow));
    }
  }
  for (auto const& comp : components(action)) {
    std::vector<TruncType1> orbit;
    for (int v : comp) {
      orbit.push_back(states[v]);
    }
    report.orbits.push_back(std::move(orbit));
  }
  std::set<TruncType1> generic;
  for (auto const& flow : report.minimal_subflows) {
    generic.insert(flow.begin(), flow.end());
  }
  for (auto const& s : states) {
    report.fgeneric.emplace(s, generic.count(s) != 0);
  }
  for (auto const& flow : report.minimal_subflows) {
    if (model.group() != AffineGroup::Gm) {
      report.transitive_under_classes.push_back(true);
      continue;
    }
    std::set<TruncType1> reached;
    for (auto const& c : model.residues().elements()) {
      reached.insert(model.act(Rational(c.representative()), flow.front()));
    }
    report.transitive_under_classes.push_back(
        reached == std::set<TruncType1>(flow.begin(), flow.end()));
  }
  return report;
}

AffineFlowReport minimal_subflows(AffineGroup group, GlobalConfig const& cfg) {
  return minimal_subflows(AffineModel(group, cfg));
}

}  // namespace padyn
