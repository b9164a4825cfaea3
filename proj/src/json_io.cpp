#include "padyn/json_io.hpp"

#include <set>

namespace padyn::io {

json to_json(Rational const& x) { return format_rational(x); }

json to_json(Mat2 const& m) {
  return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                      json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

json to_json(GlobalConfig const& cfg) {
  return {{"p", cfg.prime},
          {"n", cfg.residue_level_n},
          {"m", cfg.matrix_level_m},
          {"w", cfg.valuation_window_w},
          {"ladder_gap", cfg.ladder_gap}};
}

json to_json(ResidueClass const& c) { return c.to_string(); }

json to_json(TruncType1 const& t) {
  json j;
  switch (t.kind()) {
    case TypeKind::Realized:
      return {{"kind", "realized"}, {"base", to_json(t.base())}};
    case TypeKind::Near:
      j = {{"kind", "near"}, {"base", to_json(t.base())}};
      break;
    case TypeKind::AtInfinity:
      j = {{"kind", "at_infinity"}};
      break;
  }
  j["class"] = to_json(t.cls());
  j["n"]     = t.cls().level();
  return j;
}

json to_json(ProjTruncType const& t) {
  json j = {{"kind", t.is_realized() ? "realized" : "near"}, {"base", t.point().to_string()}};
  if (t.is_near()) {
    j["class"] = to_json(t.cls());
    j["n"]     = t.cls().level();
  }
  return j;
}

json to_json(KElem const& k) {
  return json::array({json::array({k.e[0], k.e[1]}), json::array({k.e[2], k.e[3]})});
}

namespace {

Rational entry(json const& v) {
  if (v.is_string()) {
    return parse_rational(v.get<std::string>());
  }
  if (v.is_number_integer()) {
    return Rational(v.get<long>());
  }
  throw Error("matrix entries must be strings \"num/den\" or integers");
}

json types(std::vector<TruncType1> const& ts) {
  json a = json::array();
  for (auto const& t : ts) {
    a.push_back(to_json(t));
  }
  return a;
}

json table2d(std::vector<int> const& table, int order) {
  json rows = json::array();
  for (int i = 0; i < order; ++i) {
    rows.push_back(std::vector<int>(table.begin() + static_cast<std::ptrdiff_t>(i) * order,
                                    table.begin() + static_cast<std::ptrdiff_t>(i + 1) * order));
  }
  return rows;
}

}  // namespace

Mat2 matrix_from_json(json const& j) {
  std::vector<Rational> e;
  if (j.is_array() && j.size() == 2 && j[0].is_array()) {
    for (auto const& row : j) {
      if (!row.is_array() || row.size() != 2) {
        throw Error("matrix rows must have two entries");
      }
      e.push_back(entry(row[0]));
      e.push_back(entry(row[1]));
    }
  } else if (j.is_array() && j.size() == 4) {
    for (auto const& v : j) {
      e.push_back(entry(v));
    }
  } else {
    throw Error("a matrix is [[a,b],[c,d]] or [a,b,c,d]");
  }
  return {e[0], e[1], e[2], e[3]};
}

json residues_report(ResidueGroup const& g) {
  json reps = json::array();
  for (auto const& c : g.elements()) {
    reps.push_back(to_json(c));
  }
  auto const vm    = induced_valuation_map(g);
  auto const shape = group_shape(g.table(), g.order(), g.identity_index());
  json vmap        = json::object();
  for (auto const& [c, k] : vm.images) {
    vmap[c.to_string()] = k;
  }
  json kernel = json::array();
  for (auto const& c : vm.kernel) {
    kernel.push_back(to_json(c));
  }
  return {{"p", g.prime()},
          {"n", g.level()},
          {"order", g.order()},
          {"representatives", reps},
          {"table", table2d(g.table(), g.order())},
          {"group_axioms", g.verify_axioms()},
          {"cyclic", shape.cyclic},
          {"element_orders", shape.element_orders},
          {"v_map", vmap},
          {"v_map_kernel", kernel},
          {"v_map_injective", vm.injective},
          {"v_map_surjective", vm.surjective}};
}

json flows_report(AffineFlowReport const& r) {
  json minimal = json::array();
  for (auto const& m : r.minimal_subflows) {
    minimal.push_back(types(m));
  }
  // Full orbit lists run to thousands of states; only the orbits inside the
  // minimal subflows are printed.
  std::set<TruncType1> in_minimal;
  for (auto const& m : r.minimal_subflows) {
    in_minimal.insert(m.begin(), m.end());
  }
  json orbits = json::array();
  for (auto const& o : r.orbits) {
    if (!o.empty() && in_minimal.count(o.front()) != 0) {
      orbits.push_back(types(o));
    }
  }
  std::vector<TruncType1> flagged;
  for (auto const& [t, f] : r.fgeneric) {
    if (f) {
      flagged.push_back(t);
    }
  }
  std::vector<bool> transitive = r.transitive_under_classes;
  return {{"group", to_string(r.group)},
          {"states", r.state_count},
          {"minimal_subflow_count", r.minimal_subflows.size()},
          {"minimal_subflows", minimal},
          {"orbit_count", r.orbits.size()},
          {"minimal_orbits", orbits},
          {"fgeneric", types(flagged)},
          {"transitive_under_classes", transitive}};
}

json borel_report(BorelGroupReport const& r) {
  json elems = json::array();
  for (auto const& e : r.elements) {
    elems.push_back(to_json(e.a_class));
  }
  return {{"n", r.level},
          {"order", r.order},
          {"elements", elems},
          {"table", table2d(r.table, r.order)},
          {"idempotent_check", r.idempotent},
          {"group_axioms", r.group_axioms},
          {"iso_to_residue_group", r.iso_to_residue_group}};
}

json iwasawa_report(Mat2 const& g, std::uint64_t p) {
  auto const th = iwasawa(g, p);
  auto const ht = iwasawa_ht(g, p);
  bool const ok = th.t * th.h.matrix() == g && ht.h.matrix() * ht.t == g && is_integral(th.t, p) &&
                  is_integral(ht.t, p) && is_sl2(th.t) && is_sl2(ht.t);
  return {{"p", p},
          {"g", to_json(g)},
          {"t", to_json(th.t)},
          {"h", to_json(th.h.matrix())},
          {"ht", {{"h", to_json(ht.h.matrix())}, {"t", to_json(ht.t)}}},
          {"reconstructs", ok}};
}

json ellis_report(EllisReport const& r, bool with_tower) {
  json elems = json::array();
  for (auto const& e : r.elements) {
    elems.push_back(to_json(e.a_class));
  }
  json out = {{"n", r.level_n},
              {"m", r.level_m},
              {"order", r.order},
              {"elements", elems},
              {"table", table2d(r.table, r.order)},
              {"iso_checks",
               {{"symbolic_agrees", r.symbolic_agrees},
                {"group_axioms", r.group_axioms},
                {"iso_to_J", r.iso_to_J},
                {"injective", r.injective}}}};
  if (with_tower) {
    json levels = json::array();
    for (auto const& l : r.levels) {
      levels.push_back({{"n", l.level},
                        {"order", l.order},
                        {"cyclic", l.cyclic},
                        {"element_orders", l.element_orders},
                        {"v_map_injective", l.valuation_map_injective}});
    }
    json maps = json::array();
    for (auto const& m : r.tower) {
      maps.push_back({{"from", m.from}, {"to", m.to}, {"images", m.images}, {"homomorphism", m.homomorphism}});
    }
    out["tower"] = {{"levels", levels}, {"maps", maps}, {"commutes", r.tower_commutes}};
  }
  return out;
}

json minimal_flow_report(MinimalFlowReport const& r) {
  return {{"size", r.size},
          {"strongly_connected", r.strongly_connected},
          {"idempotent", r.idempotent},
          {"ellis", ellis_report(r.ellis, true)}};
}

json collapse_report(CollapseReport const& r) {
  json boundary = json::array();
  for (auto const& t : r.boundary_inputs) {
    boundary.push_back(to_json(t));
  }
  return {{"states", r.states},
          {"collapsed", r.collapsed},
          {"collapsed_type", r.collapsed_type ? to_json(*r.collapsed_type) : json(nullptr)},
          {"p0_lands_at_infinity", r.p0_at_infinity},
          {"q0_constant_at_infinity", r.q0_constant},
          {"q0_witness_congruent", r.mechanism},
          {"boundary_inputs", boundary}};
}

json proj_minimal_report(ProjMinimalityReport const& r) {
  return {{"states", r.states},
          {"strongly_connected", r.strongly_connected},
          {"proximal", r.proximal},
          {"collapsed_type", r.collapsed_type ? to_json(*r.collapsed_type) : json(nullptr)}};
}

}  // namespace padyn::io
