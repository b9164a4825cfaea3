// padyn: JSON reports on stdout, one-line summaries on stderr.
// Exit codes: 0 ok, 1 a check failed, 2 usage error.

#include <CLI11.hpp>

#include <iostream>

#include "padyn/verify.hpp"

namespace {

using padyn::GlobalConfig;
using padyn::io::json;

constexpr int kOk       = 0;
constexpr int kCheckBad = 1;
constexpr int kUsage    = 2;

struct UsageError : padyn::Error {
  using padyn::Error::Error;
};

void add_config(CLI::App* app, GlobalConfig& cfg, bool n = true, bool m = true, bool w = true) {
  app->add_option("--p", cfg.prime, "prime")->capture_default_str();
  if (n) {
    app->add_option("--n", cfg.residue_level_n, "residue level n")->capture_default_str();
  }
  if (m) {
    app->add_option("--m", cfg.matrix_level_m, "matrix congruence level m")->capture_default_str();
  }
  if (w) {
    app->add_option("--w", cfg.valuation_window_w, "valuation window w")->capture_default_str();
  }
  app->add_option("--gap", cfg.ladder_gap, "ladder gap")->capture_default_str();
}

void checked(GlobalConfig const& cfg) {
  try {
    cfg.validate();
  } catch (padyn::Error const& e) {
    throw UsageError(e.what());
  }
}

int emit(json const& j, bool ok, std::string const& summary) {
  std::cout << j.dump(2) << '\n';
  std::cerr << summary << (ok ? "" : " [check failed]") << '\n';
  return ok ? kOk : kCheckBad;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact type-space dynamics over Qp at finite truncation levels"};
  app.require_subcommand(1);
  GlobalConfig cfg;

  auto* residues = app.add_subcommand("residues", "the group Qp*/(Qp*)^n and its valuation map");
  add_config(residues, cfg, true, false, false);

  std::string group = "gm";
  auto*       flows = app.add_subcommand("flows", "minimal subflows of an affine group");
  flows->add_option("--group", group, "ga | gm | zp-add | zp-mul")
      ->check(CLI::IsMember({"ga", "gm", "zp-add", "zp-mul"}))
      ->capture_default_str();
  add_config(flows, cfg, true, false, true);

  auto* borel = app.add_subcommand("borel", "the group J_n under the Borel star product");
  add_config(borel, cfg);

  std::string matrix;
  auto*       iwasawa = app.add_subcommand("iwasawa", "g = t h and g = h t");
  iwasawa->add_option("--p", cfg.prime, "prime")->capture_default_str();
  iwasawa->add_option("--matrix", matrix, "JSON [[a,b],[c,d]], entries \"num/den\"")->required();

  auto* minimal = app.add_subcommand("minimal-flow", "the truncated SL(2, Qp) minimal flow");
  add_config(minimal, cfg);

  bool  tower = false;
  auto* ellis = app.add_subcommand("ellis", "the Ellis group q0 * J");
  add_config(ellis, cfg);
  ellis->add_flag("--tower", tower, "include the inverse system over divisors of n");

  std::string mode;
  auto*       proj = app.add_subcommand("proj", "SL(2, Qp) on truncated P^1 types");
  proj->add_option("mode", mode, "collapse | minimal")->required()->check(CLI::IsMember({"collapse", "minimal"}));
  add_config(proj, cfg);

  bool             all = false;
  std::vector<int> which;
  auto*            verify = app.add_subcommand("verify", "run acceptance criteria");
  verify->add_flag("--all", all, "every criterion");
  verify->add_option("--criterion", which, "criterion ids")->check(CLI::Range(1, padyn::verify::kCriterionCount));
  add_config(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    checked(cfg);
    auto const ladder = padyn::ScaleLadder::standard(cfg);

    if (residues->parsed()) {
      auto const G = padyn::ResidueGroup::build(cfg.prime, cfg.residue_level_n);
      auto const j = padyn::io::residues_report(G);
      return emit(j, j["group_axioms"].get<bool>(),
                  "residues: order " + std::to_string(G.order()) +
                      (j["v_map_injective"].get<bool>() ? ", valuation map injective"
                                                        : ", valuation map not injective"));
    }
    if (flows->parsed()) {
      auto const r = padyn::minimal_subflows(padyn::parse_affine_group(group), cfg);
      return emit(padyn::io::flows_report(r), true,
                  "flows " + group + ": " + std::to_string(r.state_count) + " states, " +
                      std::to_string(r.minimal_subflows.size()) + " minimal subflows");
    }
    if (borel->parsed()) {
      auto const r  = padyn::build_J(cfg, ladder);
      bool const ok = r.idempotent && r.group_axioms && r.iso_to_residue_group;
      return emit(padyn::io::borel_report(r), ok, "borel: J has order " + std::to_string(r.order));
    }
    if (iwasawa->parsed()) {
      padyn::Mat2 g;
      try {
        g = padyn::io::matrix_from_json(json::parse(matrix));
      } catch (json::exception const& e) {
        throw UsageError(std::string("--matrix is not valid JSON: ") + e.what());
      } catch (padyn::Error const& e) {
        throw UsageError(e.what());
      }
      if (!padyn::is_sl2(g)) {
        throw UsageError("non-unimodular input: det(g) = " + padyn::format_rational(padyn::det(g)));
      }
      auto const j = padyn::io::iwasawa_report(g, cfg.prime);
      return emit(j, j["reconstructs"].get<bool>(), "iwasawa: g = t h");
    }
    if (minimal->parsed()) {
      auto const r  = padyn::minimal_flow(cfg, ladder);
      bool const ok = r.strongly_connected && r.idempotent && r.ellis.group_axioms && r.ellis.iso_to_J;
      return emit(padyn::io::minimal_flow_report(r), ok,
                  "minimal-flow: " + std::to_string(r.size) + " states" +
                      (r.strongly_connected ? ", strongly connected" : ", not strongly connected"));
    }
    if (ellis->parsed()) {
      auto const r  = padyn::ellis_group(cfg, ladder, tower);
      bool const ok = r.group_axioms && r.iso_to_J && r.injective && r.symbolic_agrees &&
                      (!tower || r.tower_commutes);
      return emit(padyn::io::ellis_report(r, tower), ok, "ellis: order " + std::to_string(r.order));
    }
    if (proj->parsed()) {
      if (mode == "collapse") {
        auto const r  = padyn::collapse_check(cfg, ladder);
        bool const ok = r.collapsed && r.p0_at_infinity && r.q0_constant && r.mechanism;
        return emit(padyn::io::collapse_report(r), ok,
                    "proj collapse: " + std::to_string(r.states) + " types onto " +
                        (r.collapsed_type ? r.collapsed_type->to_string() : std::string("several")));
      }
      auto const r  = padyn::minimality_proximality_report(cfg, ladder);
      bool const ok = r.strongly_connected && r.proximal;
      return emit(padyn::io::proj_minimal_report(r), ok,
                  "proj minimal: " + std::to_string(r.states) + " nonalgebraic types");
    }
    if (verify->parsed()) {
      if (all == !which.empty()) {
        throw UsageError("verify needs exactly one of --all or --criterion");
      }
      if (all) {
        for (int i = 1; i <= padyn::verify::kCriterionCount; ++i) {
          which.push_back(i);
        }
      }
      auto const                                  seed = padyn::verify::seed_from_env();
      std::vector<padyn::verify::CriterionResult> results;
      bool                                        ok = true;
      for (int id : which) {
        results.push_back(padyn::verify::run_criterion(id, cfg, seed));
        auto const& r = results.back();
        ok            = ok && r.pass;
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << ' ' << r.name << " (" << r.seconds << " s)\n";
      }
      std::cout << padyn::verify::run_report(cfg, seed, results).dump(2) << '\n';
      return ok ? kOk : kCheckBad;
    }
  } catch (UsageError const& e) {
    std::cerr << "padyn: " << e.what() << '\n';
    return kUsage;
  } catch (padyn::Error const& e) {
    std::cerr << "padyn: " << e.what() << '\n';
    return kCheckBad;
  }
  return kUsage;
}
