// The acceptance suite: ten exhaustive or seeded checks, each with its own
// test-side oracle. Shared by `padyn verify` and the acceptance binary.

#ifndef PADYN_VERIFY_HPP_
#define PADYN_VERIFY_HPP_

#include <random>
#include <string>
#include <vector>

#include "padyn/json_io.hpp"

namespace padyn::verify {

inline constexpr int         kCriterionCount = 10;
inline constexpr char const* kVersion        = "0.1.0";

struct CriterionResult {
  int         id = 0;
  std::string name;
  bool        pass = false;
  io::json    detail;        // deterministic
  double      seconds = 0.0;  // never part of the JSON report
};

// PADYN_SEED, or a fixed default.
std::uint64_t seed_from_env();

std::string     criterion_name(int id);
CriterionResult run_criterion(int id, GlobalConfig const& cfg, std::uint64_t seed);
std::vector<CriterionResult> run_all(GlobalConfig const& cfg, std::uint64_t seed);

io::json run_report(GlobalConfig const& cfg, std::uint64_t seed, std::vector<CriterionResult> const& results);

// Individual criteria. Sweeps over n or w use the configured prime; criterion
// 1 fixes p in {3, 5, 7}.
CriterionResult residue_oracle(GlobalConfig const& cfg);
CriterionResult type_roundtrip(GlobalConfig const& cfg);
CriterionResult affine_flows(GlobalConfig const& cfg, std::uint64_t seed);
CriterionResult borel_group(GlobalConfig const& cfg);
CriterionResult iwasawa_rewrite(GlobalConfig const& cfg, std::uint64_t seed);
CriterionResult sl2_minimal_flow(GlobalConfig const& cfg);
CriterionResult ellis_group_check(GlobalConfig const& cfg);
CriterionResult proj_collapse(GlobalConfig const& cfg);
CriterionResult proj_minimality(GlobalConfig const& cfg);
CriterionResult stabilization(GlobalConfig const& cfg);

// Brute-force power test used by criterion 1: y^n == x to precision
// p^(2 v_p(n) + 3), by enumerating all unit residues.
class BruteForcePowers {
 public:
  BruteForcePowers(std::uint64_t p, int n);
  [[nodiscard]] bool          is_power(std::int64_t num, std::int64_t den) const;
  // [units : nth powers] * n, the order of Qp*/(Qp*)^n.
  [[nodiscard]] std::uint64_t group_order() const;

 private:
  std::uint64_t      p_;
  int                n_;
  std::uint64_t      mod_;
  std::vector<char>  power_;
  std::vector<std::uint64_t> inv_;
  std::uint64_t      power_count_ = 0;
};

// Random element of SL(2, Q) with entry valuations in [-6, 6].
Mat2 random_unimodular(std::uint64_t p, std::mt19937_64& rng);

}  // namespace padyn::verify

#endif  // PADYN_VERIFY_HPP_
