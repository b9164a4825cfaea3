// Actions of (Qp,+), Qp*, (Zp,+) and Zp* on truncated 1-types, and the
// minimal subflows of the finite truncated type spaces.

#ifndef PADYN_FLOWS_HPP_
#define PADYN_FLOWS_HPP_

#include <map>
#include <string>
#include <vector>

#include "padyn/types1.hpp"

namespace padyn {

enum class AffineGroup { Ga, Gm, ZpAdd, ZpMul };

std::string to_string(AffineGroup g);
AffineGroup parse_affine_group(std::string const& s);  // ga | gm | zp-add | zp-mul

// Exact symbolic actions; no reduction of base points.
TruncType1 act_add(Rational const& b, TruncType1 const& t);
TruncType1 act_mul(Rational const& g, TruncType1 const& t);

// The finite state space for one group at one truncation level.
//
// Ga and Gm: base points k / p^w for 0 <= k < p^(2w+1), i.e. the quotient
// p^-w Z / p^(w+1) Z; realized and Near types plus every AtInfinity type
// (Gm omits Realized(0), which is not a point of the group).
// ZpAdd and ZpMul: base points Z / p^K, K = max(w, 2 v_p(n) + 1); ZpMul uses
// the units only; no types at infinity (the groups are compact).
class AffineModel {
 public:
  AffineModel(AffineGroup group, GlobalConfig const& cfg);

  [[nodiscard]] AffineGroup                    group() const noexcept { return group_; }
  [[nodiscard]] GlobalConfig const&            config() const noexcept { return cfg_; }
  [[nodiscard]] ResidueGroup const&            residues() const noexcept { return residues_; }
  [[nodiscard]] std::vector<Rational> const&   bases() const noexcept { return bases_; }
  [[nodiscard]] std::vector<TruncType1> const& states() const noexcept { return states_; }
  [[nodiscard]] std::vector<Rational> const&   generators() const noexcept { return gens_; }
  [[nodiscard]] int                            index_of(TruncType1 const& t) const;
  [[nodiscard]] bool                           contains(TruncType1 const& t) const {
    return index_.count(t) != 0;
  }

  // Exact action followed by reduction into the state space.
  [[nodiscard]] TruncType1 act(Rational const& g, TruncType1 const& t) const;
  [[nodiscard]] TruncType1 canonicalize(TruncType1 const& t) const;

 private:
  [[nodiscard]] Rational reduce_base(Rational const& a) const;

  AffineGroup                 group_;
  GlobalConfig                cfg_;
  ResidueGroup                residues_;
  unsigned                    zp_precision_ = 0;
  std::vector<Rational>       bases_;
  std::vector<TruncType1>     states_;
  std::map<TruncType1, int>   index_;
  std::vector<Rational>       gens_;
};

// Limit points adjoined to the orbit closure of t (the explicit closure
// table). Families: every Near and AtInfinity type (Ga from non-infinite
// types, Gm from types based away from 0), the Near-0 family (Gm from
// Near(0, C)), the AtInfinity family (Gm from AtInfinity), every Near type
// (ZpAdd, ZpMul). Ga on AtInfinity adjoins nothing.
std::vector<TruncType1> closure_transitions(TruncType1 const& t, AffineModel const& model);

struct AffineFlowReport {
  AffineGroup                          group = AffineGroup::Ga;
  std::size_t                          state_count = 0;
  std::vector<std::vector<TruncType1>> minimal_subflows;
  std::vector<std::vector<TruncType1>> orbits;  // partition of the state space
  std::map<TruncType1, bool>           fgeneric;
  // Per minimal subflow: multiplying by class representatives acts
  // transitively (Gm only; true elsewhere).
  std::vector<bool>                    transitive_under_classes;
};

AffineFlowReport minimal_subflows(AffineModel const& model);
AffineFlowReport minimal_subflows(AffineGroup group, GlobalConfig const& cfg);

}  // namespace padyn

#endif  // PADYN_FLOWS_HPP_
