// The finite groups Qp*/(Qp*)^n: nth-power tests via Hensel's lemma,
// canonical integer representatives, and exhaustive group tables.

#ifndef PADYN_RESIDUES_HPP_
#define PADYN_RESIDUES_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "padyn/padic.hpp"

namespace padyn {

// Power residues of unit classes modulo p^k, k = 2 v_p(n) + 1. A unit of Zp
// is an nth power iff its residue mod p^k is an nth power residue (Hensel).
class PowerResidueTable {
 public:
  PowerResidueTable(std::uint64_t p, int n);

  [[nodiscard]] std::uint64_t prime() const noexcept { return p_; }
  [[nodiscard]] int           level() const noexcept { return n_; }
  [[nodiscard]] unsigned      precision() const noexcept { return k_; }
  [[nodiscard]] std::uint64_t modulus() const noexcept { return modulus_; }

  // r must be a unit residue in [0, modulus).
  [[nodiscard]] bool          is_power(std::uint64_t r) const { return is_power_[r]; }
  // Smallest positive integer unit in the coset of r modulo nth powers.
  [[nodiscard]] std::uint64_t canonical_unit(std::uint64_t r) const { return canonical_[r]; }
  [[nodiscard]] std::vector<std::uint64_t> const& unit_representatives() const noexcept {
    return unit_reps_;
  }

 private:
  std::uint64_t              p_;
  int                        n_;
  unsigned                   k_;
  std::uint64_t              modulus_;
  std::vector<bool>          is_power_;
  std::vector<std::uint64_t> canonical_;
  std::vector<std::uint64_t> unit_reps_;
};

// Shared, lazily built tables; thread-safe.
PowerResidueTable const& power_residue_table(std::uint64_t p, int n);

// Class of a nonzero rational in Qp*/(Qp*)^n. The canonical representative is
// unit * p^exponent with 0 <= exponent < n and unit the smallest positive
// integer unit of its coset.
class ResidueClass {
 public:
  ResidueClass(std::uint64_t p, int n, std::uint64_t unit, int exponent)
      : p_(p), n_(n), unit_(unit), exponent_(exponent) {}

  static ResidueClass identity(std::uint64_t p, int n) { return {p, n, 1, 0}; }

  [[nodiscard]] std::uint64_t prime() const noexcept { return p_; }
  [[nodiscard]] int           level() const noexcept { return n_; }
  [[nodiscard]] std::uint64_t unit() const noexcept { return unit_; }
  [[nodiscard]] int           exponent() const noexcept { return exponent_; }
  [[nodiscard]] bool          is_identity() const noexcept { return unit_ == 1 && exponent_ == 0; }
  [[nodiscard]] Integer       representative() const;
  [[nodiscard]] std::string   to_string() const;

  friend bool operator==(ResidueClass const&, ResidueClass const&) = default;
  friend auto operator<=>(ResidueClass const& a, ResidueClass const& b) {
    return std::tie(a.p_, a.n_, a.exponent_, a.unit_) <=>
           std::tie(b.p_, b.n_, b.exponent_, b.unit_);
  }

 private:
  std::uint64_t p_;
  int           n_;
  std::uint64_t unit_;
  int           exponent_;
};

bool         is_nth_power(PadicNumber const& x, int n);
bool         is_nth_power(Rational const& x, std::uint64_t p, int n);
ResidueClass class_of(PadicNumber const& x, int n);
ResidueClass class_of(Rational const& x, std::uint64_t p, int n);
ResidueClass operator*(ResidueClass const& a, ResidueClass const& b);
ResidueClass inverse(ResidueClass const& a);
// Image of a level-n class at a level dividing n.
ResidueClass project(ResidueClass const& c, int target_level);

// Generators of the unit group (Z/p^k)^*: one primitive root for odd p,
// {-1, 5} for p = 2 (fewer at k < 3). Returned as residues in [1, p^k).
std::vector<std::uint64_t> unit_group_generators(std::uint64_t p, unsigned k);

// Machine-word fast path for |num|, den < 2^62; den > 0, num != 0.
bool is_nth_power_small(std::int64_t num, std::int64_t den, PowerResidueTable const& table);

class ResidueGroup {
 public:
  // Discovers the group by classifying every u * p^e with u a unit below
  // p^k and 0 <= e < n, then builds and verifies the full table.
  static ResidueGroup build(std::uint64_t p, int n);

  [[nodiscard]] std::uint64_t                    prime() const noexcept { return p_; }
  [[nodiscard]] int                              level() const noexcept { return n_; }
  [[nodiscard]] int                              order() const noexcept {
    return static_cast<int>(elements_.size());
  }
  [[nodiscard]] std::vector<ResidueClass> const& elements() const noexcept { return elements_; }
  [[nodiscard]] ResidueClass const& element(int i) const { return elements_.at(i); }
  [[nodiscard]] int                 index_of(ResidueClass const& c) const;
  [[nodiscard]] int                 identity_index() const noexcept { return identity_; }
  [[nodiscard]] int                 mul(int i, int j) const {
    return table_[static_cast<std::size_t>(i) * elements_.size() + j];
  }
  [[nodiscard]] std::vector<int> const& table() const noexcept { return table_; }

  // Exhaustive group-axiom check over the stored table.
  [[nodiscard]] bool verify_axioms() const;

 private:
  std::uint64_t                p_ = 0;
  int                          n_ = 0;
  std::vector<ResidueClass>    elements_;
  std::map<ResidueClass, int>  index_;
  std::vector<int>             table_;
  int                          identity_ = 0;
};

// Abstract isomorphism type of a finite abelian group given by its table:
// the multiset of element orders, and whether it is cyclic.
struct GroupShape {
  int              order = 0;
  bool             abelian = false;
  bool             cyclic = false;
  std::vector<int> element_orders;  // sorted
};
GroupShape group_shape(std::vector<int> const& table, int order, int identity);

struct ValuationMapReport {
  int                               level = 0;
  std::vector<std::pair<ResidueClass, int>> images;  // class -> v(rep) mod n
  std::vector<ResidueClass>         kernel;
  bool                              injective  = false;
  bool                              surjective = false;
};

ValuationMapReport induced_valuation_map(ResidueGroup const& g);

}  // namespace padyn

#endif  // PADYN_RESIDUES_HPP_
