// SL(2, Qp) at finite level: Iwasawa factorizations, the Borel rewrite
// h t = t' h', conjugation stability, and the truncated minimal flow
// SL(2, Z/p^m) x J_n with its star product and Ellis group.

#ifndef PADYN_SL2_HPP_
#define PADYN_SL2_HPP_

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "padyn/borel.hpp"
#include "padyn/graph.hpp"

namespace padyn {

// ---------------------------------------------------------------------------
// SL(2, Z/p^m)
// ---------------------------------------------------------------------------

struct KElem {
  std::array<std::uint32_t, 4> e{1, 0, 0, 1};  // row major, entries in [0, p^m)

  friend bool operator==(KElem const&, KElem const&) = default;
  friend auto operator<=>(KElem const&, KElem const&) = default;
};

class KLevel {
 public:
  // m = 0 gives the trivial group.
  KLevel(std::uint64_t p, int m);

  [[nodiscard]] std::uint64_t             prime() const noexcept { return p_; }
  [[nodiscard]] int                       level() const noexcept { return m_; }
  [[nodiscard]] std::uint32_t             modulus() const noexcept { return mod_; }
  [[nodiscard]] std::size_t               size() const noexcept { return elems_.size(); }
  [[nodiscard]] KElem const&              element(std::size_t i) const { return elems_.at(i); }
  [[nodiscard]] std::vector<KElem> const& elements() const noexcept { return elems_; }
  [[nodiscard]] int                       index_of(KElem const& k) const;
  [[nodiscard]] int                       identity_index() const { return index_of(KElem{}); }
  [[nodiscard]] KElem                     mul(KElem const& x, KElem const& y) const;

  // Reduction of a p-integral matrix.
  [[nodiscard]] KElem reduce(Mat2 const& t) const;
  // Canonical lift to SL(2, Z_(p)): entries in [0, p^m), with the lower right
  // (unit upper left) or upper right entry solved exactly from det = 1.
  [[nodiscard]] Mat2  lift(KElem const& k) const;

 private:
  [[nodiscard]] std::uint64_t key(KElem const& k) const;

  std::uint64_t                          p_;
  int                                    m_;
  std::uint32_t                          mod_;
  std::vector<KElem>                     elems_;
  std::unordered_map<std::uint64_t, int> index_;
};

// [[1, p^R], [p^R, 1 + p^2R]]: determinant 1, congruent to I mod p^R.
Mat2 perturbation(std::uint64_t p, long R);

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

struct IwasawaTH {
  Mat2      t;  // in SL(2, Z_p)
  BorelElem h;
};
struct IwasawaHT {
  BorelElem h;
  Mat2      t;
};

// g = t h. Integral g gives (g, I). Otherwise the first column decides:
// v(g21) >= v(g11) clears g21 with [[1, 0], [g21/g11, 1]], else the swap-like
// [[g11/g21, -1], [1, 0]] moves g21 to the diagonal.
IwasawaTH iwasawa(Mat2 const& g, std::uint64_t p);
// g = h t, pivoting on the bottom row (v(g21) >= v(g22) keeps the row order).
IwasawaHT iwasawa_ht(Mat2 const& g, std::uint64_t p);

bool in_borel_integral(Mat2 const& g, std::uint64_t p);

struct BorelRewrite {
  Mat2      t_prime;
  BorelElem h_prime;
  bool      borel_branch = false;  // u3 == 0
  bool      congruent    = false;  // t' == I mod p^m
};

// h t = t' h' for h a p0-witness and t in SL(2, Z_p). With u3 != 0:
// t' = [[1, 0], [u3 / (a (a u1 + c u3)), 1]], h' = (a u1 + c u3, a u2 + c u4).
// With u3 == 0 (t in B(Z_p)): t' = t, h' = t^-1 h t.
BorelRewrite lemma35_factor(BorelElem const& h, Mat2 const& t, std::uint64_t p, int m);

struct ConjResult {
  Mat2 conjugate;          // g t g^-1
  bool congruent = false;  // == I mod p^m
};

// Requires t == I mod p^s with s > 2 d(g) + m; throws otherwise.
ConjResult conj_stability(Mat2 const& t_small, long s, Mat2 const& g, std::uint64_t p, int m);

// ---------------------------------------------------------------------------
// The truncated flow K_m x J_n
// ---------------------------------------------------------------------------

// T = [[1, 1], [0, 1]], L = [[1, 0], [1, 1]], D_u = diag(u, 1/u) for u
// generating (Z/p^k)^*, k = max(m + w, 2 v_p(n) + 1), A = diag(p, 1/p),
// W = [[0, -1], [1, 0]].
std::vector<Mat2> sl2_generators(GlobalConfig const& cfg);
// A^N and A^-N with N the least multiple of n >= m + w + 2n + 5: the limit
// transitions adjoined for orbit closures.
std::vector<Mat2> sl2_closure_generators(GlobalConfig const& cfg);

struct GFlowPoint {
  KElem          k;
  BorelTruncType j;

  friend bool operator==(GFlowPoint const&, GFlowPoint const&) = default;
};

class GFlow {
 public:
  explicit GFlow(GlobalConfig const& cfg);

  [[nodiscard]] GlobalConfig const& config() const noexcept { return cfg_; }
  [[nodiscard]] KLevel const&       K() const noexcept { return K_; }
  [[nodiscard]] ResidueGroup const& J() const noexcept { return J_; }
  [[nodiscard]] std::size_t         size() const noexcept { return K_.size() * J_.elements().size(); }
  [[nodiscard]] GFlowPoint          point(std::size_t i) const;
  [[nodiscard]] std::size_t         index_of(GFlowPoint const& x) const;
  [[nodiscard]] GFlowPoint          unit() const;  // q0 * p0 = (I, identity)

  // Class picked up when a p0-witness passes a K-witness of k.
  [[nodiscard]] ResidueClass gamma(KElem const& k) const;

  // Witness path: x at rungs (0, 1), y at rungs (2, 3); t h t' h' refactored
  // through lemma35_factor and classified.
  [[nodiscard]] GFlowPoint star_witness(GFlowPoint const& x, GFlowPoint const& y,
                                        ScaleLadder const& ladder) const;
  // (k1, j1) * (k2, j2) = (k1, j1 gamma(k2) j2).
  [[nodiscard]] GFlowPoint star_symbolic(GFlowPoint const& x, GFlowPoint const& y) const;

  // Left action of g: Iwasawa factorization of g lift(k).
  [[nodiscard]] GFlowPoint act_symbolic(Mat2 const& g, GFlowPoint const& x) const;
  // Witness path: K-perturbation at rung 1, Borel witness at rungs (2, 3).
  [[nodiscard]] GFlowPoint act_witness(Mat2 const& g, GFlowPoint const& x,
                                       ScaleLadder const& ladder) const;

  [[nodiscard]] std::vector<Mat2> const& generators() const noexcept { return gens_; }
  [[nodiscard]] std::vector<Mat2> const& closure_generators() const noexcept { return closure_; }

 private:
  GlobalConfig      cfg_;
  KLevel            K_;
  ResidueGroup      J_;
  std::vector<Mat2> gens_;
  std::vector<Mat2> closure_;
};

struct TowerLevel {
  int              level = 0;
  int              order = 0;
  bool             cyclic = false;
  std::vector<int> element_orders;
  bool             valuation_map_injective = false;
};

struct TowerMap {
  int              from = 0;  // n
  int              to   = 0;  // n' dividing n
  std::vector<int> images;    // index in level n -> index in level n'
  bool             homomorphism = false;
};

struct EllisReport {
  int                         level_n = 0;
  int                         level_m = 0;
  int                         order   = 0;
  std::vector<BorelTruncType> elements;  // (I, j) for j in these
  std::vector<int>            table;     // witness-path star_G
  bool                        symbolic_agrees = false;
  bool                        group_axioms    = false;
  bool                        iso_to_J        = false;
  bool                        injective       = false;
  std::vector<TowerLevel>     levels;       // every divisor of n
  std::vector<TowerMap>       tower;        // every divisor pair
  bool                        tower_commutes = false;
};

EllisReport ellis_group(GlobalConfig const& cfg, ScaleLadder const& ladder, bool with_tower = true);

struct MinimalFlowReport {
  std::size_t size = 0;
  bool        strongly_connected = false;
  bool        idempotent         = false;  // witness path
  EllisReport ellis;
};

// Action-plus-closure graph on all of K_m x J_n (symbolic action).
Digraph flow_graph(GFlow const& flow);

MinimalFlowReport minimal_flow(GlobalConfig const& cfg, ScaleLadder const& ladder);

}  // namespace padyn

#endif  // PADYN_SL2_HPP_
