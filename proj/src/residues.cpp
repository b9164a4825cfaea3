#include "padyn/residues.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>

#include "padyn/kernels.hpp"

namespace padyn {

namespace {

unsigned vp(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1U) {
      r = mulmod(r, b, m);
    }
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r > (std::uint64_t{1} << 26) / p) {
      throw Error("power residue modulus " + std::to_string(p) + "^" + std::to_string(k) +
                  " is too large to tabulate");
    }
    r *= p;
  }
  return r;
}

// Inverse of a unit modulo m (m < 2^26, so plain extended Euclid is fine).
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::tie(t, newt) = std::make_pair(newt, t - q * newt);
    std::tie(r, newr) = std::make_pair(newr, r - q * newr);
  }
  if (t < 0) {
    t += static_cast<std::int64_t>(m);
  }
  return static_cast<std::uint64_t>(t);
}

}  // namespace

PowerResidueTable::PowerResidueTable(std::uint64_t p, int n)
    : p_(p), n_(n), k_(2 * vp(static_cast<std::uint64_t>(n), p) + 1), modulus_(checked_pow(p, k_)) {
  if (n < 1) {
    throw Error("residue level must be positive");
  }
  is_power_.assign(modulus_, false);
  canonical_.assign(modulus_, 0);
  std::vector<std::uint64_t> powers;
  for (std::uint64_t y = 1; y < modulus_; ++y) {
    if (y % p_ == 0) {
      continue;
    }
    auto r = powmod(y, static_cast<std::uint64_t>(n), modulus_);
    if (!is_power_[r]) {
      is_power_[r] = true;
      powers.push_back(r);
    }
  }
  for (std::uint64_t u = 1; u < modulus_; ++u) {
    if (u % p_ == 0 || canonical_[u] != 0) {
      continue;
    }
    unit_reps_.push_back(u);
    for (auto s : powers) {
      auto r = mulmod(u, s, modulus_);
      if (canonical_[r] == 0) {
        canonical_[r] = u;
      }
    }
  }
  if (modulus_ == 1) {
    unit_reps_.push_back(1);
  }
}

PowerResidueTable const& power_residue_table(std::uint64_t p, int n) {
  static std::mutex                                                       mu;
  static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<PowerResidueTable>> cache;
  std::lock_guard lock(mu);
  auto&           slot = cache[{p, n}];
  if (!slot) {
    slot = std::make_unique<PowerResidueTable>(p, n);
  }
  return *slot;
}

Integer ResidueClass::representative() const {
  return Integer(static_cast<unsigned long>(unit_)) *
         power(p_, static_cast<unsigned long>(exponent_));
}

std::string ResidueClass::to_string() const { return representative().get_str(10); }

namespace {

std::uint64_t unit_residue(Rational const& x, std::uint64_t p, PowerResidueTable const& t) {
  Rational u = unit_part(x, p);
  if (t.modulus() == 1) {
    return 0;
  }
  return reduce_mod(u, p, t.precision()).get_ui();
}

long floor_mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

bool is_nth_power(Rational const& x, std::uint64_t p, int n) {
  if (x == 0) {
    throw Error("is_nth_power: zero input");
  }
  if (n < 1) {
    throw Error("is_nth_power: level must be positive");
  }
  auto const& t = power_residue_table(p, n);
  if (valuation(x, p).value() % n != 0) {
    return false;
  }
  if (t.modulus() == 1) {
    return true;
  }
  return t.is_power(unit_residue(x, p, t));
}

bool is_nth_power(PadicNumber const& x, int n) { return is_nth_power(x.value(), x.prime(), n); }

ResidueClass class_of(Rational const& x, std::uint64_t p, int n) {
  if (x == 0) {
    throw Error("class_of: zero has no residue class");
  }
  auto const& t = power_residue_table(p, n);
  long        e = floor_mod(valuation(x, p).value(), n);
  std::uint64_t unit = t.modulus() == 1 ? 1 : t.canonical_unit(unit_residue(x, p, t));
  return {p, n, unit, static_cast<int>(e)};
}

ResidueClass class_of(PadicNumber const& x, int n) { return class_of(x.value(), x.prime(), n); }

ResidueClass operator*(ResidueClass const& a, ResidueClass const& b) {
  if (a.prime() != b.prime() || a.level() != b.level()) {
    throw Error("residue classes at different levels cannot be multiplied");
  }
  return class_of(Rational(a.representative() * b.representative()), a.prime(), a.level());
}

ResidueClass inverse(ResidueClass const& a) {
  Rational inv(Integer(1), a.representative());
  inv.canonicalize();
  return class_of(inv, a.prime(), a.level());
}

ResidueClass project(ResidueClass const& c, int target_level) {
  if (target_level < 1 || c.level() % target_level != 0) {
    throw Error("projection target level must divide the source level");
  }
  return class_of(Rational(c.representative()), c.prime(), target_level);
}

std::vector<std::uint64_t> unit_group_generators(std::uint64_t p, unsigned k) {
  if (k == 0) {
    return {};
  }
  std::uint64_t const m = checked_pow(p, k);
  if (p == 2) {
    if (k == 1) {
      return {};
    }
    if (k == 2) {
      return {3};
    }
    return {m - 1, 5};
  }
  // A primitive root mod p whose (p-1)th power is not 1 mod p^2 generates
  // (Z/p^k)^* for every k.
  std::vector<std::uint64_t> factors;
  std::uint64_t              q = p - 1;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      factors.push_back(d);
      while (q % d == 0) {
        q /= d;
      }
    }
  }
  if (q > 1) {
    factors.push_back(q);
  }
  for (std::uint64_t g = 2; g < p * p; ++g) {
    if (g % p == 0) {
      continue;
    }
    bool primitive = true;
    for (auto f : factors) {
      if (powmod(g, (p - 1) / f, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive && (k == 1 || powmod(g, p - 1, p * p) != 1)) {
      return {g % m};
    }
  }
  throw Error("no primitive root found");
}

bool is_nth_power_small(std::int64_t num, std::int64_t den, PowerResidueTable const& table) {
  std::uint64_t const p = table.prime();
  auto          a = static_cast<std::uint64_t>(num < 0 ? -num : num);
  auto          b = static_cast<std::uint64_t>(den);
  long          v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  while (b % p == 0) {
    b /= p;
    --v;
  }
  if (floor_mod(v, table.level()) != 0) {
    return false;
  }
  std::uint64_t const m = table.modulus();
  if (m == 1) {
    return true;
  }
  std::uint64_t r = mulmod(a % m, invmod(b % m, m), m);
  if (num < 0) {
    r = (m - r) % m;
  }
  return table.is_power(r);
}

ResidueGroup ResidueGroup::build(std::uint64_t p, int n) {
  if (n < 1) {
    throw Error("residue level must be positive");
  }
  ResidueGroup g;
  g.p_          = p;
  g.n_          = n;
  auto const& t = power_residue_table(p, n);
  std::set<ResidueClass> found;
  for (int e = 0; e < n; ++e) {
    Integer pe = power(p, static_cast<unsigned long>(e));
    for (std::uint64_t u = 1; u < std::max<std::uint64_t>(t.modulus(), 2); ++u) {
      if (u % p == 0) {
        continue;
      }
      found.insert(class_of(Rational(Integer(static_cast<unsigned long>(u)) * pe), p, n));
    }
  }
  g.elements_.assign(found.begin(), found.end());
  std::sort(g.elements_.begin(), g.elements_.end(), [](auto const& a, auto const& b) {
    return a.representative() < b.representative();
  });
  for (int i = 0; i < g.order(); ++i) {
    g.index_.emplace(g.elements_[i], i);
  }
  g.identity_ = g.index_of(ResidueClass::identity(p, n));
  g.table_    = kernels::parallel::build_table(
      g.order(), [&](int i, int j) { return g.index_of(g.elements_[i] * g.elements_[j]); });
  if (!g.verify_axioms()) {
    throw Error("residue group table fails the group axioms");
  }
  return g;
}

int ResidueGroup::index_of(ResidueClass const& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) {
    throw Error("class " + c.to_string() + " is not in the level-" + std::to_string(n_) +
                " residue group");
  }
  return it->second;
}

bool ResidueGroup::verify_axioms() const {
  int const order = this->order();
  for (int i = 0; i < order; ++i) {
    if (mul(identity_, i) != i || mul(i, identity_) != i) {
      return false;
    }
    bool has_inverse = false;
    for (int j = 0; j < order && !has_inverse; ++j) {
      has_inverse = mul(i, j) == identity_ && mul(j, i) == identity_;
    }
    if (!has_inverse) {
      return false;
    }
  }
  return kernels::parallel::associative(table_, order);
}

GroupShape group_shape(std::vector<int> const& table, int order, int identity) {
  GroupShape s;
  s.order   = order;
  s.abelian = true;
  for (int i = 0; i < order && s.abelian; ++i) {
    for (int j = 0; j < order; ++j) {
      if (table[static_cast<std::size_t>(i) * order + j] !=
          table[static_cast<std::size_t>(j) * order + i]) {
        s.abelian = false;
        break;
      }
    }
  }
  for (int i = 0; i < order; ++i) {
    int k = 1, x = i;
    while (x != identity) {
      x = table[static_cast<std::size_t>(x) * order + i];
      ++k;
      if (k > order) {
        throw Error("table is not a group: element of unbounded order");
      }
    }
    s.element_orders.push_back(k);
  }
  std::sort(s.element_orders.begin(), s.element_orders.end());
  s.cyclic = !s.element_orders.empty() && s.element_orders.back() == order;
  return s;
}

ValuationMapReport induced_valuation_map(ResidueGroup const& g) {
  ValuationMapReport r;
  r.level = g.level();
  std::set<int> image;
  for (auto const& c : g.elements()) {
    r.images.emplace_back(c, c.exponent());
    image.insert(c.exponent());
    if (c.exponent() == 0) {
      r.kernel.push_back(c);
    }
  }
  r.injective  = r.kernel.size() == 1;
  r.surjective = static_cast<int>(image.size()) == g.level();
  return r;
}

}  // namespace padyn
