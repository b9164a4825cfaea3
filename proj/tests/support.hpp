// Shared helpers for the unit tests: seeded randomness and small brute-force
// oracles that do not go through the library's own decision procedures.

#ifndef PADYN_TESTS_SUPPORT_HPP_
#define PADYN_TESTS_SUPPORT_HPP_

#include <doctest.h>

#include <random>

#include "padyn/verify.hpp"

namespace padyn::test {

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(verify::seed_from_env() ^ salt); }

inline Rational random_rational(std::mt19937_64& g, std::int64_t bound = 1000000) {
  std::uniform_int_distribution<std::int64_t> num(-bound, bound);
  std::uniform_int_distribution<std::int64_t> den(1, bound);
  Rational                                    x(Integer(num(g)), Integer(den(g)));
  x.canonicalize();
  return x;
}

inline Rational nonzero_rational(std::mt19937_64& g, std::int64_t bound = 1000000) {
  for (;;) {
    Rational x = random_rational(g, bound);
    if (x != 0) {
      return x;
    }
  }
}

inline Rational q(long num, long den = 1) {
  Rational x(num, den);
  x.canonicalize();
  return x;
}

inline Rational pw(std::uint64_t p, long e) { return power_rational(p, e); }

// By value: range-for over build(...).elements() would dangle.
inline std::vector<ResidueClass> classes(std::uint64_t p, int n) { return ResidueGroup::build(p, n).elements(); }

// Integer valuation by repeated division.
inline long naive_valuation(Integer x, std::uint64_t p) {
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// Is x an nth power in Q_p? Enumerates y = a / p^j with a < p^(2 v_p(n) + 3)
// and compares y^n with x modulo p^(v(x) + 2 v_p(n) + 3).
inline bool brute_force_power(Rational const& x, std::uint64_t p, int n) {
  long const vn   = naive_valuation(Integer(n), p);
  long const prec = 2 * vn + 3;
  long const vx   = naive_valuation(x.get_num() < 0 ? Integer(-x.get_num()) : x.get_num(), p) -
                  naive_valuation(x.get_den(), p);
  if (vx % n != 0) {
    return false;
  }
  Integer const mod = power(p, static_cast<unsigned long>(prec));
  Rational      u   = x / pw(p, vx);
  u.canonicalize();
  Integer den_inv;
  mpz_invert(den_inv.get_mpz_t(), Integer(u.get_den()).get_mpz_t(), mod.get_mpz_t());
  Integer target = Integer(u.get_num() * den_inv) % mod;
  if (target < 0) {
    target += mod;
  }
  for (Integer a = 1; a < mod; ++a) {
    if (a % p == 0) {
      continue;
    }
    Integer y;
    mpz_powm_ui(y.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n), mod.get_mpz_t());
    if (y == target) {
      return true;
    }
  }
  return false;
}

}  // namespace padyn::test

namespace doctest {
template <>
struct StringMaker<padyn::TruncType1> {
  static String convert(padyn::TruncType1 const& t) { return t.to_string().c_str(); }
};
template <>
struct StringMaker<padyn::ProjTruncType> {
  static String convert(padyn::ProjTruncType const& t) { return t.to_string().c_str(); }
};
template <>
struct StringMaker<padyn::ResidueClass> {
  static String convert(padyn::ResidueClass const& c) { return c.to_string().c_str(); }
};
template <>
struct StringMaker<padyn::Rational> {
  static String convert(padyn::Rational const& x) { return padyn::format_rational(x).c_str(); }
};
}  // namespace doctest

#endif  // PADYN_TESTS_SUPPORT_HPP_
