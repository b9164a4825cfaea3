// Exact p-adic arithmetic over the rationals.
//
// Everything here is exact: values are GMP rationals, valuations are integers
// (or +infinity for zero), and no floating point is used anywhere.

#ifndef PADYN_PADIC_HPP_
#define PADYN_PADIC_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace padyn {

using Integer  = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

// Valuation of a p-adic number: an integer, or +infinity for zero.
class Valuation {
 public:
  constexpr explicit Valuation(long v) noexcept : value_(v), infinite_(false) {}

  static constexpr Valuation infinity() noexcept {
    Valuation v(0);
    v.infinite_ = true;
    return v;
  }

  [[nodiscard]] constexpr bool is_infinite() const noexcept { return infinite_; }
  [[nodiscard]] long           value() const;

  friend constexpr bool operator==(Valuation const& a, Valuation const& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation const& a,
                                                    Valuation const& b) noexcept {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(Valuation const& a, long b) noexcept {
    return !a.infinite_ && a.value_ == b;
  }
  friend constexpr std::strong_ordering operator<=>(Valuation const& a, long b) noexcept {
    if (a.infinite_) {
      return std::strong_ordering::greater;
    }
    return a.value_ <=> b;
  }

  [[nodiscard]] std::string to_string() const;

 private:
  long value_;
  bool infinite_;
};

// Truncation parameters shared by every module.
struct GlobalConfig {
  std::uint64_t prime              = 5;
  int           residue_level_n    = 2;
  int           matrix_level_m     = 1;
  long          valuation_window_w = 2;
  long          ladder_gap         = 8;

  static constexpr int  kMaxResidueLevel = 12;
  static constexpr int  kMaxMatrixLevel  = 3;
  static constexpr long kMaxWindow       = 4;

  // Validates primality and level bounds (m = 0 is the trivial congruence
  // level), throws padyn::Error otherwise.
  static GlobalConfig make(std::uint64_t p, int n, int m, long w, long gap);

  void validate() const;
};

// ---------------------------------------------------------------------------
// Scalar helpers on Rational with an explicit prime.
// ---------------------------------------------------------------------------

Integer   power(std::uint64_t p, unsigned long e);
Rational  power_rational(std::uint64_t p, long e);  // p^e, e may be negative
Valuation valuation(Rational const& x, std::uint64_t p);
Valuation valuation(Integer const& x, std::uint64_t p);
Rational  unit_part(Rational const& x, std::uint64_t p);

// x mod p^k for a p-integral rational x, as an integer in [0, p^k).
Integer reduce_mod(Rational const& x, std::uint64_t p, unsigned k);

std::string format_rational(Rational const& x);
Rational    parse_rational(std::string_view s);

// ---------------------------------------------------------------------------
// PadicNumber: an exact rational with a distinguished prime.
// ---------------------------------------------------------------------------

class PadicNumber {
 public:
  PadicNumber(Rational value, std::uint64_t p) : value_(std::move(value)), p_(p) {
    value_.canonicalize();
  }
  PadicNumber(long value, std::uint64_t p) : value_(value), p_(p) {}

  [[nodiscard]] Rational const& value() const noexcept { return value_; }
  [[nodiscard]] std::uint64_t   prime() const noexcept { return p_; }
  [[nodiscard]] bool            is_zero() const { return value_ == 0; }

  [[nodiscard]] Valuation   valuation() const { return padyn::valuation(value_, p_); }
  [[nodiscard]] PadicNumber unit_part() const { return {padyn::unit_part(value_, p_), p_}; }

  friend PadicNumber operator+(PadicNumber const& a, PadicNumber const& b);
  friend PadicNumber operator-(PadicNumber const& a, PadicNumber const& b);
  friend PadicNumber operator*(PadicNumber const& a, PadicNumber const& b);
  friend PadicNumber operator/(PadicNumber const& a, PadicNumber const& b);
  friend bool        operator==(PadicNumber const& a, PadicNumber const& b) {
    return a.p_ == b.p_ && a.value_ == b.value_;
  }

  [[nodiscard]] std::string to_string() const { return format_rational(value_); }

 private:
  Rational      value_;
  std::uint64_t p_;
};

inline Valuation valuation(PadicNumber const& x) { return x.valuation(); }
inline PadicNumber unit_part(PadicNumber const& x) { return x.unit_part(); }

// ---------------------------------------------------------------------------
// Mat2: 2x2 matrix of exact rationals, row major.
// ---------------------------------------------------------------------------

struct Mat2 {
  std::array<Rational, 4> e{Rational(1), Rational(0), Rational(0), Rational(1)};

  Mat2() = default;
  Mat2(Rational a, Rational b, Rational c, Rational d)
      : e{std::move(a), std::move(b), std::move(c), std::move(d)} {
    for (auto& x : e) {
      x.canonicalize();
    }
  }

  static Mat2 identity() { return {}; }

  Rational const& operator()(int i, int j) const { return e[2 * i + j]; }
  Rational&       operator()(int i, int j) { return e[2 * i + j]; }

  friend bool operator==(Mat2 const& a, Mat2 const& b) { return a.e == b.e; }
};

Mat2     operator*(Mat2 const& a, Mat2 const& b);
Rational det(Mat2 const& a);
Mat2     inverse(Mat2 const& a);  // throws on singular input
bool     is_integral(Mat2 const& a, std::uint64_t p);
bool     is_upper_triangular(Mat2 const& a);
bool     is_sl2(Mat2 const& a);
// True iff a is p-integral and a ≡ I mod p^m.
bool congruent_identity(Mat2 const& a, std::uint64_t p, int m);
// Largest |v(entry)| over the nonzero entries.
long max_abs_valuation(Mat2 const& a, std::uint64_t p);

// A 2x2 matrix bundled with its prime.
class PadicMatrix2 {
 public:
  PadicMatrix2(Mat2 m, std::uint64_t p) : m_(std::move(m)), p_(p) {}

  [[nodiscard]] Mat2 const&   matrix() const noexcept { return m_; }
  [[nodiscard]] std::uint64_t prime() const noexcept { return p_; }
  [[nodiscard]] PadicNumber   det() const { return {padyn::det(m_), p_}; }
  [[nodiscard]] PadicMatrix2  inverse() const { return {padyn::inverse(m_), p_}; }
  [[nodiscard]] bool          is_integral() const { return padyn::is_integral(m_, p_); }
  [[nodiscard]] bool          is_sl2() const { return padyn::is_sl2(m_); }

  friend PadicMatrix2 operator*(PadicMatrix2 const& a, PadicMatrix2 const& b);
  friend bool         operator==(PadicMatrix2 const& a, PadicMatrix2 const& b) {
    return a.p_ == b.p_ && a.m_ == b.m_;
  }

 private:
  Mat2          m_;
  std::uint64_t p_;
};

inline PadicMatrix2 mat_mul(PadicMatrix2 const& a, PadicMatrix2 const& b) { return a * b; }
inline PadicMatrix2 mat_inv(PadicMatrix2 const& a) { return a.inverse(); }
inline PadicNumber  det(PadicMatrix2 const& a) { return a.det(); }

}  // namespace padyn

#endif  // PADYN_PADIC_HPP_
