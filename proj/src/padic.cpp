#include "padyn/padic.hpp"

#include <cctype>
#include <cstdlib>

namespace padyn {

bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

long Valuation::value() const {
  if (infinite_) {
    throw Error("valuation of zero is infinite");
  }
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

GlobalConfig GlobalConfig::make(std::uint64_t p, int n, int m, long w, long gap) {
  GlobalConfig cfg{p, n, m, w, gap};
  cfg.validate();
  return cfg;
}

void GlobalConfig::validate() const {
  if (!is_prime(prime)) {
    throw Error(std::to_string(prime) + " is not prime");
  }
  if (residue_level_n < 1 || residue_level_n > kMaxResidueLevel) {
    throw Error("residue level n must lie in [1, " + std::to_string(kMaxResidueLevel) + "]");
  }
  if (matrix_level_m < 0 || matrix_level_m > kMaxMatrixLevel) {
    throw Error("matrix level m must lie in [0, " + std::to_string(kMaxMatrixLevel) + "]");
  }
  if (valuation_window_w < 1 || valuation_window_w > kMaxWindow) {
    throw Error("valuation window w must lie in [1, " + std::to_string(kMaxWindow) + "]");
  }
  // SL(2, Z/p^m) is enumerated outright.
  if (matrix_level_m > 0 && power(prime, 3UL * static_cast<unsigned long>(matrix_level_m)) > (1UL << 24)) {
    throw Error("matrix level m = " + std::to_string(matrix_level_m) + " is too large for p = " +
                std::to_string(prime));
  }
  if (ladder_gap < 1) {
    throw Error("ladder gap must be positive");
  }
}

Integer power(std::uint64_t p, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

Rational power_rational(std::uint64_t p, long e) {
  if (e >= 0) {
    return Rational(power(p, static_cast<unsigned long>(e)));
  }
  Rational r(Integer(1), power(p, static_cast<unsigned long>(-e)));
  r.canonicalize();
  return r;
}

namespace {

// Removes every factor p from x in place and returns how many were removed.
long strip(Integer& x, std::uint64_t p) {
  if (x == 0) {
    return 0;
  }
  Integer pp(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

}  // namespace

Valuation valuation(Integer const& x, std::uint64_t p) {
  if (x == 0) {
    return Valuation::infinity();
  }
  Integer t = x;
  return Valuation(strip(t, p));
}

Valuation valuation(Rational const& x, std::uint64_t p) {
  if (x == 0) {
    return Valuation::infinity();
  }
  Integer num = x.get_num();
  Integer den = x.get_den();
  return Valuation(strip(num, p) - strip(den, p));
}

Rational unit_part(Rational const& x, std::uint64_t p) {
  if (x == 0) {
    throw Error("zero has no unit part");
  }
  Integer num = x.get_num();
  Integer den = x.get_den();
  strip(num, p);
  strip(den, p);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer reduce_mod(Rational const& x, std::uint64_t p, unsigned k) {
  Integer modulus = power(p, k);
  Integer den     = x.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    if (modulus == 1) {
      return Integer(0);
    }
    throw Error("reduce_mod: " + format_rational(x) + " is not p-integral");
  }
  Integer r = Integer(x.get_num()) * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

std::string format_rational(Rational const& x) { return x.get_str(10); }

Rational parse_rational(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) {
      v.remove_prefix(1);
    }
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) {
      v.remove_suffix(1);
    }
    return v;
  };
  auto parse_int = [](std::string_view v) {
    if (v.empty()) {
      throw Error("empty integer in rational literal");
    }
    std::size_t i = (v.front() == '-' || v.front() == '+') ? 1 : 0;
    if (i == v.size()) {
      throw Error("malformed integer '" + std::string(v) + "'");
    }
    for (; i < v.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) {
        throw Error("malformed integer '" + std::string(v) + "'");
      }
    }
    std::string str(v.front() == '+' ? v.substr(1) : v);
    return Integer(str, 10);
  };
  s          = trim(s);
  auto slash = s.find('/');
  Integer num = parse_int(trim(s.substr(0, slash)));
  Integer den = slash == std::string_view::npos ? Integer(1) : parse_int(trim(s.substr(slash + 1)));
  if (den == 0) {
    throw Error("zero denominator in '" + std::string(s) + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

void require_same_prime(std::uint64_t a, std::uint64_t b) {
  if (a != b) {
    throw Error("p-adic operands carry different primes");
  }
}

}  // namespace

PadicNumber operator+(PadicNumber const& a, PadicNumber const& b) {
  require_same_prime(a.p_, b.p_);
  return {Rational(a.value_ + b.value_), a.p_};
}

PadicNumber operator-(PadicNumber const& a, PadicNumber const& b) {
  require_same_prime(a.p_, b.p_);
  return {Rational(a.value_ - b.value_), a.p_};
}

PadicNumber operator*(PadicNumber const& a, PadicNumber const& b) {
  require_same_prime(a.p_, b.p_);
  return {Rational(a.value_ * b.value_), a.p_};
}

PadicNumber operator/(PadicNumber const& a, PadicNumber const& b) {
  require_same_prime(a.p_, b.p_);
  if (b.value_ == 0) {
    throw Error("division by zero");
  }
  return {Rational(a.value_ / b.value_), a.p_};
}

Mat2 operator*(Mat2 const& a, Mat2 const& b) {
  return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
          a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}

Rational det(Mat2 const& a) { return a.e[0] * a.e[3] - a.e[1] * a.e[2]; }

Mat2 inverse(Mat2 const& a) {
  Rational d = det(a);
  if (d == 0) {
    throw Error("singular matrix has no inverse");
  }
  return {a.e[3] / d, -a.e[1] / d, -a.e[2] / d, a.e[0] / d};
}

bool is_integral(Mat2 const& a, std::uint64_t p) {
  for (auto const& x : a.e) {
    if (valuation(x, p) < 0) {
      return false;
    }
  }
  return true;
}

bool is_upper_triangular(Mat2 const& a) { return a.e[2] == 0; }

bool is_sl2(Mat2 const& a) { return det(a) == 1; }

bool congruent_identity(Mat2 const& a, std::uint64_t p, int m) {
  Mat2 const id;
  for (int i = 0; i < 4; ++i) {
    if (valuation(Rational(a.e[i] - id.e[i]), p) < m) {
      return false;
    }
  }
  return true;
}

long max_abs_valuation(Mat2 const& a, std::uint64_t p) {
  long d = 0;
  for (auto const& x : a.e) {
    auto v = valuation(x, p);
    if (!v.is_infinite()) {
      d = std::max(d, std::labs(v.value()));
    }
  }
  return d;
}

PadicMatrix2 operator*(PadicMatrix2 const& a, PadicMatrix2 const& b) {
  require_same_prime(a.p_, b.p_);
  return {a.m_ * b.m_, a.p_};
}

}  // namespace padyn
