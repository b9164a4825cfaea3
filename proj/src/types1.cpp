#include "padyn/types1.hpp"

#include <tuple>

namespace padyn {

std::string to_string(TypeKind k) {
  switch (k) {
    case TypeKind::Realized: return "realized";
    case TypeKind::Near: return "near";
    case TypeKind::AtInfinity: return "at_infinity";
  }
  return "?";
}

TruncType1 TruncType1::realized(Rational a) {
  a.canonicalize();
  return {TypeKind::Realized, std::move(a), std::nullopt};
}

TruncType1 TruncType1::near(Rational a, ResidueClass c) {
  a.canonicalize();
  return {TypeKind::Near, std::move(a), std::move(c)};
}

TruncType1 TruncType1::at_infinity(ResidueClass c) {
  return {TypeKind::AtInfinity, Rational(0), std::move(c)};
}

Rational const& TruncType1::base() const {
  if (kind_ == TypeKind::AtInfinity) {
    throw Error("a type at infinity has no base point");
  }
  return base_;
}

ResidueClass const& TruncType1::cls() const {
  if (!class_) {
    throw Error("a realized type has no class");
  }
  return *class_;
}

std::string TruncType1::to_string() const {
  switch (kind_) {
    case TypeKind::Realized: return "Realized(" + format_rational(base_) + ")";
    case TypeKind::Near:
      return "Near(" + format_rational(base_) + ", " + class_->to_string() + ")";
    case TypeKind::AtInfinity: return "AtInfinity(" + class_->to_string() + ")";
  }
  return "?";
}

bool operator<(TruncType1 const& a, TruncType1 const& b) {
  if (a.kind_ != b.kind_) {
    return a.kind_ < b.kind_;
  }
  if (a.base_ != b.base_) {
    return a.base_ < b.base_;
  }
  return a.class_ < b.class_;
}

ScaleLadder ScaleLadder::standard(GlobalConfig const& cfg, std::size_t rungs) {
  cfg.validate();
  std::vector<long> r;
  long const        w = cfg.valuation_window_w;
  long              x = 2 * (w + cfg.matrix_level_m) + cfg.residue_level_n + 3;
  for (std::size_t i = 0; i < rungs; ++i) {
    r.push_back(x);
    x = cfg.ladder_gap * (x + w);
  }
  return {std::move(r), cfg.ladder_gap, w};
}

ScaleLadder ScaleLadder::from_rungs(std::vector<long> rungs, long gap, long w) {
  if (gap < 1 || w < 1) {
    throw Error("ladder gap and window must be positive");
  }
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    if (rungs[i] <= w) {
      throw Error("rung " + std::to_string(rungs[i]) + " does not clear the window");
    }
    if (i > 0 && (rungs[i] <= rungs[i - 1] || rungs[i] < gap * (rungs[i - 1] + w))) {
      throw Error("rungs " + std::to_string(rungs[i - 1]) + ", " + std::to_string(rungs[i]) +
                  " violate the separation rule");
    }
  }
  return {std::move(rungs), gap, w};
}

long ScaleLadder::rung(std::size_t i) const {
  if (i >= rungs_.size()) {
    throw Error("ladder exhausted: rung " + std::to_string(i) + " requested, " +
                std::to_string(rungs_.size()) + " available");
  }
  return rungs_[i];
}

ScaleLadder ScaleLadder::with_doubled_gap() const {
  std::vector<long> r;
  if (!rungs_.empty()) {
    long x = rungs_.front();
    for (std::size_t i = 0; i < rungs_.size(); ++i) {
      r.push_back(x);
      x = 2 * gap_ * (x + w_);
    }
  }
  return from_rungs(std::move(r), 2 * gap_, w_);
}

ScaleLadder ScaleLadder::scaled(long factor) const {
  std::vector<long> r;
  for (long x : rungs_) {
    r.push_back(factor * x);
  }
  return from_rungs(std::move(r), gap_, w_);
}

long scale_exponent(long magnitude, int n) {
  long k = (magnitude + n - 1) / n;
  return k * n;
}

Rational realize_at(TruncType1 const& t, long magnitude) {
  switch (t.kind()) {
    case TypeKind::Realized: return t.base();
    case TypeKind::Near: {
      auto const& c = t.cls();
      return Rational(t.base() +
                      Rational(c.representative()) * power_rational(c.prime(), scale_exponent(magnitude, c.level())));
    }
    case TypeKind::AtInfinity: {
      auto const& c = t.cls();
      return Rational(Rational(c.representative()) *
                      power_rational(c.prime(), -scale_exponent(magnitude, c.level())));
    }
  }
  throw Error("unknown type kind");
}

Rational realize(TruncType1 const& t, std::size_t rung, ScaleLadder const& ladder) {
  return realize_at(t, ladder.rung(rung));
}

TruncType1 classify(Rational const& x, std::vector<Rational> const& bases, long w,
                    std::uint64_t p, int n) {
  for (auto const& a : bases) {
    if (x == a) {
      return TruncType1::realized(x);
    }
  }
  if (x != 0 && valuation(x, p) < -w) {
    return TruncType1::at_infinity(class_of(x, p, n));
  }
  Rational const* hit = nullptr;
  for (auto const& a : bases) {
    Rational d = x - a;
    if (valuation(d, p) > w) {
      if (hit != nullptr) {
        throw Error("window too coarse: " + format_rational(x) + " is within p^" +
                    std::to_string(w + 1) + " of both " + format_rational(*hit) + " and " +
                    format_rational(a));
      }
      hit = &a;
    }
  }
  if (hit != nullptr) {
    return TruncType1::near(*hit, class_of(Rational(x - *hit), p, n));
  }
  return TruncType1::realized(x);
}

std::vector<Rational> bases_of(TruncType1 const& t) {
  if (t.is_at_infinity()) {
    return {};
  }
  return {t.base()};
}

bool roundtrip_check(TruncType1 const& t, ScaleLadder const& ladder,
                     std::vector<Rational> const& bases, std::uint64_t p, int n) {
  for (std::size_t r = 1; r < ladder.size(); ++r) {
    if (classify(realize(t, r, ladder), bases, ladder.window(), p, n) != t) {
      return false;
    }
  }
  return true;
}

bool roundtrip_check(TruncType1 const& t, ScaleLadder const& ladder, std::uint64_t p, int n) {
  return roundtrip_check(t, ladder, bases_of(t), p, n);
}

bool separated(std::vector<Rational> const& bases, std::uint64_t p, long w) {
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      if (valuation(Rational(bases[i] - bases[j]), p) > w) {
        return false;
      }
    }
  }
  return true;
}

std::vector<TruncType1> enumerate_all_types(std::vector<Rational> const& bases,
                                            ResidueGroup const& group) {
  std::vector<TruncType1> out;
  for (auto const& b : bases) {
    out.push_back(TruncType1::realized(b));
  }
  for (auto const& b : bases) {
    for (auto const& c : group.elements()) {
      out.push_back(TruncType1::near(b, c));
    }
  }
  for (auto const& c : group.elements()) {
    out.push_back(TruncType1::at_infinity(c));
  }
  return out;
}

}  // namespace padyn
