#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

#include "seqwalk/error.hpp"

namespace seqwalk {

/// Exact field element: a rational number (characteristic 0) or a residue
/// modulo a prime p. A characteristic-0 value combined with a residue is
/// mapped into F_p first, so integer literals work in every field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  static Scalar zero(std::uint32_t p) { return p == 0 ? Scalar() : residue(0, p); }
  static Scalar one(std::uint32_t p) { return p == 0 ? Scalar(1) : residue(1, p); }

  static Scalar residue(std::int64_t r, std::uint32_t p) {
    Scalar s;
    s.p_ = p;
    std::int64_t m = r % static_cast<std::int64_t>(p);
    if (m < 0) m += p;
    s.r_ = static_cast<std::uint64_t>(m);
    return s;
  }

  /// Maps a rational into the given field (identity for p == 0).
  static Scalar in_field(const mpq_class& q, std::uint32_t p) {
    if (p == 0) return Scalar(q);
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (den == 0) throw Error(ErrorCode::FieldMismatch, "denominator divisible by field characteristic");
    if (num < 0) num += p;
    Scalar n = residue(static_cast<std::int64_t>(num.get_si()), p);
    Scalar d = residue(static_cast<std::int64_t>(den.get_si()), p);
    return n / d;
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  bool is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }
  bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }
  const mpq_class& rational() const { return q_; }
  std::uint64_t residue_value() const { return r_; }

  Scalar operator-() const {
    if (p_ == 0) return Scalar(mpq_class(-q_));
    return residue(r_ == 0 ? 0 : static_cast<std::int64_t>(p_ - r_), p_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    auto [x, y] = unify(a, b);
    if (x.p_ == 0) return Scalar(mpq_class(x.q_ + y.q_));
    return residue(static_cast<std::int64_t>((x.r_ + y.r_) % x.p_), x.p_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    auto [x, y] = unify(a, b);
    if (x.p_ == 0) return Scalar(mpq_class(x.q_ * y.q_));
    return residue(static_cast<std::int64_t>((x.r_ * y.r_) % x.p_), x.p_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    auto [x, y] = unify(a, b);
    if (y.is_zero()) throw std::domain_error("division by zero scalar");
    if (x.p_ == 0) return Scalar(mpq_class(x.q_ / y.q_));
    return x * y.inverse_mod();
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    auto [x, y] = unify(a, b);
    return x.p_ == 0 ? x.q_ == y.q_ : x.r_ == y.r_;
  }

  std::string to_string() const {
    if (p_ != 0) return std::to_string(r_);
    return q_.get_str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static std::pair<Scalar, Scalar> unify(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return {a, b};
    if (a.p_ == 0) return {in_field(a.q_, b.p_), b};
    if (b.p_ == 0) return {a, in_field(b.q_, a.p_)};
    throw Error(ErrorCode::FieldMismatch, "scalars from different prime fields");
  }

  Scalar inverse_mod() const {
    // Fermat: r^(p-2) mod p
    std::uint64_t base = r_, e = p_ - 2, acc = 1;
    while (e > 0) {
      if (e & 1) acc = (acc * base) % p_;
      base = (base * base) % p_;
      e >>= 1;
    }
    return residue(static_cast<std::int64_t>(acc), p_);
  }

  std::uint32_t p_ = 0;
  std::uint64_t r_ = 0;
  mpq_class q_;
};

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace seqwalk
