#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace periodic_homology {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Element of the prime field Z/PZ. P must be prime and below 2^31.
template <std::uint32_t P>
class Zp {
  static_assert(P >= 2 && P < (1u << 31), "modulus must fit in 31 bits");

 public:
  constexpr Zp() = default;
  constexpr Zp(long long value) : value_(reduce(value)) {}

  constexpr std::uint32_t value() const { return value_; }
  static constexpr std::uint32_t modulus() { return P; }

  constexpr Zp& operator+=(Zp rhs) {
    value_ += rhs.value_;
    if (value_ >= P) value_ -= P;
    return *this;
  }
  constexpr Zp& operator-=(Zp rhs) {
    value_ = value_ >= rhs.value_ ? value_ - rhs.value_ : value_ + P - rhs.value_;
    return *this;
  }
  constexpr Zp& operator*=(Zp rhs) {
    value_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(value_) * rhs.value_ % P);
    return *this;
  }
  constexpr Zp& operator/=(Zp rhs) { return *this *= rhs.inverse(); }

  friend constexpr Zp operator+(Zp a, Zp b) { return a += b; }
  friend constexpr Zp operator-(Zp a, Zp b) { return a -= b; }
  friend constexpr Zp operator*(Zp a, Zp b) { return a *= b; }
  friend constexpr Zp operator/(Zp a, Zp b) { return a /= b; }
  constexpr Zp operator-() const { return Zp{} - *this; }
  friend constexpr bool operator==(Zp a, Zp b) { return a.value_ == b.value_; }

  constexpr Zp inverse() const {
    // Fermat: a^(P-2).
    std::uint64_t result = 1;
    std::uint64_t base = value_;
    std::uint32_t exponent = P - 2;
    while (exponent > 0) {
      if (exponent & 1u) result = result * base % P;
      base = base * base % P;
      exponent >>= 1;
    }
    Zp out;
    out.value_ = static_cast<std::uint32_t>(result);
    return out;
  }

 private:
  static constexpr std::uint32_t reduce(long long value) {
    long long r = value % static_cast<long long>(P);
    if (r < 0) r += P;
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t value_ = 0;
};

/// Uniform access to the exact scalar types used for chain coefficients.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational from_int(long long value) { return Rational(static_cast<long>(value)); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static std::string to_string(const Rational& x) { return x.get_str(); }
  static std::string name() { return "rational"; }
  static constexpr std::uint32_t characteristic() { return 0; }
};

template <std::uint32_t P>
struct FieldTraits<Zp<P>> {
  static Zp<P> from_int(long long value) { return Zp<P>(value); }
  static bool is_zero(const Zp<P>& x) { return x.value() == 0; }
  static std::string to_string(const Zp<P>& x) {
    // Symmetric representative reads better for orientation signs.
    const std::uint32_t v = x.value();
    if (v > P / 2) return "-" + std::to_string(P - v);
    return std::to_string(v);
  }
  static std::string name() { return "F_" + std::to_string(P); }
  static constexpr std::uint32_t characteristic() { return P; }
};

template <class F>
inline bool is_zero(const F& x) {
  return FieldTraits<F>::is_zero(x);
}

template <class F>
inline F field_from_int(long long value) {
  return FieldTraits<F>::from_int(value);
}

}  // namespace periodic_homology
