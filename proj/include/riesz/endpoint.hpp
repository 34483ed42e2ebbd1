#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "riesz/bigfloat.hpp"

namespace riesz {

/// A real number held as `rational + irrational`, where the rational part is
/// exact and the optional irrational summand is a high-precision float.
///
/// Translating or scaling by a rational keeps the irrational summand's bits
/// unchanged (translation) or scales it once (scaling), so endpoints that
/// derive from the same source compare exactly. Comparing two values whose
/// irrational parts differ is decided numerically; if they are closer than
/// 2^(-precision/2) the comparison throws `AmbiguousEndpoint`.
class Endpoint {
 public:
  Endpoint() = default;
  Endpoint(long value) : rational_(value) {}  // NOLINT: implicit by design of literals
  Endpoint(mpq_class rational);               // NOLINT
  Endpoint(mpq_class rational, BigFloat irrational);

  /// "p/q", "p" or an exact decimal such as "0.25".
  static mpq_class parse_rational(std::string_view text);
  static Endpoint parse(std::string_view rational, std::optional<std::string_view> irrational,
                        int precision_bits = working_precision_bits());
  /// A decimal string taken as a purely irrational high-precision value.
  static Endpoint from_decimal(std::string_view text, int precision_bits = working_precision_bits());
  static Endpoint from_double(double value);

  const mpq_class& rational_part() const { return rational_; }
  const std::optional<BigFloat>& irrational_part() const { return irrational_; }
  bool is_rational() const { return !irrational_.has_value(); }
  int precision() const { return irrational_ ? irrational_->precision() : working_precision_bits(); }

  BigFloat value(int precision_bits) const;
  BigFloat value() const { return value(precision() + 64); }
  double to_double() const;

  Endpoint& operator+=(const mpq_class& shift);
  Endpoint& operator-=(const mpq_class& shift);
  Endpoint scaled(const mpq_class& factor) const;

  friend Endpoint operator+(Endpoint e, const mpq_class& shift) { return e += shift; }
  friend Endpoint operator-(Endpoint e, const mpq_class& shift) { return e -= shift; }
  friend Endpoint operator+(const Endpoint& a, const Endpoint& b);
  friend Endpoint operator-(const Endpoint& a, const Endpoint& b);
  Endpoint operator-() const;

  /// True when both irrational parts are absent or bit-identical, in which
  /// case the difference of the two values is exactly rational.
  friend bool same_irrational(const Endpoint& a, const Endpoint& b);

  friend std::strong_ordering operator<=>(const Endpoint& a, const Endpoint& b);
  friend bool operator==(const Endpoint& a, const Endpoint& b) { return (a <=> b) == 0; }

  /// Human-readable form, e.g. "1/3" or "-1 + 1.41421...".
  std::string to_string() const;

 private:
  void normalize();

  mpq_class rational_{0};
  std::optional<BigFloat> irrational_;
};

/// floor(x); throws AmbiguousEndpoint when x is within tolerance of an integer
/// without being exactly integral.
mpz_class floor(const Endpoint& x);

/// {x} = x - floor(x), kept in exact-plus-irrational form.
Endpoint frac(const Endpoint& x);

/// {x} = x - floor(x) for ordinary doubles.
double frac(double x);

/// 2^(-precision/2): the comparison ambiguity threshold for a given precision.
BigFloat ambiguity_threshold(int precision_bits);

}  // namespace riesz
