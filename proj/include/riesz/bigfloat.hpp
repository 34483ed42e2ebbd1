#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace riesz {

/// Process-wide working precision in bits (default 200). Values created
/// without an explicit precision pick this up at construction time.
int working_precision_bits();
void set_working_precision_bits(int bits);

/// Value-semantic owner of an MPFR number with a fixed precision.
class BigFloat {
 public:
  BigFloat();
  explicit BigFloat(int precision_bits);
  BigFloat(long value, int precision_bits);
  BigFloat(const mpq_class& value, int precision_bits);

  /// Parses a decimal literal ("0.4142135623...", "-1.5e-3") at the given precision.
  static BigFloat from_string(std::string_view text, int precision_bits);
  static BigFloat from_double(double value, int precision_bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  int precision() const { return static_cast<int>(mpfr_get_prec(value_)); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Shortest decimal string that reads back to the identical value.
  std::string to_string() const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator+=(const mpq_class& rhs);
  BigFloat& operator-=(const mpq_class& rhs);
  BigFloat& operator*=(const mpq_class& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
  friend BigFloat operator+(BigFloat lhs, const mpq_class& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const mpq_class& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const mpq_class& rhs) { return lhs *= rhs; }
  BigFloat operator-() const;

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

 private:
  mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat floor(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
/// 2^exponent at the given precision.
BigFloat ldexp_one(long exponent, int precision_bits);
/// Integer part of a floor'ed value; the value must be integral.
mpz_class to_mpz(const BigFloat& integral);

}  // namespace riesz
