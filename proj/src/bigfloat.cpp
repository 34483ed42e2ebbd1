#include "riesz/bigfloat.hpp"

#include <atomic>
#include <memory>
#include <string>

#include "riesz/error.hpp"

namespace riesz {

namespace {

std::atomic<int> g_precision_bits{200};

}  // namespace

int working_precision_bits() { return g_precision_bits.load(std::memory_order_relaxed); }

void set_working_precision_bits(int bits) {
  if (bits < 64 || bits > 1 << 16) {
    throw Error(ErrorKind::InvalidInput, "precision must lie in [64, 65536] bits, got " + std::to_string(bits));
  }
  g_precision_bits.store(bits, std::memory_order_relaxed);
}

BigFloat::BigFloat() : BigFloat(working_precision_bits()) {}

BigFloat::BigFloat(int precision_bits) {
  mpfr_init2(value_, precision_bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, int precision_bits) : BigFloat(precision_bits) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, int precision_bits) : BigFloat(precision_bits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat BigFloat::from_string(std::string_view text, int precision_bits) {
  BigFloat out(precision_bits);
  std::string buffer(text);
  if (buffer.empty()) throw Error(ErrorKind::InvalidInput, "empty decimal string");
  char* end = nullptr;
  mpfr_strtofr(out.value_, buffer.c_str(), &end, 10, MPFR_RNDN);
  if (end != buffer.c_str() + buffer.size() || !mpfr_number_p(out.value_)) {
    throw Error(ErrorKind::InvalidInput, "not a decimal number: '" + buffer + "'");
  }
  return out;
}

BigFloat BigFloat::from_double(double value, int precision_bits) {
  BigFloat out(precision_bits);
  mpfr_set_d(out.value_, value, MPFR_RNDN);
  return out;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Leaves `other` as a valid zero with the same precision.
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string() const {
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exponent = 0;
  std::unique_ptr<char, void (*)(char*)> digits(mpfr_get_str(nullptr, &exponent, 10, 0, value_, MPFR_RNDN),
                                                mpfr_free_str);
  std::string mantissa(digits.get());
  std::string sign;
  if (!mantissa.empty() && mantissa.front() == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  // value = 0.<mantissa> * 10^exponent
  return sign + "0." + mantissa + "e" + std::to_string(exponent);
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator+=(const mpq_class& rhs) {
  mpfr_add_q(value_, value_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const mpq_class& rhs) {
  mpfr_sub_q(value_, value_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const mpq_class& rhs) {
  mpfr_mul_q(value_, value_, rhs.get_mpq_t(), MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigFloat abs(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_abs(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat floor(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

BigFloat ldexp_one(long exponent, int precision_bits) {
  BigFloat out(precision_bits);
  mpfr_set_ui_2exp(out.get(), 1, exponent, MPFR_RNDN);
  return out;
}

mpz_class to_mpz(const BigFloat& integral) {
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), integral.get(), MPFR_RNDN);
  return out;
}

}  // namespace riesz
