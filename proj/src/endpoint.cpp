#include "riesz/endpoint.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "riesz/error.hpp"

namespace riesz {

namespace {

mpz_class pow10(unsigned long exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

mpq_class parse_decimal_exact(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::size_t used = 0;
    try {
      exponent = std::stol(std::string(text.substr(pos)), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0) throw Error(ErrorKind::InvalidInput, "bad exponent in '" + std::string(text) + "'");
    pos += used;
  }
  if (!any_digit || pos != text.size()) {
    throw Error(ErrorKind::InvalidInput, "not an exact rational: '" + std::string(text) + "'");
  }
  mpq_class value{mpz_class(digits, 10)};
  const long shift = exponent - fraction_digits;
  if (shift >= 0) {
    value *= pow10(static_cast<unsigned long>(shift));
  } else {
    value /= pow10(static_cast<unsigned long>(-shift));
  }
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

}  // namespace

BigFloat ambiguity_threshold(int precision_bits) { return ldexp_one(-(precision_bits / 2), precision_bits); }

Endpoint::Endpoint(mpq_class rational) : rational_(std::move(rational)) { rational_.canonicalize(); }

Endpoint::Endpoint(mpq_class rational, BigFloat irrational)
    : rational_(std::move(rational)), irrational_(std::move(irrational)) {
  rational_.canonicalize();
  normalize();
}

void Endpoint::normalize() {
  if (irrational_ && irrational_->is_zero()) irrational_.reset();
}

mpq_class Endpoint::parse_rational(std::string_view text) {
  if (text.find('/') != std::string_view::npos) {
    mpq_class value;
    if (value.set_str(std::string(text), 10) != 0 || value.get_den() == 0) {
      throw Error(ErrorKind::InvalidInput, "not a rational 'p/q': '" + std::string(text) + "'");
    }
    value.canonicalize();
    return value;
  }
  return parse_decimal_exact(text);
}

Endpoint Endpoint::parse(std::string_view rational, std::optional<std::string_view> irrational, int precision_bits) {
  mpq_class r = parse_rational(rational);
  if (!irrational) return Endpoint(std::move(r));
  return Endpoint(std::move(r), BigFloat::from_string(*irrational, precision_bits));
}

Endpoint Endpoint::from_decimal(std::string_view text, int precision_bits) {
  return Endpoint(mpq_class(0), BigFloat::from_string(text, precision_bits));
}

Endpoint Endpoint::from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::InvalidInput, "non-finite value");
  return Endpoint(mpq_class(value));
}

BigFloat Endpoint::value(int precision_bits) const {
  BigFloat out(rational_, precision_bits);
  if (irrational_) out += *irrational_;
  return out;
}

double Endpoint::to_double() const {
  if (!irrational_) return rational_.get_d();
  return value(std::max(precision(), 128)).to_double();
}

Endpoint& Endpoint::operator+=(const mpq_class& shift) {
  rational_ += shift;
  return *this;
}

Endpoint& Endpoint::operator-=(const mpq_class& shift) {
  rational_ -= shift;
  return *this;
}

Endpoint Endpoint::scaled(const mpq_class& factor) const {
  Endpoint out(rational_ * factor);
  if (irrational_) {
    out.irrational_ = *irrational_ * factor;
    out.normalize();
  }
  return out;
}

Endpoint operator+(const Endpoint& a, const Endpoint& b) {
  Endpoint out(a.rational_ + b.rational_);
  if (a.irrational_ && b.irrational_) {
    out.irrational_ = *a.irrational_ + *b.irrational_;
  } else if (a.irrational_) {
    out.irrational_ = *a.irrational_;
  } else if (b.irrational_) {
    out.irrational_ = *b.irrational_;
  }
  out.normalize();
  return out;
}

Endpoint Endpoint::operator-() const {
  Endpoint out(-rational_);
  if (irrational_) out.irrational_ = -*irrational_;
  return out;
}

Endpoint operator-(const Endpoint& a, const Endpoint& b) {
  if (same_irrational(a, b)) return Endpoint(a.rational_ - b.rational_);
  return a + (-b);
}

bool same_irrational(const Endpoint& a, const Endpoint& b) {
  if (!a.irrational_ && !b.irrational_) return true;
  if (!a.irrational_ || !b.irrational_) return false;
  return *a.irrational_ == *b.irrational_;
}

std::strong_ordering operator<=>(const Endpoint& a, const Endpoint& b) {
  if (same_irrational(a, b)) {
    const int c = cmp(a.rational_, b.rational_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int precision = std::min(a.precision(), b.precision());
  BigFloat diff(a.rational_ - b.rational_, precision + 64);
  if (a.irrational_) diff += *a.irrational_;
  if (b.irrational_) diff -= *b.irrational_;
  if (abs(diff) < ambiguity_threshold(precision)) {
    throw Error(ErrorKind::AmbiguousEndpoint,
                "cannot order " + a.to_string() + " and " + b.to_string() + " at " + std::to_string(precision) + " bits");
  }
  return diff.sign() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Endpoint::to_string() const {
  if (!irrational_) return rational_.get_str();
  return rational_.get_str() + " + " + irrational_->to_string();
}

mpz_class floor(const Endpoint& x) {
  const mpq_class& r = x.rational_part();
  mpz_class rational_floor;
  mpz_fdiv_q(rational_floor.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  if (x.is_rational()) return rational_floor;
  const int precision = x.precision();
  BigFloat v = x.value(precision + 64);
  BigFloat fl = floor(v);
  BigFloat below = v - fl;
  BigFloat above = fl + mpq_class(1);
  above -= v;
  const BigFloat threshold = ambiguity_threshold(precision);
  if (below < threshold || above < threshold) {
    throw Error(ErrorKind::AmbiguousEndpoint, "value " + x.to_string() + " is too close to an integer");
  }
  return to_mpz(fl);
}

Endpoint frac(const Endpoint& x) { return x - mpq_class(floor(x)); }

double frac(double x) {
  const double r = x - std::floor(x);
  // Tiny negative inputs round up to exactly 1.
  return r < 1.0 ? r : std::nextafter(1.0, 0.0);
}

}  // namespace riesz
