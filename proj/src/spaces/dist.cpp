#include "coarse/dist.hpp"

#include "coarse/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace coarse {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  if (text.empty()) throw InvalidArgument("cannot parse number: '" + std::string(whole) + "'");
  std::int64_t value = 0;
  const char* first = text.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidArgument("cannot parse number: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw PreconditionFailed("integer " + v.str() + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  return Rational(num) / Rational(den);
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string_view whole = text;
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return make_rational(parse_int(text.substr(0, slash), whole), parse_int(text.substr(slash + 1), whole));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const bool negative = text.front() == '-';
    std::string_view int_part = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
    std::string_view frac_part = text.substr(dot + 1);
    auto digits = [](std::string_view v) {
      return std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if ((int_part.empty() && frac_part.empty()) || !digits(int_part) || !digits(frac_part) || frac_part.size() > 30)
      throw InvalidArgument("cannot parse number: '" + std::string(whole) + "'");
    // leading zeros would make the string constructor read octal
    std::string all = std::string(int_part) + std::string(frac_part);
    all.erase(0, std::min(all.find_first_not_of('0'), all.size()));
    Integer num(all.empty() ? std::string("0") : all);
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_part.size()));
    Rational q(num, den);
    return negative ? Rational(-q) : q;
  }
  return make_rational(parse_int(text, whole));
}

std::string format_rational(const Rational& q) {
  std::string out = boost::multiprecision::numerator(q).str();
  if (!is_integer(q)) out += "/" + boost::multiprecision::denominator(q).str();
  return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::int64_t floor_of(const Rational& q) {
  Integer n = boost::multiprecision::numerator(q);
  Integer d = boost::multiprecision::denominator(q);
  Integer f = n / d;
  if (n % d != 0 && n < 0) --f;
  return to_int64(f);
}

std::int64_t ceil_of(const Rational& q) {
  Integer n = boost::multiprecision::numerator(q);
  Integer d = boost::multiprecision::denominator(q);
  Integer c = n / d;
  if (n % d != 0 && n > 0) ++c;
  return to_int64(c);
}

Dist::Dist(std::int64_t value) : Dist(make_rational(value)) {}

Dist::Dist(const Rational& value) : kind_(Kind::exact), exact_(value) {
  if (value < 0) throw InvalidArgument("negative distance " + format_rational(value));
}

Dist Dist::approx(double value) {
  if (!(value >= 0.0) || std::isinf(value))
    throw InvalidArgument("distance must be finite and nonnegative");
  Dist d;
  d.kind_ = Kind::approx;
  d.approx_ = value;
  return d;
}

Dist Dist::infinity() {
  Dist d;
  d.kind_ = Kind::infinite;
  return d;
}

Dist Dist::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return infinity();
  return Dist(parse_rational(text));
}

bool Dist::is_zero() const {
  switch (kind_) {
    case Kind::exact: return exact_ == 0;
    case Kind::approx: return approx_ <= kApproxTolerance;
    case Kind::infinite: return false;
  }
  return false;
}

const Rational& Dist::rational() const {
  if (kind_ != Kind::exact) throw PreconditionFailed("distance " + to_string() + " is not an exact rational");
  return exact_;
}

double Dist::to_double() const {
  switch (kind_) {
    case Kind::exact: return coarse::to_double(exact_);
    case Kind::approx: return approx_;
    case Kind::infinite: return HUGE_VAL;
  }
  return 0.0;
}

std::string Dist::to_string() const {
  switch (kind_) {
    case Kind::exact: return format_rational(exact_);
    case Kind::approx: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", approx_);
      return buf;
    }
    case Kind::infinite: return "inf";
  }
  return {};
}

std::int64_t Dist::floor() const {
  switch (kind_) {
    case Kind::exact: return floor_of(exact_);
    case Kind::approx: {
      double r = std::round(approx_);
      if (std::abs(approx_ - r) <= kApproxTolerance) return static_cast<std::int64_t>(r);
      return static_cast<std::int64_t>(std::floor(approx_));
    }
    case Kind::infinite: break;
  }
  throw PreconditionFailed("floor of an infinite distance");
}

std::int64_t Dist::ceil() const {
  switch (kind_) {
    case Kind::exact: return ceil_of(exact_);
    case Kind::approx: {
      double r = std::round(approx_);
      if (std::abs(approx_ - r) <= kApproxTolerance) return static_cast<std::int64_t>(r);
      return static_cast<std::int64_t>(std::ceil(approx_));
    }
    case Kind::infinite: break;
  }
  throw PreconditionFailed("ceiling of an infinite distance");
}

Dist operator+(const Dist& a, const Dist& b) {
  if (a.is_infinite() || b.is_infinite()) return Dist::infinity();
  if (a.is_exact() && b.is_exact()) return Dist(a.exact_ + b.exact_);
  return Dist::approx(a.to_double() + b.to_double());
}

Dist operator*(const Dist& a, std::int64_t k) {
  if (k < 0) throw InvalidArgument("negative distance multiplier");
  if (a.is_infinite()) return k == 0 ? Dist(0) : Dist::infinity();
  if (a.is_exact()) return Dist(a.exact_ * k);
  return Dist::approx(a.approx_ * static_cast<double>(k));
}

Dist operator/(const Dist& a, const Dist& b) {
  if (b.is_infinite() || b.is_zero()) throw PreconditionFailed("division by " + b.to_string());
  if (a.is_infinite()) return Dist::infinity();
  if (a.is_exact() && b.is_exact()) return Dist(a.exact_ / b.exact_);
  return Dist::approx(a.to_double() / b.to_double());
}

std::weak_ordering operator<=>(const Dist& a, const Dist& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::weak_ordering::equivalent;
    return a.is_infinite() ? std::weak_ordering::greater : std::weak_ordering::less;
  }
  if (a.is_exact() && b.is_exact()) {
    if (a.exact_ < b.exact_) return std::weak_ordering::less;
    if (b.exact_ < a.exact_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  double x = a.to_double();
  double y = b.to_double();
  if (std::abs(x - y) <= kApproxTolerance) return std::weak_ordering::equivalent;
  return x < y ? std::weak_ordering::less : std::weak_ordering::greater;
}

bool operator==(const Dist& a, const Dist& b) { return (a <=> b) == 0; }

std::ostream& operator<<(std::ostream& os, const Dist& d) { return os << d.to_string(); }

}  // namespace coarse
