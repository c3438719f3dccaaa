#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace coarse {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Absolute tolerance used whenever a floating-point distance takes part in a comparison.
inline constexpr double kApproxTolerance = 1e-9;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Accepts "p/q", integers and plain decimals ("0.125"); decimals are converted exactly.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, "p/q" otherwise.
std::string format_rational(const Rational& q);

double to_double(const Rational& q);
/// Throws PreconditionFailed when the result does not fit in 64 bits.
std::int64_t floor_of(const Rational& q);
std::int64_t ceil_of(const Rational& q);
std::int64_t to_int64(const Integer& v);
bool is_integer(const Rational& q);

/// A nonnegative distance: an exact rational, a floating-point value (for metrics
/// such as log2(1+|m-n|) that are irrational), or infinity (no connecting path).
class Dist {
 public:
  enum class Kind : std::uint8_t { exact, approx, infinite };

  Dist() = default;
  Dist(std::int64_t value);  // NOLINT(google-explicit-constructor)
  explicit Dist(const Rational& value);

  static Dist approx(double value);
  static Dist infinity();
  /// "inf", "p/q", integer or decimal text.
  static Dist parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::exact; }
  bool is_approx() const { return kind_ == Kind::approx; }
  bool is_infinite() const { return kind_ == Kind::infinite; }
  bool is_zero() const;

  /// Exact value; throws PreconditionFailed for approx or infinite values.
  const Rational& rational() const;
  double to_double() const;
  std::string to_string() const;

  /// Floor and ceiling; floating-point values are snapped within kApproxTolerance.
  std::int64_t floor() const;
  std::int64_t ceil() const;

  friend Dist operator+(const Dist& a, const Dist& b);
  friend Dist operator*(const Dist& a, std::int64_t k);
  friend Dist operator*(std::int64_t k, const Dist& a) { return a * k; }
  /// Ratio of two distances; the divisor must be finite and positive.
  friend Dist operator/(const Dist& a, const Dist& b);

  friend std::weak_ordering operator<=>(const Dist& a, const Dist& b);
  friend bool operator==(const Dist& a, const Dist& b);

 private:
  Kind kind_ = Kind::exact;
  Rational exact_{};
  double approx_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Dist& d);

inline const Dist& max(const Dist& a, const Dist& b) { return (a < b) ? b : a; }

}  // namespace coarse
