#include "exphodge/rational.hpp"

#include <limits>

namespace exphodge {

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_from_string(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
  const Integer num(std::string(text.substr(0, slash)));
  const Integer den(std::string(text.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(num, den);
}

Integer floor(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  Integer quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

Integer ceil(const Rational& q) { return -floor(-q); }

std::int64_t to_int64(const Integer& z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + z.str());
  return z.convert_to<std::int64_t>();
}

DimensionError::DimensionError(int dim, std::size_t nvars)
    : std::runtime_error("dim Δ(f) = " + std::to_string(dim) + " < n = " + std::to_string(nvars) +
                         "; split off a subtorus and reduce to the full-dimensional case"),
      dim_(dim),
      nvars_(nvars) {}

}  // namespace exphodge
