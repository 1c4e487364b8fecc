/**
 * @file rational.hpp
 * @brief Exact integer/rational scalars and the library's error types.
 */
#ifndef EXPHODGE_RATIONAL_HPP
#define EXPHODGE_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exphodge {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Exponent vector of a Laurent monomial, one entry per torus variable.
using Exponent = std::vector<std::int64_t>;

/// Reduced "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q" with an optional leading sign.
Rational rational_from_string(std::string_view text);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

std::int64_t to_int64(const Integer& z);

// ---------------------------------------------------------------------------
// Errors. Every failure the CLI maps to an exit code has its own type.

/// Malformed polynomial text; `position` is a 0-based character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// dim Δ(f) < n.
class DimensionError : public std::runtime_error {
 public:
  DimensionError(int dim, std::size_t nvars);
  int dim() const noexcept { return dim_; }
  std::size_t nvars() const noexcept { return nvars_; }

 private:
  int dim_;
  std::size_t nvars_;
};

/// A result contradicted an identity that must hold (negative graded
/// dimension, unstable truncation, failed stabilization).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coefficient denominator vanishes modulo the chosen prime.
class BadPrimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Gröbner computation hit its pair-queue cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace exphodge

#endif  // EXPHODGE_RATIONAL_HPP
