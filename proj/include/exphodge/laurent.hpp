/**
 * @file laurent.hpp
 * @brief Laurent polynomials with exact rational coefficients on an
 * n-dimensional torus.
 *
 * Terms are kept in a map ordered lexicographically *descending* on the
 * exponent vector; that order is the output order of format_laurent() and is
 * relied upon for reproducible reports.
 */
#ifndef EXPHODGE_LAURENT_HPP
#define EXPHODGE_LAURENT_HPP

#include "exphodge/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace exphodge {

class LaurentPolynomial {
 public:
  using TermMap = std::map<Exponent, Rational, std::greater<>>;

  /// Builds from a term map; zero coefficients are dropped and every exponent
  /// must have arity variables.size() >= 1. The zero polynomial is allowed
  /// here (log derivatives produce it); parse_laurent() rejects it.
  LaurentPolynomial(std::vector<std::string> variables, TermMap terms);

  /// Default names for n variables: x,y,z,w when n <= 4, else x1..xn.
  static std::vector<std::string> default_variables(std::size_t n);

  std::size_t nvars() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Exponent& alpha) const;
  std::vector<Exponent> support() const;

  /// Smallest and largest exponent per coordinate; both empty for zero.
  Exponent min_exponents() const;
  Exponent max_exponents() const;

  Rational evaluate(std::span<const Rational> point) const;

  LaurentPolynomial operator-() const;
  LaurentPolynomial operator+(const LaurentPolynomial& other) const;
  bool operator==(const LaurentPolynomial& other) const = default;

 private:
  std::vector<std::string> variables_;
  TermMap terms_;
};

/// Coefficients reduced into F_p, p < 2^31. Zero coefficients are dropped.
struct ModularLaurent {
  std::size_t nvars = 0;
  std::uint64_t prime = 0;
  std::map<Exponent, std::uint64_t, std::greater<>> terms;
};

/**
 * Parses the ASCII grammar
 *
 *   poly     := ['+'|'-'] term (('+'|'-') term)*
 *   term     := rational ['*' factor ('*' factor)*] | factor ('*' factor)*
 *   factor   := var ['^' signed-integer]
 *   rational := integer ['/' positive-integer]
 *
 * Whitespace is insignificant; variables are letters followed by optional
 * digits. With an empty `variables` list the names are inferred: if every
 * name used is one of x,y,z,w (or every name is x<k>) the defaults up to the
 * highest one used are taken, otherwise order of first appearance.
 *
 * Throws ParseError on malformed text, an unknown variable, or f = 0.
 */
LaurentPolynomial parse_laurent(std::string_view text, const std::vector<std::string>& variables = {});

/// Canonical text; parse_laurent(format_laurent(f)) reproduces the term map.
std::string format_laurent(const LaurentPolynomial& f);

/// x_i ∂f/∂x_i, i.e. α ↦ α_i·c(α). `index` is 0-based.
LaurentPolynomial log_derivative(const LaurentPolynomial& f, std::size_t index);

/// Keeps the terms whose exponent satisfies `keep`.
LaurentPolynomial restrict_terms(const LaurentPolynomial& f, const std::function<bool(const Exponent&)>& keep);

/// Throws BadPrimeError when p divides a coefficient denominator.
ModularLaurent reduce_mod_p(const LaurentPolynomial& f, std::uint64_t prime);

/// a mod p in [0, p).
std::uint64_t reduce_rational_mod_p(const Rational& a, std::uint64_t prime);

}  // namespace exphodge

#endif  // EXPHODGE_LAURENT_HPP
