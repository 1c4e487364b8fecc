/**
 * @file spectrum.hpp
 * @brief The irregular Hodge spectrum of H^n by two independent routes, the
 * checks tying them together, and the full analysis report.
 *
 * Euler route: when the graded pieces have cohomology only in degree n,
 *   h^λ = (−1)^n Σ_p (−1)^p C(n,p) N(p − λ),
 * with N(c) the number of lattice points of weight exactly c.
 *
 * Rank route: h^λ = dim Im(H^n(F^λ)) − dim Im(H^n(F^{λ'})), λ' the next
 * jump candidate above λ, from exact ranks.
 */
#ifndef EXPHODGE_SPECTRUM_HPP
#define EXPHODGE_SPECTRUM_HPP

#include "exphodge/curve.hpp"
#include "exphodge/derham.hpp"
#include "exphodge/nondegen.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exphodge {

struct HodgeSpectrum {
  std::size_t degree = 0;
  std::vector<std::pair<Rational, std::size_t>> entries;  // λ ascending, multiplicity > 0

  std::size_t total() const;
  /// Multiplicity at λ (0 when λ is not a jump).
  std::size_t at(const Rational& lambda) const;
  bool operator==(const HodgeSpectrum&) const = default;
  /// "{(0,1),(1/2,1),(1,1)}"
  std::string str() const;
};

/// {p − w(α)} ∩ [0, n] over p = 0..n and α with w(α) ≤ p, sorted.
std::vector<Rational> jump_candidates(const NewtonPolytope& polytope);
std::vector<Rational> jump_candidates(const LaurentPolynomial& f);

/// Throws IntegrityError("negative graded dimension ...") if some h^λ < 0.
HodgeSpectrum spectrum_euler(const LaurentPolynomial& f);

HodgeSpectrum spectrum_rank(const TwistedDeRham& complex, unsigned threads = 1);
HodgeSpectrum spectrum_rank(const LaurentPolynomial& f, unsigned threads = 1);

enum class CheckStatus { pass, fail, not_applicable };
std::string to_string(CheckStatus status);

struct CheckResult {
  CheckStatus status = CheckStatus::not_applicable;
  std::string detail;
  bool passed() const { return status == CheckStatus::pass; }
};

/// Euler route = rank route, and every graded piece has cohomology only in
/// degree n.
CheckResult check_degeneration(const LaurentPolynomial& f, unsigned threads = 1);

/// h^λ = h^{n−λ} on the rank route, and spectrum_rank(−f) = spectrum_rank(f).
/// Not applicable unless the origin is interior to Δ(f).
CheckResult check_symmetry(const LaurentPolynomial& f, unsigned threads = 1);

enum class SpectrumMode { euler, rank, both };
SpectrumMode parse_mode(const std::string& text);

struct AnalysisOptions {
  SpectrumMode mode = SpectrumMode::both;
  NondegenConfig nondegen;
  unsigned threads = 1;
  bool curve = true;  // run the curve comparison and duality when n = 1
  std::optional<std::int64_t> truncation;  // Čech truncation override
};

struct AnalysisReport {
  AnalysisReport(LaurentPolynomial f, NewtonPolytope p) : polynomial(std::move(f)), polytope(std::move(p)) {}

  LaurentPolynomial polynomial;
  NewtonPolytope polytope;
  Integer normalized_volume;
  bool origin_interior = false;
  NondegeneracyReport nondegeneracy;
  std::vector<std::size_t> betti;
  std::optional<HodgeSpectrum> euler;
  std::optional<HodgeSpectrum> rank;
  bool spectrum_supported = true;
  CheckResult degeneration;
  CheckResult symmetry;
  std::optional<CurveFiltrationReport> curve_comparison;
  std::optional<CurveDualityReport> curve_duality;
  std::vector<std::string> warnings;
  double elapsed_ms = 0;

  /// True when a check that applies came back as a failure.
  bool has_failed_check() const;
};

/// Polytope, nondegeneracy, Betti numbers, spectra and checks. Throws
/// DimensionError when dim Δ(f) < n.
AnalysisReport analyze(const LaurentPolynomial& f, const AnalysisOptions& options = {});

}  // namespace exphodge

#endif  // EXPHODGE_SPECTRUM_HPP
