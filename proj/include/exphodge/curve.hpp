/**
 * @file curve.hpp
 * @brief The one-variable case on P^1 with S = {0, ∞}: Čech hypercohomology
 * of two-term complexes [O(D0) → Ω̌¹(D1)], and the filtrations on H¹ built
 * from them.
 *
 * Ω̌¹ = Ω¹(log S) is trivialized by dlog x, so every sheaf is O(D) for a
 * divisor D = m0·[0] + m_inf·[∞] and a section g·dlog x is stored as g. In
 * this frame ∇(x^k) = k·x^k + Σ_β c(β)·β·x^{k+β}.
 *
 * Cover U₀ = P¹∖∞, U₁ = P¹∖0. Sections of O(D): x^k with k ≥ −m0 on U₀,
 * k ≤ m_inf on U₁, any k on U₀₁. The total complex is
 *
 *   T⁰ = C⁰(K⁰),  T¹ = C¹(K⁰) ⊕ C⁰(K¹),  T² = C¹(K¹),
 *   (a, b) ↦ (b − a, ∇a, ∇b),  (c, p, q) ↦ q − p − ∇c.
 *
 * Truncation: K⁰ components keep |k| ≤ B, K¹ components |k| ≤ B + e where e
 * is the largest pole order of f. This is a subcomplex, and when B bounds
 * every divisor coefficient the quotient is acyclic (the U₀₁ part of K⁰
 * cancels the chart parts term by term), so the truncation is exact.
 *
 * All models with the same B and e share one coordinate frame, so cocycles
 * of a subcomplex can be compared directly inside a larger model.
 */
#ifndef EXPHODGE_CURVE_HPP
#define EXPHODGE_CURVE_HPP

#include "exphodge/laurent.hpp"
#include "exphodge/linalg.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace exphodge {

struct PointDivisor {
  std::int64_t m0 = 0;
  std::int64_t m_inf = 0;

  PointDivisor operator+(const PointDivisor& o) const { return {m0 + o.m0, m_inf + o.m_inf}; }
  PointDivisor operator-(const PointDivisor& o) const { return {m0 - o.m0, m_inf - o.m_inf}; }
  auto operator<=>(const PointDivisor&) const = default;
  std::string str() const;
};

inline constexpr PointDivisor kBoundary{1, 1};  // S = [0] + [∞]

/// P: pole orders of f at 0 and ∞. Requires one variable.
PointDivisor pole_divisor(const LaurentPolynomial& f);
/// red P.
PointDivisor reduced(const PointDivisor& d);
/// ⌊c·D⌋ and ⌈c·D⌉ coefficientwise.
PointDivisor floor_multiple(const Rational& c, const PointDivisor& d);
PointDivisor ceil_multiple(const Rational& c, const PointDivisor& d);

/// [O(degree0) → Ω̌¹(degree1)]; an absent term is the zero sheaf.
struct TwoTermComplex {
  std::optional<PointDivisor> degree0;
  std::optional<PointDivisor> degree1;
  LaurentPolynomial connection;  // may be zero (untwisted fixture)
};

/// Largest pole order of the connection; 0 for the zero polynomial.
std::int64_t connection_spread(const LaurentPolynomial& f);

/// 4·(m0 + m_inf + 2) + 10 over the largest absolute coefficients present.
std::int64_t default_truncation(const TwoTermComplex& complex);

/// Throws std::invalid_argument unless ∇ maps O(degree0) into Ω̌¹(degree1)
/// on both charts.
void check_connection_compatible(const TwoTermComplex& complex);

/// Truncated Čech total complex and its cohomology.
class CechModel {
 public:
  CechModel(const TwoTermComplex& complex, std::int64_t truncation);

  std::int64_t truncation() const noexcept { return truncation_; }
  std::int64_t spread() const noexcept { return spread_; }
  /// dim H^i, i = 0, 1, 2.
  const std::array<std::size_t, 3>& dims() const noexcept { return dims_; }
  std::size_t h(std::size_t i) const { return dims_.at(i); }

  /// Matrices in local coordinates; d(0): T⁰ → T¹, d(1): T¹ → T².
  const SparseMatrix& differential(std::size_t i) const { return d_.at(i); }
  /// Frame coordinate of each local coordinate of T^i.
  const std::vector<std::size_t>& frame(std::size_t i) const { return frame_.at(i); }

  /// Basis of Z¹ in frame coordinates.
  std::vector<SparseVector> cocycles() const;
  /// B¹ = d(T⁰) in frame coordinates.
  const EchelonSpace& coboundaries() const noexcept { return boundaries_; }

  /// dim of the image of span(vectors) in H¹ of this model; the vectors must
  /// be cocycles in frame coordinates.
  std::size_t image_dimension(const std::vector<SparseVector>& vectors) const;

  /// Frame coordinate of x^k in T¹ component c: 0 = C¹(K⁰), 1 = K¹ on U₀,
  /// 2 = K¹ on U₁.
  std::size_t frame_index_t1(std::size_t component, std::int64_t k) const;

 private:
  std::int64_t truncation_;
  std::int64_t spread_;
  std::array<std::size_t, 3> dims_{};
  std::array<SparseMatrix, 2> d_;
  std::array<std::vector<std::size_t>, 3> frame_;
  EchelonSpace boundaries_;
};

/**
 * Builds the model at B (default_truncation() when omitted) and at B + 5 and
 * throws IntegrityError("truncation unstable") if the dimensions differ.
 */
CechModel cech_hypercohomology(const TwoTermComplex& complex, std::optional<std::int64_t> truncation = {});

struct FiltrationStep {
  Rational lambda;
  std::size_t dim = 0;
  bool operator==(const FiltrationStep&) const = default;
};
using CurveFiltration = std::vector<FiltrationStep>;

/// 0, 1, and the multiples of 1/e in [0,1] for each nonzero pole order e.
std::vector<Rational> curve_jumps(const LaurentPolynomial& f);

/// F^λ: [O(⌊−λP⌋) → Ω̌¹(⌊(1−λ)P⌋)], the degree-0 term dropped for λ > 0.
TwoTermComplex newton_level(const LaurentPolynomial& f, const Rational& lambda);
/// Deligne's 𝔉^λ in the log frame (degree-0 term absent for λ > 0).
TwoTermComplex deligne_level(const LaurentPolynomial& f, const Rational& lambda);
/// F̌^λ = F^λ(−T), T = S − red P.
TwoTermComplex compact_level(const LaurentPolynomial& f, const Rational& lambda);

// The filtration routines below share one truncation B across the ambient
// and all levels; by default the largest default_truncation() among them.

/// dim of F^λH¹ in H¹ of the F⁰ level, one entry per jump.
CurveFiltration newton_filtration_on_H1(const LaurentPolynomial& f, std::optional<std::int64_t> truncation = {});
/// dim of 𝔉^λH¹ in H¹ of the stabilized ambient 𝔉^{−M}.
CurveFiltration deligne_filtration_on_H1(const LaurentPolynomial& f, std::optional<std::int64_t> truncation = {});
/// dim of F̌^λH¹_c in H¹ of the F̌⁰ level.
CurveFiltration compact_filtration_on_H1(const LaurentPolynomial& f, std::optional<std::int64_t> truncation = {});

/// Graded dimensions dim F^λ − dim F^{next}, with F = 0 past the last jump.
std::vector<std::pair<Rational, std::size_t>> graded_dims(const CurveFiltration& filtration);

struct CurveJumpComparison {
  Rational lambda;
  std::size_t newton = 0;   // dim F^λH¹
  std::size_t deligne = 0;  // dim 𝔉^λH¹
  std::size_t toric = 0;    // dim of the toric level-λ image
  std::size_t compact = 0;  // dim F̌^λH¹_c
  bool deligne_injective = false;
  bool subspaces_agree = false;
};

struct CurveFiltrationReport {
  std::vector<Rational> jumps;
  std::vector<CurveJumpComparison> rows;
  int ambient_level = 0;  // M with ambient 𝔉^{−M}
  std::int64_t truncation = 0;
  std::size_t h1 = 0;
  bool dims_agree = false;
  bool subspaces_agree = false;
  bool deligne_injective = false;
  bool nonincreasing = false;
  bool ok() const { return dims_agree && subspaces_agree && deligne_injective && nonincreasing; }
};

/// Newton F, Deligne 𝔉 and the toric filtration, compared in the ambient
/// H¹ of 𝔉^{−M} by dimension and by joint rank.
CurveFiltrationReport compare_filtrations(const LaurentPolynomial& f, std::optional<std::int64_t> truncation = {});

struct CurveDualityReport {
  // (λ, h^λ(f), h_c^{1−λ}(−f))
  std::vector<std::tuple<Rational, std::size_t, std::size_t>> rows;
  bool pass = false;
};

CurveDualityReport duality_check_curve(const LaurentPolynomial& f, std::optional<std::int64_t> truncation = {});

/// H* of [O(D) → Ω̌¹(D+P)] equals H* of [O(D+E) → Ω̌¹(D+E+P)]; E must be
/// effective and supported on red P.
bool divisor_shift_invariance(const LaurentPolynomial& f, const PointDivisor& e, const PointDivisor& d);

}  // namespace exphodge

#endif  // EXPHODGE_CURVE_HPP
