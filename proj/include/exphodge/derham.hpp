/**
 * @file derham.hpp
 * @brief Newton-filtration levels of the twisted de Rham complex on the
 * torus, as explicit bases and exact sparse matrices.
 *
 * On a smooth toric compactification the log forms dlog x_I trivialize Ω̌^p
 * and the twisted sheaves O(⌊c·P⌋) have no higher cohomology, so each level
 * F^λ is computed by its complex of global sections: in degree p ≥ ⌈λ⌉ the
 * span of x^α·dlog x_I with |I| = p and w(α) ≤ p − λ. The differential is
 * ∇ = d + df∧ written in the log frame:
 *
 *   ∇(x^α dlog x_I) = Σ_i α_i x^α dlog x_i∧dlog x_I
 *                   + Σ_β c(β) Σ_i β_i x^{α+β} dlog x_i∧dlog x_I.
 *
 * Wedge convention: I is stored as a bitmask read in ascending order, and
 * dlog x_i∧dlog x_I = (−1)^{#{j∈I : j<i}} dlog x_{I∪{i}}.
 *
 * Basis order within a degree: α ascending lexicographically, then I in
 * lexicographic order of its sorted index list.
 */
#ifndef EXPHODGE_DERHAM_HPP
#define EXPHODGE_DERHAM_HPP

#include "exphodge/laurent.hpp"
#include "exphodge/linalg.hpp"
#include "exphodge/polytope.hpp"

#include <map>
#include <optional>
#include <vector>

namespace exphodge {

/// x^α · dlog x_I, I given as a bitmask over the variables.
struct MonomialForm {
  Exponent alpha;
  std::uint32_t wedge = 0;

  auto operator<=>(const MonomialForm&) const = default;
};

/// One level of the filtration (or of its graded quotient).
class ComplexSlice {
 public:
  ComplexSlice(Rational level, bool graded, std::size_t nvars);

  const Rational& level() const noexcept { return level_; }
  bool graded() const noexcept { return graded_; }
  std::size_t nvars() const noexcept { return nvars_; }

  const std::vector<MonomialForm>& basis(std::size_t degree) const { return basis_.at(degree); }
  std::size_t dimension(std::size_t degree) const { return basis_.at(degree).size(); }
  /// Matrix of ∇ from degree p to p+1 (rows: degree p+1), p in [0, n).
  const SparseMatrix& differential(std::size_t degree) const { return differentials_.at(degree); }

  std::optional<std::size_t> index_of(std::size_t degree, const MonomialForm& form) const;

 private:
  friend class TwistedDeRham;
  Rational level_;
  bool graded_;
  std::size_t nvars_;
  std::vector<std::vector<MonomialForm>> basis_;
  std::vector<std::map<MonomialForm, std::size_t>> index_;
  std::vector<SparseMatrix> differentials_;
};

/**
 * The twisted de Rham complex of one Laurent polynomial with dim Δ(f) = n.
 * Level 0 and its coboundary spaces are built once at construction; all
 * member functions are const and safe to call concurrently.
 */
class TwistedDeRham {
 public:
  /// Throws DimensionError when dim Δ(f) < n.
  explicit TwistedDeRham(LaurentPolynomial f);

  const LaurentPolynomial& polynomial() const noexcept { return f_; }
  const NewtonPolytope& polytope() const noexcept { return polytope_; }
  std::size_t nvars() const noexcept { return f_.nvars(); }

  /// F^λ; throws std::invalid_argument for λ > n.
  ComplexSlice level(const Rational& lambda) const;
  /// Gr^λ = F^λ/F^{λ+}: degree-p basis with w(α) = p − λ exactly, and the
  /// weight-raising-by-one part of ∇ (the d-part preserves weight and
  /// drops out).
  ComplexSlice graded_level(const Rational& lambda) const;

  const ComplexSlice& base_level() const noexcept { return base_; }

  /// dim H^i of the λ = 0 level, i = 0..n.
  std::vector<std::size_t> betti_numbers() const;

  /// dim Image(H^i(F^λ) → H^i(F^0)) for 0 ≤ λ ≤ n.
  std::size_t filtration_image_dim(const Rational& lambda, std::size_t degree) const;

  /// Cocycles of F^λ in degree i, in level-0 coordinates.
  std::vector<SparseVector> cocycles(const Rational& lambda, std::size_t degree) const;

  /// dim H^p(Gr^λ), p = 0..n.
  std::vector<std::size_t> graded_cohomology(const Rational& lambda) const;

 private:
  ComplexSlice build(const Rational& lambda, bool graded) const;

  LaurentPolynomial f_;
  NewtonPolytope polytope_;
  ComplexSlice base_;
  std::vector<std::size_t> base_ranks_;        // rank of ∇ out of degree p at level 0
  std::vector<EchelonSpace> base_boundaries_;  // B^p at level 0
};

ComplexSlice build_filtration_level(const LaurentPolynomial& f, const Rational& lambda);
ComplexSlice build_graded_level(const LaurentPolynomial& f, const Rational& lambda);
std::vector<std::size_t> betti_numbers(const LaurentPolynomial& f);
std::size_t filtration_image_dim(const LaurentPolynomial& f, const Rational& lambda, std::size_t degree);

/// Cohomology dimensions of a slice from exact ranks.
std::vector<std::size_t> slice_cohomology(const ComplexSlice& slice);

}  // namespace exphodge

#endif  // EXPHODGE_DERHAM_HPP
