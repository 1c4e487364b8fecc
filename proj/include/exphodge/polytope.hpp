/**
 * @file polytope.hpp
 * @brief The Newton polyhedron Δ(f) = conv({0} ∪ supp f): facets, faces,
 * normalized volume, and the weight (gauge) function.
 *
 * The weight w(α) = min{c ≥ 0 : α ∈ c·Δ} carries all of the divisor data
 * needed downstream: for a facet with primitive inward normal u and level e
 * (inequality ⟨u,α⟩ ≥ −e), e is the pole order of f along the matching toric
 * boundary divisor, and x^α is a section of O(⌊c·P⌋) exactly when w(α) ≤ c.
 */
#ifndef EXPHODGE_POLYTOPE_HPP
#define EXPHODGE_POLYTOPE_HPP

#include "exphodge/laurent.hpp"
#include "exphodge/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace exphodge {

/// Inequality ⟨normal, α⟩ ≥ −level, with `normal` primitive and level ≥ 0.
struct Facet {
  std::vector<std::int64_t> normal;
  std::int64_t level = 0;

  std::int64_t evaluate(const Exponent& alpha) const;  // ⟨normal, α⟩
  bool operator==(const Facet&) const = default;
};

struct Face {
  std::vector<std::size_t> vertices;       // indices into NewtonPolytope::vertices()
  std::vector<std::size_t> active_facets;  // every facet containing the face
  int dim = 0;
  bool contains_origin = false;
};

/// A nonnegative rational or +∞.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value);  // NOLINT: implicit from finite values
  static ExtendedRational infinity();

  bool is_infinite() const noexcept { return infinite_; }
  const Rational& value() const;  // throws when infinite
  std::string str() const;

  std::strong_ordering operator<=>(const ExtendedRational& other) const;
  bool operator==(const ExtendedRational& other) const;

 private:
  bool infinite_ = false;
  Rational value_ = 0;
};

class NewtonPolytope {
 public:
  /// Hull of {0} ∪ points in Z^n.
  static NewtonPolytope from_points(std::size_t nvars, std::vector<Exponent> points);

  std::size_t nvars() const noexcept { return nvars_; }
  int dim() const noexcept { return dim_; }
  bool full_dimensional() const noexcept { return dim_ == static_cast<int>(nvars_); }

  /// Sorted lexicographically ascending.
  const std::vector<Exponent>& vertices() const noexcept { return vertices_; }
  /// Empty unless full-dimensional.
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  /// Every nonempty face including Δ itself; empty unless full-dimensional.
  const std::vector<Face>& faces() const noexcept { return faces_; }

  /// Throws DimensionError when dim < n.
  void require_full_dimensional() const;

  /// α ∈ Δ; requires dim = n.
  bool contains(const Exponent& alpha) const;

 private:
  std::size_t nvars_ = 0;
  int dim_ = 0;
  std::vector<Exponent> vertices_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
};

NewtonPolytope newton_polytope(const LaurentPolynomial& f);

/// n!·vol(Δ) via a recursive fan triangulation; requires dim = n.
Integer normalized_volume(const NewtonPolytope& polytope);

/// All faces of dimension 0..n−1 not containing the origin.
std::vector<Face> proper_faces_excluding_origin(const NewtonPolytope& polytope);

/// w(α) = max(0, max_{facets, e>0} −⟨u,α⟩/e), or ∞ when a level-zero facet
/// is violated.
ExtendedRational weight(const NewtonPolytope& polytope, const Exponent& alpha);

/// {α ∈ Z^n : w(α) ≤ c}, sorted lexicographically ascending.
std::vector<Exponent> lattice_points_in_dilate(const NewtonPolytope& polytope, const Rational& c);

/// N(c) = #{α : w(α) = c} for every c ≤ c_max that occurs.
std::map<Rational, std::size_t> weight_census(const NewtonPolytope& polytope, const Rational& c_max);

/// Every facet level strictly positive (the origin is interior).
bool contains_origin_interior(const NewtonPolytope& polytope);

/// f_δ: the terms of f whose exponents lie on the face.
LaurentPolynomial face_restriction(const LaurentPolynomial& f, const NewtonPolytope& polytope, const Face& face);

/// Exponents of the face's vertices.
std::vector<Exponent> face_vertices(const NewtonPolytope& polytope, const Face& face);

/// "conv{(2,0),(0,2)}" or "{(1,0)}" for a vertex.
std::string describe_face(const NewtonPolytope& polytope, const Face& face);

std::string format_point(const Exponent& alpha);

}  // namespace exphodge

#endif  // EXPHODGE_POLYTOPE_HPP
