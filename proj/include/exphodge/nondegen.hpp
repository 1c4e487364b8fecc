/**
 * @file nondegen.hpp
 * @brief Nondegeneracy of f with respect to Δ(f).
 *
 * For each face δ of Δ(f) not containing the origin, decide whether
 * f_δ = x_1∂_1 f_δ = … = x_n∂_n f_δ = 0 has a solution on the torus. The
 * logarithmic derivatives have the same zero locus on the torus as the plain
 * partials and stay polynomial after a monomial shift. Torus solvability is
 * decided by saturating at x_1⋯x_n: adjoin t·x_1⋯x_n − 1 and test whether
 * the reduced Gröbner basis is {1}.
 */
#ifndef EXPHODGE_NONDEGEN_HPP
#define EXPHODGE_NONDEGEN_HPP

#include "exphodge/groebner.hpp"
#include "exphodge/laurent.hpp"
#include "exphodge/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exphodge {

/// f_δ and x_i∂_i f_δ, each multiplied by x^shift so all exponents are ≥ 0.
struct FaceSystem {
  Face face;
  std::vector<LaurentPolynomial> generators;
  Exponent shift;
};

FaceSystem build_face_system(const LaurentPolynomial& f, const NewtonPolytope& polytope, const Face& face);

/// Generators of the saturated ideal over `field`, in n+1 variables
/// (x_1..x_n, t), t·x_1⋯x_n − 1 appended last.
template <class Field>
std::vector<groebner::Polynomial<Field>> saturated_generators(const FaceSystem& system, const Field& field);

enum class FaceStatus {
  vertex,           // report-only: a monomial never vanishes on the torus
  empty,            // no torus solution
  nonempty,         // torus solution exists
  budget_exceeded,  // Buchberger pair cap reached
};

std::string to_string(FaceStatus status);

/// Decides torus solvability of the face system over F_p (grevlex). A vertex
/// is "empty" without any computation.
/// Throws BadPrimeError when p divides a coefficient denominator.
FaceStatus check_face(const LaurentPolynomial& f, const NewtonPolytope& polytope, const Face& face,
                      std::uint64_t prime, std::size_t max_pairs = 20000);

/// The same decision over Q.
FaceStatus check_face_exact(const LaurentPolynomial& f, const NewtonPolytope& polytope, const Face& face,
                            std::size_t max_pairs = 20000);

enum class Verdict { nondegenerate, degenerate, likely_nondegenerate };

std::string to_string(Verdict verdict);

/// A common zero of a face system with no zero coordinate, either over Q or
/// over a small prime field.
struct Witness {
  std::optional<std::vector<Rational>> rational;
  std::uint64_t prime = 0;  // set when the witness is modular
  std::vector<std::uint64_t> modular;

  bool is_rational() const { return rational.has_value(); }
  std::string str() const;
};

struct FaceReport {
  Face face;
  std::vector<Exponent> vertices;
  FaceStatus status = FaceStatus::vertex;
  bool certified = false;  // decided over Q (or trivially, for vertices)
  std::size_t unit_votes = 0;
  std::size_t nonunit_votes = 0;
};

struct NondegeneracyReport {
  Verdict verdict = Verdict::likely_nondegenerate;
  std::vector<FaceReport> faces;
  std::optional<Witness> witness;
  std::optional<std::size_t> witness_face;  // index into faces
  std::vector<std::uint64_t> primes;
  bool certified = false;
  std::vector<std::string> notes;
};

struct NondegenConfig {
  int primes = 3;
  std::uint64_t seed = 20140101;
  bool certify = false;
  std::size_t max_pairs = 20000;
  unsigned threads = 1;
};

/**
 * Checks every face of Δ(f) not containing 0.
 *
 * A non-vertex face is voted on by `primes` random primes; the majority
 * decides. Faces voted solvable get a witness search (small rationals
 * exactly, then small prime fields) and the verdict is "degenerate". When
 * every face is empty the verdict is "likely-nondegenerate", upgraded to
 * "nondegenerate" only by the exact computation over Q (certify mode, or
 * when no face needs checking at all).
 */
NondegeneracyReport is_nondegenerate(const LaurentPolynomial& f, const NondegenConfig& config = {});

/// Substitutes a rational point into every generator of the face system.
bool verify_witness(const FaceSystem& system, const std::vector<Rational>& point);

/// Substitutes a point of (F_p^*)^n into every generator.
bool verify_witness_mod_p(const FaceSystem& system, const std::vector<std::uint64_t>& point, std::uint64_t p);

}  // namespace exphodge

#endif  // EXPHODGE_NONDEGEN_HPP
