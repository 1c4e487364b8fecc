#include "doctest.h"
#include "exphodge/groebner.hpp"
#include "exphodge/nondegen.hpp"

using namespace exphodge;
using groebner::PrimeField;
using groebner::RationalField;

namespace {

using ModPoly = groebner::Polynomial<PrimeField>;

ModPoly poly(std::vector<std::pair<groebner::Monomial, std::int64_t>> terms, std::uint64_t p) {
  ModPoly out;
  for (auto& [m, c] : terms) out.push_back({m, static_cast<std::uint64_t>((c % static_cast<std::int64_t>(p) + p) % p)});
  return out;
}

const Face& face_by_description(const NewtonPolytope& P, const std::string& text) {
  for (const auto& face : P.faces())
    if (describe_face(P, face) == text) return face;
  throw std::runtime_error("no face " + text);
}

}  // namespace

TEST_SUITE("nondegen") {

TEST_CASE("reduced bases") {
  const std::uint64_t p = 10007;
  const PrimeField k{p};
  const auto id = groebner::groebner_basis(k, {poly({{{1, 0}, 1}, {{0, 0}, -1}}, p), poly({{{0, 1}, 1}, {{0, 0}, -1}}, p)});
  REQUIRE(id.basis.size() == 2);
  CHECK_FALSE(id.is_unit());
  for (const auto& g : id.basis) {
    REQUIRE(g.size() == 2);
    CHECK(g[0].coefficient == 1);
    CHECK(g[1].monomial == groebner::Monomial{0, 0});
    CHECK(g[1].coefficient == p - 1);
  }

  CHECK(groebner::groebner_basis(k, {poly({{{2}, 1}}, p), poly({{{1}, 1}, {{0}, -1}}, p)}).is_unit());

  // (x+y)², x(x+y), y(x+y), t·x·y − 1 in variables (x, y, t)
  const auto sq = groebner::groebner_basis(
      k, {poly({{{2, 0, 0}, 1}, {{1, 1, 0}, 2}, {{0, 2, 0}, 1}}, p), poly({{{2, 0, 0}, 1}, {{1, 1, 0}, 1}}, p),
          poly({{{1, 1, 0}, 1}, {{0, 2, 0}, 1}}, p), poly({{{1, 1, 1}, 1}, {{0, 0, 0}, -1}}, p)});
  CHECK_FALSE(sq.is_unit());
  CHECK_FALSE(sq.budget_exceeded);

  const RationalField q;
  using QPoly = groebner::Polynomial<RationalField>;
  const QPoly a{{{2}, Rational(1)}, {{0}, Rational(-2)}}, b{{{1}, Rational(1)}, {{0}, Rational(-1)}};
  CHECK(groebner::groebner_basis(q, {a, b}).is_unit());
}

TEST_CASE("face checks") {
  const auto f = parse_laurent("x^2 + 2*x*y + y^2");
  const auto P = newton_polytope(f);
  const auto& edge = face_by_description(P, "conv{(2,0),(0,2)}");
  CHECK(check_face(f, P, edge, 10007) == FaceStatus::nonempty);
  CHECK(check_face_exact(f, P, edge) == FaceStatus::nonempty);
  CHECK(check_face(f, P, face_by_description(P, "{(2,0)}"), 10007) == FaceStatus::empty);

  const auto g = parse_laurent("x + y + x^-1*y^-1");
  const auto Q = newton_polytope(g);
  const auto& top = face_by_description(Q, "conv{(1,0),(0,1)}");
  CHECK(check_face(g, Q, top, 10007) == FaceStatus::empty);
  CHECK(check_face_exact(g, Q, top) == FaceStatus::empty);
  CHECK(check_face(g, Q, face_by_description(Q, "{(1,0)}"), 10007) == FaceStatus::empty);

  CHECK_THROWS_AS(check_face(parse_laurent("1/3*x + 1/3*y + x^-1*y^-1"), Q, top, 3), BadPrimeError);
}

TEST_CASE("face systems are polynomial after the shift") {
  const auto f = parse_laurent("x^-2*y + x^-1*y^3 + 5");
  const auto P = newton_polytope(f);
  for (const auto& face : proper_faces_excluding_origin(P)) {
    const auto sys = build_face_system(f, P, face);
    CHECK(sys.generators.size() == 3);
    for (const auto& g : sys.generators)
      for (const auto& [alpha, c] : g.terms())
        for (auto e : alpha) CHECK(e >= 0);
  }
}

TEST_CASE("verdicts") {
  const auto a = is_nondegenerate(parse_laurent("x + x^-1"));
  CHECK(a.verdict == Verdict::nondegenerate);
  CHECK(a.certified);

  const auto f = parse_laurent("x^2 + 2*x*y + y^2");
  const auto b = is_nondegenerate(f);
  CHECK(b.verdict == Verdict::degenerate);
  CHECK(b.certified);
  REQUIRE(b.witness);
  REQUIRE(b.witness->is_rational());
  CHECK(*b.witness->rational == std::vector<Rational>{1, -1});
  REQUIRE(b.witness_face);
  const auto& wface = b.faces[*b.witness_face];
  const auto P = newton_polytope(f);
  CHECK(describe_face(P, wface.face) == "conv{(2,0),(0,2)}");
  CHECK(verify_witness(build_face_system(f, P, wface.face), *b.witness->rational));
  CHECK_FALSE(verify_witness(build_face_system(f, P, wface.face), {1, 1}));

  const auto g = parse_laurent("x + y + x^-1*y^-1");
  const auto c = is_nondegenerate(g);
  CHECK(c.verdict == Verdict::likely_nondegenerate);
  CHECK_FALSE(c.certified);
  CHECK(c.primes.size() == 3);
  for (auto p : c.primes) {
    CHECK(p >= (1ULL << 30));
    CHECK(p < (1ULL << 31));
    CHECK(modular::is_prime(p));
  }
  for (const auto& face : c.faces) {
    if (face.face.dim == 0) {
      CHECK(face.status == FaceStatus::vertex);
    } else {
      CHECK(face.status == FaceStatus::empty);
      CHECK(face.unit_votes == 3);
    }
  }
  const auto d = is_nondegenerate(g, {.certify = true});
  CHECK(d.verdict == Verdict::nondegenerate);
  CHECK(d.certified);
}

TEST_CASE("witness over a prime field when none is rational") {
  // (x² + 2y²)²: the edge polynomial is singular along x/y = ±√−2 only.
  const auto f = parse_laurent("x^4 + 4*x^2*y^2 + 4*y^4");
  const auto r = is_nondegenerate(f);
  CHECK(r.verdict == Verdict::degenerate);
  REQUIRE(r.witness);
  REQUIRE(r.witness_face);
  const auto P = newton_polytope(f);
  const auto sys = build_face_system(f, P, r.faces[*r.witness_face].face);
  if (r.witness->is_rational()) {
    CHECK(verify_witness(sys, *r.witness->rational));
  } else {
    CHECK(verify_witness_mod_p(sys, r.witness->modular, r.witness->prime));
    for (auto v : r.witness->modular) CHECK(v != 0);
    // no rational point, but the exact computation over Q still proves a torus zero exists
    CHECK(r.faces[*r.witness_face].certified);
    CHECK(r.certified);
  }
}

TEST_CASE("deterministic under a fixed seed") {
  const auto g = parse_laurent("x^2 + y + 3*x^-1*y^-1 - x*y");
  const auto a = is_nondegenerate(g, {.seed = 99});
  const auto b = is_nondegenerate(g, {.seed = 99});
  CHECK(a.primes == b.primes);
  CHECK(a.verdict == b.verdict);
  REQUIRE(a.faces.size() == b.faces.size());
  for (std::size_t i = 0; i < a.faces.size(); ++i) {
    CHECK(a.faces[i].status == b.faces[i].status);
    CHECK(a.faces[i].unit_votes == b.faces[i].unit_votes);
  }
  CHECK(is_nondegenerate(g, {.seed = 100}).primes != a.primes);
  CHECK(is_nondegenerate(g, {.seed = 99, .threads = 4}).primes == a.primes);
}

TEST_CASE("vertex faces never make f degenerate") {
  for (const char* text : {"x", "x^3 - 7*x^-2", "x*y^2 + x^-1 + y^-1", "x + y + z + x^-1*y^-1*z^-1"}) {
    const auto r = is_nondegenerate(parse_laurent(text));
    for (const auto& face : r.faces)
      if (face.face.dim == 0) CHECK(face.status == FaceStatus::vertex);
    CHECK(r.verdict != Verdict::degenerate);
  }
}

}
