#include "doctest.h"
#include "exphodge/polytope.hpp"
#include "oracles.hpp"

#include <random>

using namespace exphodge;

namespace {

NewtonPolytope hull(const char* text) { return newton_polytope(parse_laurent(text)); }

NewtonPolytope segment(std::int64_t lo, std::int64_t hi) {
  std::vector<Exponent> pts{{lo}, {hi}};
  return NewtonPolytope::from_points(1, pts);
}

// Andrew's monotone chain, then the shoelace formula: twice the area.
Integer shoelace_nvol(std::vector<Exponent> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto cross = [](const Exponent& o, const Exponent& a, const Exponent& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Exponent> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return Integer(std::abs(twice));
}

}  // namespace

TEST_SUITE("polytope") {

TEST_CASE("hull of x + x^-1") {
  const auto P = hull("x + x^-1");
  CHECK(P.dim() == 1);
  CHECK(P.vertices() == std::vector<Exponent>{{-1}, {1}});
  REQUIRE(P.facets().size() == 2);
  for (const auto& facet : P.facets()) CHECK(facet.level == 1);
}

TEST_CASE("hull of x + y + 1/(xy)") {
  const auto P = hull("x + y + x^-1*y^-1");
  CHECK(P.dim() == 2);
  CHECK(P.vertices() == std::vector<Exponent>{{-1, -1}, {0, 1}, {1, 0}});
  auto facets = P.facets();
  std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> got;
  for (const auto& f : facets) got.emplace_back(f.normal, f.level);
  std::sort(got.begin(), got.end());
  const std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> want{
      {{-1, -1}, 1}, {{-1, 2}, 1}, {{2, -1}, 1}};
  CHECK(got == want);
  CHECK(contains_origin_interior(P));
}

TEST_CASE("lower-dimensional hull") {
  const auto P = hull("x*y");
  CHECK(P.dim() == 1);
  CHECK_FALSE(P.full_dimensional());
  CHECK_THROWS_AS(P.require_full_dimensional(), DimensionError);
  CHECK_THROWS_AS(normalized_volume(P), DimensionError);
}

TEST_CASE("normalized volume") {
  CHECK(normalized_volume(hull("x + x^-1")) == 2);
  CHECK(normalized_volume(hull("x + y + x^-1*y^-1")) == 3);
  CHECK(normalized_volume(hull("x + y")) == 1);
  CHECK(normalized_volume(hull("x + y + z")) == 1);
  CHECK(normalized_volume(hull("x + y + z + x*y + x*z + y*z + x*y*z")) == 6);
  CHECK(normalized_volume(hull("x + x^-1 + y + y^-1 + z + z^-1")) == 8);
  CHECK(normalized_volume(hull("x^2 + x^-1")) == 3);
}

TEST_CASE("normalized volume agrees with a shoelace oracle") {
  std::mt19937_64 rng(3);
  int tested = 0;
  while (tested < 60) {
    const auto f = oracle::random_polynomial(rng, 2, 4, 3);
    const auto P = newton_polytope(f);
    if (!P.full_dimensional()) continue;
    CHECK(normalized_volume(P) == shoelace_nvol(oracle::hull_points(f)));
    ++tested;
  }
}

TEST_CASE("faces not containing the origin") {
  auto count = [](const NewtonPolytope& P, int dim) {
    std::size_t k = 0;
    for (const auto& face : proper_faces_excluding_origin(P)) k += face.dim == dim;
    return k;
  };
  const auto a = hull("x + x^-1");
  CHECK(proper_faces_excluding_origin(a).size() == 2);
  CHECK(count(a, 0) == 2);

  const auto b = hull("x^2 + 2*x*y + y^2");
  const auto faces = proper_faces_excluding_origin(b);
  CHECK(faces.size() == 3);
  CHECK(count(b, 0) == 2);
  for (const auto& face : faces)
    if (face.dim == 1) CHECK(describe_face(b, face) == "conv{(2,0),(0,2)}");

  const auto c = segment(0, 1);
  const auto only = proper_faces_excluding_origin(c);
  REQUIRE(only.size() == 1);
  CHECK(face_vertices(c, only[0]) == std::vector<Exponent>{{1}});
  CHECK(describe_face(c, only[0]) == "{(1)}");
}

TEST_CASE("weights") {
  const auto P = segment(-1, 2);
  CHECK(weight(P, {1}) == Rational(1, 2));
  CHECK(weight(P, {-1}) == Rational(1));
  CHECK(weight(P, {3}) == Rational(3, 2));
  CHECK(weight(P, {0}) == Rational(0));
  CHECK(weight(segment(0, 1), {-1}).is_infinite());
  CHECK(weight(hull("x + y + x^-1*y^-1"), {1, 1}) == Rational(2));
  CHECK(weight(P, {3}).str() == "3/2");
  CHECK(weight(segment(0, 1), {-1}).str() == "infinity");
}

TEST_CASE("lattice points of dilates") {
  CHECK(lattice_points_in_dilate(segment(-1, 1), 1) == std::vector<Exponent>{{-1}, {0}, {1}});
  CHECK(lattice_points_in_dilate(hull("x + y"), 2).size() == 6);
  CHECK(lattice_points_in_dilate(hull("x + y + x^-1*y^-1"), 2).size() == 10);
  CHECK(lattice_points_in_dilate(segment(0, 1), 0) == std::vector<Exponent>{{0}});
}

TEST_CASE("lattice points match the hull oracle") {
  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 25) {
    const std::size_t n = 1 + tested % 3;
    const auto f = oracle::random_polynomial(rng, n, n + 2, 2);
    const auto P = newton_polytope(f);
    if (!P.full_dimensional()) continue;
    for (const Rational c : {Rational(0), Rational(1, 2), Rational(1), Rational(5, 3)})
      CHECK(lattice_points_in_dilate(P, c) == oracle::dilate_points(f, c));
    ++tested;
  }
}

TEST_CASE("weight census") {
  using Census = std::map<Rational, std::size_t>;
  CHECK(weight_census(segment(-1, 1), 2) == Census{{0, 1}, {1, 2}, {2, 2}});
  CHECK(weight_census(segment(-1, 2), 1) == Census{{0, 1}, {Rational(1, 2), 1}, {1, 2}});
  CHECK(weight_census(hull("x + y + x^-1*y^-1"), 2) == Census{{0, 1}, {1, 3}, {2, 6}});

  // oracle: classify the points of 2Δ by the smallest grid dilate holding them
  const auto f = parse_laurent("x^2*y + y^-1 + x^-1");
  Census expected;
  for (const auto& a : oracle::dilate_points(f, 2)) ++expected[*oracle::weight(f, a)];
  CHECK(weight_census(newton_polytope(f), 2) == expected);
}

TEST_CASE("origin interior") {
  CHECK(contains_origin_interior(segment(-1, 1)));
  CHECK_FALSE(contains_origin_interior(segment(0, 1)));
  CHECK(contains_origin_interior(hull("x + y + x^-1*y^-1")));
  CHECK_FALSE(contains_origin_interior(hull("x + y")));
}

TEST_CASE("floor of a dilated facet inequality is the weight condition") {
  // ⟨u,α⟩ ∈ Z, so ⟨u,α⟩ ≥ −c·e ⟺ ⟨u,α⟩ ≥ −⌊c·e⌋.
  const auto P = hull("x^3*y + y^-2 + x^-1*y");
  const std::vector<Rational> cs{0, Rational(1, 3), Rational(1, 2), Rational(2, 3), 1, Rational(7, 4)};
  for (std::int64_t a = -6; a <= 6; ++a)
    for (std::int64_t b = -6; b <= 6; ++b)
      for (const auto& c : cs) {
        bool by_floor = true;
        for (const auto& facet : P.facets())
          by_floor = by_floor && facet.evaluate({a, b}) >= -to_int64(floor(c * facet.level));
        CHECK(by_floor == (weight(P, {a, b}) <= c));
      }
}

TEST_CASE("weight properties on random polytopes") {
  std::mt19937_64 rng(17);
  int polytopes = 0;
  while (polytopes < 12) {
    const std::size_t n = 1 + polytopes % 3;
    const auto f = oracle::random_polynomial(rng, n, n + 2, 2);
    const auto P = newton_polytope(f);
    if (!P.full_dimensional()) continue;
    ++polytopes;
    CHECK(weight(P, Exponent(n, 0)) == Rational(0));
    for (const auto& v : P.vertices())
      if (v != Exponent(n, 0)) CHECK(weight(P, v) == Rational(1));
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int s = 0; s < 40; ++s) {
      Exponent a(n);
      for (auto& x : a) x = coord(rng);
      const auto w = weight(P, a);
      if (w.is_infinite()) continue;
      for (int k = 0; k <= 3; ++k) {
        Exponent ka = a;
        for (auto& x : ka) x *= k;
        CHECK(weight(P, ka) == Rational(k) * w.value());
      }
      for (const Rational c : {Rational(1, 2), Rational(1), Rational(3, 2)})
        CHECK((w <= c) == oracle::in_dilate(f, a, c));
    }
  }
}

}
