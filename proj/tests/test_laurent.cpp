#include "doctest.h"
#include "exphodge/laurent.hpp"
#include "exphodge/polytope.hpp"
#include "oracles.hpp"

using namespace exphodge;

TEST_SUITE("laurent") {

TEST_CASE("parse reads terms literally") {
  const auto f = parse_laurent("x + x^-1");
  CHECK(f.nvars() == 1);
  CHECK(f.terms().size() == 2);
  CHECK(f.coefficient({1}) == 1);
  CHECK(f.coefficient({-1}) == 1);

  const auto g = parse_laurent("3/2*x^2*y^-1 - 1", {"x", "y"});
  CHECK(g.terms().size() == 2);
  CHECK(g.coefficient({2, -1}) == Rational(3, 2));
  CHECK(g.coefficient({0, 0}) == -1);
}

TEST_CASE("parse collects like terms and infers variables") {
  const auto f = parse_laurent("x*y + 2*y*x - y");
  CHECK(f.variables() == std::vector<std::string>{"x", "y"});
  CHECK(f.coefficient({1, 1}) == 3);
  CHECK(f.coefficient({0, 1}) == -1);
  // only y used: still the default prefix x,y
  CHECK(parse_laurent("y").nvars() == 2);
  CHECK(parse_laurent("a + b^2").variables() == std::vector<std::string>{"a", "b"});
  CHECK(parse_laurent("x3 + x1").nvars() == 3);
  CHECK(parse_laurent("  - x ^ -2 ").coefficient({-2}) == -1);
}

TEST_CASE("parse errors") {
  try {
    parse_laurent("x + + y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_laurent("x - x"), ParseError);
  CHECK_THROWS_AS(parse_laurent("x + z", {"x", "y"}), ParseError);
  CHECK_THROWS_AS(parse_laurent("x^"), ParseError);
  CHECK_THROWS_AS(parse_laurent("1/0*x"), ParseError);
  CHECK_THROWS_AS(parse_laurent(""), ParseError);
  CHECK_THROWS_AS(parse_laurent("2x"), ParseError);
}

TEST_CASE("format") {
  using T = LaurentPolynomial::TermMap;
  CHECK(format_laurent({{"x"}, T{{{1}, 1}, {{-1}, 1}}}) == "x + x^-1");
  CHECK(format_laurent({{"x", "y"}, T{{{0, 0}, -1}}}) == "-1");
  CHECK(format_laurent({{"x", "y"}, T{{{2, -1}, Rational(3, 2)}}}) == "3/2*x^2*y^-1");
  CHECK(format_laurent(parse_laurent("-x - 1/2")) == "-x - 1/2");
}

TEST_CASE("round trip on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto f = oracle::random_polynomial(rng, n, 1 + trial % 7, 4);
    const auto text = format_laurent(f);
    const auto g = parse_laurent(text, f.variables());
    REQUIRE_MESSAGE(g.terms() == f.terms(), text);
    CHECK(format_laurent(g) == text);
  }
}

TEST_CASE("log derivative") {
  CHECK(log_derivative(parse_laurent("x + x^-1"), 0) == parse_laurent("x - x^-1"));
  CHECK(log_derivative(parse_laurent("x^2 + 2*x*y + y^2"), 0) == parse_laurent("2*x^2 + 2*x*y", {"x", "y"}));
  CHECK(log_derivative(parse_laurent("y", {"x", "y"}), 0).is_zero());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = oracle::random_polynomial(rng, 2, 5, 3);
    const auto g = oracle::random_polynomial(rng, 2, 5, 3);
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(log_derivative(f + g, i) == log_derivative(f, i) + log_derivative(g, i));
  }
}

TEST_CASE("face restriction") {
  const auto f = parse_laurent("x^2 + 2*x*y + y^2");
  const auto P = newton_polytope(f);
  bool seen = false;
  for (const auto& face : proper_faces_excluding_origin(P))
    if (face.dim == 1) {
      CHECK(face_restriction(f, P, face) == f);
      seen = true;
    }
  CHECK(seen);

  const auto g = parse_laurent("x + y + x^-1*y^-1");
  const auto Q = newton_polytope(g);
  for (const auto& face : Q.faces())
    if (face.dim == 0 && face_vertices(Q, face)[0] == Exponent{1, 0})
      CHECK(face_restriction(g, Q, face) == parse_laurent("x", {"x", "y"}));

  const auto h = parse_laurent("x^2 + x^-1");
  const auto R = newton_polytope(h);
  for (const auto& face : R.faces()) {
    if (face.dim == 1) CHECK(face_restriction(h, R, face) == h);
    if (face.dim == 0 && face_vertices(R, face)[0] == Exponent{2})
      CHECK(face_restriction(h, R, face) == parse_laurent("x^2"));
  }
}

TEST_CASE("reduction mod p") {
  const auto a = reduce_mod_p(parse_laurent("3/2*x"), 5);
  CHECK(a.terms.size() == 1);
  CHECK(a.terms.at({1}) == 4);
  const auto b = reduce_mod_p(parse_laurent("x + y"), 7);
  CHECK(b.terms.at({1, 0}) == 1);
  CHECK(b.terms.at({0, 1}) == 1);
  CHECK_THROWS_AS(reduce_mod_p(parse_laurent("1/3*x"), 3), BadPrimeError);
  CHECK(reduce_mod_p(parse_laurent("5*x + y"), 5).terms.size() == 1);
  CHECK(reduce_rational_mod_p(Rational(-1, 2), 7) == 3);
}

TEST_CASE("evaluate and negate") {
  const auto f = parse_laurent("x + y + x^-1*y^-1");
  const std::vector<Rational> pt{2, Rational(1, 2)};
  CHECK(f.evaluate(pt) == Rational(2) + Rational(1, 2) + 1);
  CHECK((-f).evaluate(pt) == -f.evaluate(pt));
  CHECK((f + -f).is_zero());
}

}
