#include "exphodge/polytope.hpp"

#include "exphodge/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace exphodge {

std::int64_t Facet::evaluate(const Exponent& alpha) const {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) sum += normal[i] * alpha[i];
  return sum;
}

ExtendedRational::ExtendedRational(Rational value) : value_(std::move(value)) {}

ExtendedRational ExtendedRational::infinity() {
  ExtendedRational r;
  r.infinite_ = true;
  return r;
}

const Rational& ExtendedRational::value() const {
  if (infinite_) throw std::logic_error("value() of an infinite weight");
  return value_;
}

std::string ExtendedRational::str() const { return infinite_ ? "infinity" : to_string(value_); }

std::strong_ordering ExtendedRational::operator<=>(const ExtendedRational& other) const {
  if (infinite_ || other.infinite_) return infinite_ <=> other.infinite_;
  if (value_ < other.value_) return std::strong_ordering::less;
  if (value_ > other.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool ExtendedRational::operator==(const ExtendedRational& other) const { return (*this <=> other) == 0; }

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<Integer>> as_integer_rows(const std::vector<Exponent>& points) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& p : points) rows.emplace_back(p.begin(), p.end());
  return rows;
}

std::int64_t gcd_of(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& z : v) g = boost::multiprecision::gcd(g, z);
  return to_int64(g);
}

/// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Facets of a full-dimensional point set containing the origin. Every
/// hyperplane through n affinely independent points with all points on one
/// side is a facet; duplicates are merged.
std::vector<Facet> facets_of(std::size_t n, const std::vector<Exponent>& points) {
  std::set<std::pair<std::vector<std::int64_t>, std::int64_t>> found;
  for_each_combination(points.size(), n, [&](const std::vector<std::size_t>& pick) {
    const Exponent& base = points[pick[0]];
    std::vector<std::vector<Integer>> diffs;
    for (std::size_t j = 1; j < pick.size(); ++j) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c) row.emplace_back(points[pick[j]][c] - base[c]);
      diffs.push_back(std::move(row));
    }
    // Generalized cross product: u_k = (−1)^k · minor with column k removed.
    std::vector<Integer> normal(n);
    bool nonzero = false;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::vector<Integer>> minor;
      for (const auto& row : diffs) {
        std::vector<Integer> r;
        for (std::size_t c = 0; c < n; ++c)
          if (c != k) r.push_back(row[c]);
        minor.push_back(std::move(r));
      }
      normal[k] = integer_determinant(std::move(minor));
      if (k % 2 == 1) normal[k] = -normal[k];
      nonzero = nonzero || normal[k] != 0;
    }
    if (!nonzero) return;
    const std::int64_t g = gcd_of(normal);
    std::vector<std::int64_t> u;
    for (const auto& z : normal) u.push_back(to_int64(z / g));

    auto dot = [&](const Exponent& p) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < n; ++c) s += u[c] * p[c];
      return s;
    };
    const std::int64_t b = dot(base);
    bool above = false, below = false;
    for (const auto& q : points) {
      const std::int64_t d = dot(q) - b;
      above = above || d > 0;
      below = below || d < 0;
    }
    if (above && below) return;
    if (below) {
      for (auto& x : u) x = -x;
      found.emplace(u, b);  // ⟨−u,α⟩ ≥ −b, level b
    } else {
      found.emplace(u, -b);
    }
  });
  std::vector<Facet> facets;
  for (const auto& [u, level] : found) facets.push_back(Facet{u, level});
  return facets;
}

int affine_dim(const std::vector<Exponent>& pts) {
  if (pts.empty()) return -1;
  std::vector<std::vector<Integer>> rows;
  for (const auto& p : pts) {
    std::vector<Integer> r;
    for (std::size_t c = 0; c < p.size(); ++c) r.emplace_back(p[c] - pts[0][c]);
    rows.push_back(std::move(r));
  }
  return static_cast<int>(integer_rank(std::move(rows)));
}

}  // namespace

NewtonPolytope NewtonPolytope::from_points(std::size_t nvars, std::vector<Exponent> points) {
  if (nvars == 0) throw std::invalid_argument("polytope in dimension zero");
  for (const auto& p : points)
    if (p.size() != nvars) throw std::invalid_argument("point arity does not match the dimension");
  points.emplace_back(nvars, 0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  NewtonPolytope poly;
  poly.nvars_ = nvars;
  poly.dim_ = static_cast<int>(integer_rank(as_integer_rows(points)));

  if (poly.dim_ == 0) {
    poly.vertices_ = {Exponent(nvars, 0)};
    return poly;
  }

  if (poly.dim_ < static_cast<int>(nvars)) {
    // The span of the points (it contains 0) projects injectively onto some
    // dim-subset of coordinates; convexity is preserved, so take the hull
    // there and lift the vertices back.
    const auto d = static_cast<std::size_t>(poly.dim_);
    std::vector<std::size_t> chosen;
    for_each_combination(nvars, d, [&](const std::vector<std::size_t>& coords) {
      if (!chosen.empty()) return;
      std::vector<std::vector<Integer>> rows;
      for (const auto& p : points) {
        std::vector<Integer> r;
        for (std::size_t c : coords) r.emplace_back(p[c]);
        rows.push_back(std::move(r));
      }
      if (integer_rank(std::move(rows)) == d) chosen = coords;
    });
    std::vector<Exponent> projected;
    for (const auto& p : points) {
      Exponent q;
      for (std::size_t c : chosen) q.push_back(p[c]);
      projected.push_back(std::move(q));
    }
    const NewtonPolytope low = from_points(d, projected);
    for (const auto& v : low.vertices()) {
      auto it = std::find(projected.begin(), projected.end(), v);
      poly.vertices_.push_back(points[static_cast<std::size_t>(it - projected.begin())]);
    }
    std::sort(poly.vertices_.begin(), poly.vertices_.end());
    return poly;
  }

  poly.facets_ = facets_of(nvars, points);

  for (const auto& p : points) {
    std::vector<std::vector<Integer>> tight;
    for (const auto& f : poly.facets_)
      if (f.evaluate(p) == -f.level) tight.emplace_back(f.normal.begin(), f.normal.end());
    if (integer_rank(std::move(tight)) == nvars) poly.vertices_.push_back(p);
  }

  // Face lattice: close the facets' vertex sets under intersection.
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& f : poly.facets_) {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < poly.vertices_.size(); ++v)
      if (f.evaluate(poly.vertices_[v]) == -f.level) s.push_back(v);
    facet_sets.push_back(std::move(s));
  }
  std::set<std::vector<std::size_t>> sets(facet_sets.begin(), facet_sets.end());
  std::vector<std::vector<std::size_t>> frontier(sets.begin(), sets.end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& a : frontier) {
      for (const auto& b : facet_sets) {
        std::vector<std::size_t> meet;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
        if (!meet.empty() && sets.insert(meet).second) next.push_back(std::move(meet));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::size_t> all(poly.vertices_.size());
  std::iota(all.begin(), all.end(), 0);
  sets.insert(all);

  for (const auto& s : sets) {
    Face face;
    face.vertices = s;
    std::vector<Exponent> pts;
    for (std::size_t v : s) pts.push_back(poly.vertices_[v]);
    face.dim = affine_dim(pts);
    face.contains_origin = true;
    for (std::size_t j = 0; j < facet_sets.size(); ++j) {
      if (std::includes(facet_sets[j].begin(), facet_sets[j].end(), s.begin(), s.end())) {
        face.active_facets.push_back(j);
        face.contains_origin = face.contains_origin && poly.facets_[j].level == 0;
      }
    }
    poly.faces_.push_back(std::move(face));
  }
  std::stable_sort(poly.faces_.begin(), poly.faces_.end(),
                   [](const Face& a, const Face& b) { return a.dim < b.dim; });
  return poly;
}

void NewtonPolytope::require_full_dimensional() const {
  if (!full_dimensional()) throw DimensionError(dim_, nvars_);
}

bool NewtonPolytope::contains(const Exponent& alpha) const {
  require_full_dimensional();
  return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return f.evaluate(alpha) >= -f.level; });
}

NewtonPolytope newton_polytope(const LaurentPolynomial& f) {
  return NewtonPolytope::from_points(f.nvars(), f.support());
}

// ---------------------------------------------------------------------------

namespace {

/// Simplices (as vertex-index lists) of a fan triangulation of face `index`:
/// cone from its smallest vertex over the triangulated subfaces of codim one
/// that avoid that vertex.
std::vector<std::vector<std::size_t>> triangulate(const NewtonPolytope& poly, std::size_t index,
                                                  std::map<std::size_t, std::vector<std::vector<std::size_t>>>& memo) {
  if (auto it = memo.find(index); it != memo.end()) return it->second;
  const Face& face = poly.faces()[index];
  std::vector<std::vector<std::size_t>> out;
  if (face.dim == 0) {
    out.push_back({face.vertices.front()});
  } else {
    const std::size_t apex = face.vertices.front();
    for (std::size_t g = 0; g < poly.faces().size(); ++g) {
      const Face& sub = poly.faces()[g];
      if (sub.dim != face.dim - 1) continue;
      if (!std::includes(face.vertices.begin(), face.vertices.end(), sub.vertices.begin(), sub.vertices.end()))
        continue;
      if (std::binary_search(sub.vertices.begin(), sub.vertices.end(), apex)) continue;
      for (auto simplex : triangulate(poly, g, memo)) {
        simplex.push_back(apex);
        out.push_back(std::move(simplex));
      }
    }
  }
  memo.emplace(index, out);
  return out;
}

}  // namespace

Integer normalized_volume(const NewtonPolytope& polytope) {
  polytope.require_full_dimensional();
  const std::size_t n = polytope.nvars();
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo;
  const std::size_t whole = polytope.faces().size() - 1;  // sorted by dim; Δ is last
  Integer total = 0;
  for (const auto& simplex : triangulate(polytope, whole, memo)) {
    const Exponent& base = polytope.vertices()[simplex.front()];
    std::vector<std::vector<Integer>> m;
    for (std::size_t k = 1; k < simplex.size(); ++k) {
      std::vector<Integer> row;
      for (std::size_t c = 0; c < n; ++c) row.emplace_back(polytope.vertices()[simplex[k]][c] - base[c]);
      m.push_back(std::move(row));
    }
    total += boost::multiprecision::abs(integer_determinant(std::move(m)));
  }
  return total;
}

std::vector<Face> proper_faces_excluding_origin(const NewtonPolytope& polytope) {
  polytope.require_full_dimensional();
  std::vector<Face> out;
  for (const auto& face : polytope.faces())
    if (face.dim < polytope.dim() && !face.contains_origin) out.push_back(face);
  return out;
}

ExtendedRational weight(const NewtonPolytope& polytope, const Exponent& alpha) {
  polytope.require_full_dimensional();
  if (alpha.size() != polytope.nvars()) throw std::invalid_argument("lattice point has the wrong arity");
  Rational w = 0;
  for (const auto& f : polytope.facets()) {
    const std::int64_t value = f.evaluate(alpha);
    if (f.level == 0) {
      if (value < 0) return ExtendedRational::infinity();
      continue;
    }
    const Rational ratio(-value, f.level);
    if (ratio > w) w = ratio;
  }
  return w;
}

std::vector<Exponent> lattice_points_in_dilate(const NewtonPolytope& polytope, const Rational& c) {
  polytope.require_full_dimensional();
  if (c < 0) return {};
  const std::size_t n = polytope.nvars();
  // Bounding box of c·Δ. Membership then uses the weight: for a facet of
  // level e and integer ⟨u,α⟩, the condition ⟨u,α⟩ ≥ −⌊c·e⌋ of the divisor
  // ⌊c·P⌋ is equivalent to ⟨u,α⟩ ≥ −c·e, which is w(α) ≤ c. So the floors
  // in the twisted sheaves never need to be formed explicitly.
  Exponent lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t vmin = 0, vmax = 0;
    for (const auto& v : polytope.vertices()) {
      vmin = std::min(vmin, v[i]);
      vmax = std::max(vmax, v[i]);
    }
    lo[i] = to_int64(floor(c * vmin));
    hi[i] = to_int64(ceil(c * vmax));
  }
  std::vector<Exponent> out;
  Exponent alpha = lo;
  for (;;) {
    const ExtendedRational w = weight(polytope, alpha);
    if (!w.is_infinite() && w.value() <= c) out.push_back(alpha);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (alpha[i] < hi[i]) {
        ++alpha[i];
        break;
      }
      alpha[i] = lo[i];
      if (i == 0) return out;
    }
  }
}

std::map<Rational, std::size_t> weight_census(const NewtonPolytope& polytope, const Rational& c_max) {
  std::map<Rational, std::size_t> census;
  for (const auto& alpha : lattice_points_in_dilate(polytope, c_max)) ++census[weight(polytope, alpha).value()];
  return census;
}

bool contains_origin_interior(const NewtonPolytope& polytope) {
  if (!polytope.full_dimensional()) return false;
  return std::all_of(polytope.facets().begin(), polytope.facets().end(), [](const Facet& f) { return f.level > 0; });
}

LaurentPolynomial face_restriction(const LaurentPolynomial& f, const NewtonPolytope& polytope, const Face& face) {
  LaurentPolynomial restricted = restrict_terms(f, [&](const Exponent& alpha) {
    return std::all_of(face.active_facets.begin(), face.active_facets.end(), [&](std::size_t j) {
      const Facet& facet = polytope.facets()[j];
      return facet.evaluate(alpha) == -facet.level;
    });
  });
  if (restricted.is_zero()) throw std::invalid_argument("face carries no terms");
  return restricted;
}

std::vector<Exponent> face_vertices(const NewtonPolytope& polytope, const Face& face) {
  std::vector<Exponent> out;
  for (std::size_t v : face.vertices) out.push_back(polytope.vertices()[v]);
  return out;
}

std::string format_point(const Exponent& alpha) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < alpha.size(); ++i) out << (i ? "," : "") << alpha[i];
  out << ')';
  return out.str();
}

std::string describe_face(const NewtonPolytope& polytope, const Face& face) {
  std::ostringstream out;
  out << (face.dim == 0 ? "{" : "conv{");
  // Reverse-lex so an edge reads from its "largest" endpoint, e.g. conv{(2,0),(0,2)}.
  auto pts = face_vertices(polytope, face);
  std::sort(pts.begin(), pts.end(), std::greater<>());
  for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? "," : "") << format_point(pts[i]);
  out << '}';
  return out.str();
}

}  // namespace exphodge
