#include "exphodge/curve.hpp"

#include "exphodge/derham.hpp"
#include "exphodge/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace exphodge {

std::string PointDivisor::str() const {
  std::ostringstream out;
  out << m0 << "[0] + " << m_inf << "[inf]";
  return out.str();
}

PointDivisor pole_divisor(const LaurentPolynomial& f) {
  if (f.nvars() != 1) throw std::invalid_argument("curve computations need exactly one variable");
  if (f.is_zero()) return {};
  return {std::max<std::int64_t>(0, -f.min_exponents()[0]), std::max<std::int64_t>(0, f.max_exponents()[0])};
}

PointDivisor reduced(const PointDivisor& d) { return {d.m0 > 0 ? 1 : 0, d.m_inf > 0 ? 1 : 0}; }

PointDivisor floor_multiple(const Rational& c, const PointDivisor& d) {
  return {to_int64(floor(c * d.m0)), to_int64(floor(c * d.m_inf))};
}

PointDivisor ceil_multiple(const Rational& c, const PointDivisor& d) {
  return {to_int64(ceil(c * d.m0)), to_int64(ceil(c * d.m_inf))};
}

std::int64_t connection_spread(const LaurentPolynomial& f) {
  const PointDivisor p = pole_divisor(f);
  return std::max(p.m0, p.m_inf);
}

std::int64_t default_truncation(const TwoTermComplex& complex) {
  std::int64_t m0 = 0, m_inf = 0;
  for (const auto& d : {complex.degree0, complex.degree1}) {
    if (!d) continue;
    m0 = std::max(m0, std::abs(d->m0));
    m_inf = std::max(m_inf, std::abs(d->m_inf));
  }
  return 4 * (m0 + m_inf + 2) + 10;
}

namespace {

std::int64_t largest_coefficient(const TwoTermComplex& complex) {
  std::int64_t m = 0;
  for (const auto& d : {complex.degree0, complex.degree1})
    if (d) m = std::max({m, std::abs(d->m0), std::abs(d->m_inf)});
  return m;
}

/// Exponents shifted by ∇ applied to x^k, with their coefficients.
std::vector<std::pair<std::int64_t, Rational>> nabla_monomial(const LaurentPolynomial& f, std::int64_t k) {
  std::map<std::int64_t, Rational> out;
  if (k != 0) out[k] += k;
  for (const auto& [beta, c] : f.terms())
    if (beta[0] != 0) out[k + beta[0]] += c * beta[0];
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (auto& [e, c] : out)
    if (c != 0) terms.emplace_back(e, c);
  return terms;
}

}  // namespace

void check_connection_compatible(const TwoTermComplex& complex) {
  if (!complex.degree0) return;
  if (!complex.degree1) throw std::invalid_argument("degree-0 term without a degree-1 target");
  const PointDivisor d0 = *complex.degree0, d1 = *complex.degree1;
  // Checking the two extreme monomials on each chart covers the rest: the
  // output exponents only move inward from there.
  for (std::int64_t k : {-d0.m0, -d0.m0 + 1})
    for (const auto& [e, c] : nabla_monomial(complex.connection, k))
      if (e < -d1.m0) throw std::invalid_argument("∇ leaves the degree-1 sheaf on U0");
  for (std::int64_t k : {d0.m_inf, d0.m_inf - 1})
    for (const auto& [e, c] : nabla_monomial(complex.connection, k))
      if (e > d1.m_inf) throw std::invalid_argument("∇ leaves the degree-1 sheaf on U1");
}

CechModel::CechModel(const TwoTermComplex& complex, std::int64_t truncation)
    : truncation_(truncation), spread_(connection_spread(complex.connection)) {
  if (complex.connection.nvars() != 1) throw std::invalid_argument("curve computations need exactly one variable");
  if (truncation < largest_coefficient(complex))
    throw std::invalid_argument("truncation below the divisor coefficients");
  check_connection_compatible(complex);

  const std::int64_t B = truncation, R = B + spread_;
  const std::size_t width = static_cast<std::size_t>(2 * R + 1);
  auto frame_of = [&](std::size_t component, std::int64_t k) {
    return component * width + static_cast<std::size_t>(k + R);
  };

  // (component, lo, hi) per total degree.
  struct Range {
    std::size_t component;
    std::int64_t lo, hi;
  };
  std::array<std::vector<Range>, 3> ranges;
  if (complex.degree0) {
    const PointDivisor d = *complex.degree0;
    ranges[0] = {{0, -d.m0, B}, {1, -B, d.m_inf}};
    ranges[1].push_back({0, -B, B});
  }
  if (complex.degree1) {
    const PointDivisor d = *complex.degree1;
    ranges[1].push_back({1, -d.m0, R});
    ranges[1].push_back({2, -R, d.m_inf});
    ranges[2] = {{0, -R, R}};
  }

  std::array<std::map<std::size_t, std::size_t>, 3> local;
  for (std::size_t i = 0; i < 3; ++i)
    for (const auto& r : ranges[i])
      for (std::int64_t k = r.lo; k <= r.hi; ++k) {
        local[i].emplace(frame_of(r.component, k), frame_[i].size());
        frame_[i].push_back(frame_of(r.component, k));
      }

  auto row = [&](std::size_t degree, std::size_t component, std::int64_t k) {
    auto it = local[degree].find(frame_of(component, k));
    if (it == local[degree].end()) throw IntegrityError("Čech differential left the truncated complex");
    return it->second;
  };
  const LaurentPolynomial& f = complex.connection;

  d_[0] = SparseMatrix(frame_[1].size(), frame_[0].size());
  d_[1] = SparseMatrix(frame_[2].size(), frame_[1].size());
  std::size_t col = 0;
  for (const auto& r : ranges[0])
    for (std::int64_t k = r.lo; k <= r.hi; ++k, ++col) {
      d_[0].add(row(1, 0, k), col, Rational(r.component == 0 ? -1 : 1));
      for (const auto& [e, c] : nabla_monomial(f, k)) d_[0].add(row(1, r.component + 1, e), col, c);
    }
  col = 0;
  if (complex.degree1) {
    for (const auto& r : ranges[1])
      for (std::int64_t k = r.lo; k <= r.hi; ++k, ++col) {
        if (r.component == 0) {
          for (const auto& [e, c] : nabla_monomial(f, k)) d_[1].add(row(2, 0, e), col, -c);
        } else {
          d_[1].add(row(2, 0, k), col, Rational(r.component == 1 ? -1 : 1));
        }
      }
  }

  for (const auto& column : d_[0].columns()) {
    SparseVector mapped;
    for (const auto& [k, v] : column) mapped.emplace_back(frame_[1][k], v);
    std::sort(mapped.begin(), mapped.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    boundaries_.insert(mapped);
  }
  const std::size_t r0 = boundaries_.dimension();
  const std::size_t r1 = exact_rank(d_[1]);
  dims_ = {frame_[0].size() - r0, frame_[1].size() - r0 - r1, frame_[2].size() - r1};
}

std::size_t CechModel::frame_index_t1(std::size_t component, std::int64_t k) const {
  const std::int64_t R = truncation_ + spread_;
  if (k < -R || k > R) throw std::out_of_range("exponent outside the truncation frame");
  return component * static_cast<std::size_t>(2 * R + 1) + static_cast<std::size_t>(k + R);
}

std::vector<SparseVector> CechModel::cocycles() const {
  std::vector<SparseVector> local;
  if (d_[1].rows() == 0) {
    for (std::size_t k = 0; k < frame_[1].size(); ++k) local.push_back({{k, Rational(1)}});
  } else {
    local = kernel_basis(d_[1]);
  }
  std::vector<SparseVector> out;
  for (const auto& v : local) {
    SparseVector mapped;
    for (const auto& [k, value] : v) mapped.emplace_back(frame_[1][k], value);
    std::sort(mapped.begin(), mapped.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(mapped));
  }
  return out;
}

std::size_t CechModel::image_dimension(const std::vector<SparseVector>& vectors) const {
  EchelonSpace space = boundaries_;
  for (const auto& v : vectors) space.insert(v);
  return space.dimension() - boundaries_.dimension();
}

CechModel cech_hypercohomology(const TwoTermComplex& complex, std::optional<std::int64_t> truncation) {
  const std::int64_t B = truncation.value_or(default_truncation(complex));
  CechModel model(complex, B);
  const CechModel wider(complex, B + 5);
  if (model.dims() != wider.dims()) throw IntegrityError("truncation unstable");
  return model;
}

std::vector<Rational> curve_jumps(const LaurentPolynomial& f) {
  const PointDivisor p = pole_divisor(f);
  std::set<Rational> jumps{Rational(0), Rational(1)};
  for (std::int64_t e : {p.m0, p.m_inf})
    for (std::int64_t j = 0; j <= e; ++j) jumps.insert(Rational(j, std::max<std::int64_t>(e, 1)));
  return {jumps.begin(), jumps.end()};
}

TwoTermComplex newton_level(const LaurentPolynomial& f, const Rational& lambda) {
  const PointDivisor p = pole_divisor(f);
  TwoTermComplex k{std::nullopt, std::nullopt, f};
  if (lambda <= 0) k.degree0 = floor_multiple(-lambda, p);
  if (lambda <= 1) k.degree1 = floor_multiple(1 - lambda, p);
  return k;
}

namespace {

std::optional<PointDivisor> deligne_structure_divisor(const PointDivisor& p, const Rational& lambda) {
  if (lambda > 0) return std::nullopt;
  if (lambda > -1) return kBoundary - ceil_multiple(lambda, p);
  return *deligne_structure_divisor(p, lambda + 1) + kBoundary + p;
}

}  // namespace

TwoTermComplex deligne_level(const LaurentPolynomial& f, const Rational& lambda) {
  const PointDivisor p = pole_divisor(f);
  TwoTermComplex k{deligne_structure_divisor(p, lambda), std::nullopt, f};
  // Ω¹ = Ω̌¹(−S) in the log frame.
  if (auto d = deligne_structure_divisor(p, lambda - 1)) k.degree1 = *d - kBoundary;
  return k;
}

TwoTermComplex compact_level(const LaurentPolynomial& f, const Rational& lambda) {
  const PointDivisor t = kBoundary - reduced(pole_divisor(f));
  TwoTermComplex k = newton_level(f, lambda);
  if (k.degree0) k.degree0 = *k.degree0 - t;
  if (k.degree1) k.degree1 = *k.degree1 - t;
  return k;
}

namespace {

std::int64_t shared_truncation(const TwoTermComplex& ambient, const std::vector<TwoTermComplex>& levels,
                               std::optional<std::int64_t> truncation) {
  if (truncation) return *truncation;
  std::int64_t b = default_truncation(ambient);
  for (const auto& k : levels) b = std::max(b, default_truncation(k));
  return b;
}

/// Image dimensions of H¹ of each level inside H¹ of the ambient.
CurveFiltration image_filtration(const TwoTermComplex& ambient_complex, const std::vector<Rational>& jumps,
                                 TwoTermComplex (*level)(const LaurentPolynomial&, const Rational&),
                                 const LaurentPolynomial& f, std::optional<std::int64_t> truncation) {
  std::vector<TwoTermComplex> levels;
  for (const auto& lambda : jumps) levels.push_back(level(f, lambda));
  const std::int64_t b = shared_truncation(ambient_complex, levels, truncation);
  const CechModel ambient = cech_hypercohomology(ambient_complex, b);
  CurveFiltration out;
  for (std::size_t j = 0; j < jumps.size(); ++j) {
    const CechModel sub = cech_hypercohomology(levels[j], b);
    out.push_back({jumps[j], ambient.image_dimension(sub.cocycles())});
  }
  return out;
}

/// Smallest M in 2, 4, 8, ... with h¹(𝔉^{−M}) = h¹(𝔉^{−2M}) = h¹(𝔉^{−M−2}).
int deligne_ambient_level(const LaurentPolynomial& f) {
  int m = 2;
  auto h1 = [&](int level) { return cech_hypercohomology(deligne_level(f, Rational(-level))).h(1); };
  for (;;) {
    if (m > 32) throw IntegrityError("stabilization failure");
    const std::size_t here = h1(m);
    bool stable = here == h1(2 * m);
    if (stable && m + 2 != 2 * m) stable = here == h1(m + 2);
    if (stable) break;
    m *= 2;
  }
  return m;
}

}  // namespace

CurveFiltration newton_filtration_on_H1(const LaurentPolynomial& f, std::optional<std::int64_t> truncation) {
  return image_filtration(newton_level(f, 0), curve_jumps(f), newton_level, f, truncation);
}

CurveFiltration deligne_filtration_on_H1(const LaurentPolynomial& f, std::optional<std::int64_t> truncation) {
  const int m = deligne_ambient_level(f);
  return image_filtration(deligne_level(f, Rational(-m)), curve_jumps(f), deligne_level, f, truncation);
}

CurveFiltration compact_filtration_on_H1(const LaurentPolynomial& f, std::optional<std::int64_t> truncation) {
  return image_filtration(compact_level(f, 0), curve_jumps(f), compact_level, f, truncation);
}

std::vector<std::pair<Rational, std::size_t>> graded_dims(const CurveFiltration& filtration) {
  std::vector<std::pair<Rational, std::size_t>> out;
  for (std::size_t j = 0; j < filtration.size(); ++j) {
    const std::size_t next = j + 1 < filtration.size() ? filtration[j + 1].dim : 0;
    if (next > filtration[j].dim) throw IntegrityError("filtration not decreasing at " + to_string(filtration[j].lambda));
    out.emplace_back(filtration[j].lambda, filtration[j].dim - next);
  }
  return out;
}

CurveFiltrationReport compare_filtrations(const LaurentPolynomial& f, std::optional<std::int64_t> truncation) {
  CurveFiltrationReport report;
  report.jumps = curve_jumps(f);
  report.ambient_level = deligne_ambient_level(f);
  const TwoTermComplex ambient_complex = deligne_level(f, Rational(-report.ambient_level));

  std::vector<TwoTermComplex> newton_levels, deligne_levels;
  for (const auto& lambda : report.jumps) {
    newton_levels.push_back(newton_level(f, lambda));
    deligne_levels.push_back(deligne_level(f, lambda));
  }
  std::vector<TwoTermComplex> all = newton_levels;
  all.insert(all.end(), deligne_levels.begin(), deligne_levels.end());
  const std::int64_t b = shared_truncation(ambient_complex, all, truncation);
  report.truncation = b;
  const CechModel ambient = cech_hypercohomology(ambient_complex, b);
  report.h1 = ambient.h(1);

  const TwistedDeRham toric(f);
  const CurveFiltration newton_f0 = newton_filtration_on_H1(f, truncation);
  const CurveFiltration compact = compact_filtration_on_H1(f, truncation);

  report.dims_agree = report.subspaces_agree = report.deligne_injective = report.nonincreasing = true;
  for (std::size_t j = 0; j < report.jumps.size(); ++j) {
    const Rational& lambda = report.jumps[j];
    CurveJumpComparison row;
    row.lambda = lambda;

    const std::vector<SparseVector> newton_z = cech_hypercohomology(newton_levels[j], b).cocycles();
    const CechModel deligne_sub = cech_hypercohomology(deligne_levels[j], b);
    const std::vector<SparseVector> deligne_z = deligne_sub.cocycles();
    std::vector<SparseVector> toric_z;
    for (const auto& alpha : lattice_points_in_dilate(toric.polytope(), 1 - lambda)) {
      SparseVector v{{ambient.frame_index_t1(1, alpha[0]), Rational(1)}, {ambient.frame_index_t1(2, alpha[0]), Rational(1)}};
      toric_z.push_back(std::move(v));
    }

    row.newton = newton_f0[j].dim;
    row.deligne = ambient.image_dimension(deligne_z);
    row.toric = toric.filtration_image_dim(lambda, 1);
    row.compact = compact[j].dim;
    row.deligne_injective = deligne_sub.h(1) == row.deligne;

    const std::size_t newton_in_ambient = ambient.image_dimension(newton_z);
    const std::size_t toric_in_ambient = ambient.image_dimension(toric_z);
    std::vector<SparseVector> joint = newton_z;
    joint.insert(joint.end(), deligne_z.begin(), deligne_z.end());
    joint.insert(joint.end(), toric_z.begin(), toric_z.end());
    const std::size_t joint_dim = ambient.image_dimension(joint);
    row.subspaces_agree = newton_in_ambient == row.newton && toric_in_ambient == row.toric && joint_dim == row.newton &&
                          joint_dim == row.deligne && joint_dim == row.toric;

    report.dims_agree = report.dims_agree && row.newton == row.deligne && row.deligne == row.toric;
    report.subspaces_agree = report.subspaces_agree && row.subspaces_agree;
    report.deligne_injective = report.deligne_injective && row.deligne_injective;
    if (j > 0) {
      const auto& prev = report.rows.back();
      report.nonincreasing = report.nonincreasing && prev.newton >= row.newton && prev.deligne >= row.deligne &&
                             prev.toric >= row.toric && prev.compact >= row.compact;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

CurveDualityReport duality_check_curve(const LaurentPolynomial& f, std::optional<std::int64_t> truncation) {
  const auto ordinary = graded_dims(newton_filtration_on_H1(f, truncation));
  const auto compact = graded_dims(compact_filtration_on_H1(-f, truncation));
  std::map<Rational, std::size_t> compact_by_level(compact.begin(), compact.end());
  CurveDualityReport report;
  report.pass = true;
  for (const auto& [lambda, h] : ordinary) {
    auto it = compact_by_level.find(1 - lambda);
    const std::size_t hc = it == compact_by_level.end() ? 0 : it->second;
    report.rows.emplace_back(lambda, h, hc);
    report.pass = report.pass && h == hc;
  }
  return report;
}

bool divisor_shift_invariance(const LaurentPolynomial& f, const PointDivisor& e, const PointDivisor& d) {
  const PointDivisor p = pole_divisor(f);
  if (e.m0 < 0 || e.m_inf < 0) throw std::invalid_argument("E must be effective");
  if ((e.m0 > 0 && p.m0 == 0) || (e.m_inf > 0 && p.m_inf == 0))
    throw std::invalid_argument("E must be supported on the poles of f");
  const CechModel before = cech_hypercohomology({d, d + p, f});
  const CechModel after = cech_hypercohomology({d + e, d + e + p, f});
  return before.dims() == after.dims();
}

}  // namespace exphodge
