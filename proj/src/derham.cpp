#include "exphodge/derham.hpp"

#include <bit>

namespace exphodge {

ComplexSlice::ComplexSlice(Rational level, bool graded, std::size_t nvars)
    : level_(std::move(level)), graded_(graded), nvars_(nvars), basis_(nvars + 1), index_(nvars + 1) {}

std::optional<std::size_t> ComplexSlice::index_of(std::size_t degree, const MonomialForm& form) const {
  const auto& index = index_.at(degree);
  auto it = index.find(form);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

namespace {

/// Bitmasks of the p-subsets of {0..n-1}, lexicographic in sorted index order.
std::vector<std::uint32_t> wedge_subsets(std::size_t n, std::size_t p) {
  std::vector<std::uint32_t> out;
  std::vector<std::size_t> idx(p);
  for (std::size_t i = 0; i < p; ++i) idx[i] = i;
  if (p > n) return out;
  for (;;) {
    std::uint32_t mask = 0;
    for (auto i : idx) mask |= 1u << i;
    out.push_back(mask);
    std::size_t i = p;
    while (i > 0 && idx[i - 1] == n - p + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < p; ++j) idx[j] = idx[j - 1] + 1;
  }
}

int wedge_sign(std::uint32_t wedge, std::size_t i) {
  const std::uint32_t below = wedge & ((1u << i) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

NewtonPolytope checked_polytope(const LaurentPolynomial& f) {
  NewtonPolytope polytope = newton_polytope(f);
  polytope.require_full_dimensional();
  if (f.nvars() > 31) throw std::invalid_argument("too many variables for the wedge bitmask");
  return polytope;
}

}  // namespace

TwistedDeRham::TwistedDeRham(LaurentPolynomial f)
    : f_(std::move(f)), polytope_(checked_polytope(f_)), base_(build(0, false)) {
  const std::size_t n = nvars();
  base_ranks_.assign(n + 1, 0);
  base_boundaries_.resize(n + 1);
  for (std::size_t p = 0; p < n; ++p) {
    for (const auto& column : base_.differential(p).columns()) base_boundaries_[p + 1].insert(column);
    base_ranks_[p] = base_boundaries_[p + 1].dimension();
  }
}

ComplexSlice TwistedDeRham::level(const Rational& lambda) const { return build(lambda, false); }
ComplexSlice TwistedDeRham::graded_level(const Rational& lambda) const { return build(lambda, true); }

ComplexSlice TwistedDeRham::build(const Rational& lambda, bool graded) const {
  const std::size_t n = nvars();
  if (lambda > static_cast<long>(n)) throw std::invalid_argument("level above top degree");
  ComplexSlice slice(lambda, graded, n);
  const Integer first_degree = ceil(lambda);

  for (std::size_t p = 0; p <= n; ++p) {
    if (Integer(p) < first_degree) continue;
    const Rational bound = Rational(static_cast<long>(p)) - lambda;
    const auto subsets = wedge_subsets(n, p);
    for (auto& alpha : lattice_points_in_dilate(polytope_, bound)) {
      if (graded && weight(polytope_, alpha).value() != bound) continue;
      for (auto mask : subsets) {
        slice.index_[p].emplace(MonomialForm{alpha, mask}, slice.basis_[p].size());
        slice.basis_[p].push_back(MonomialForm{alpha, mask});
      }
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    SparseMatrix m(slice.dimension(p + 1), slice.dimension(p));
    for (std::size_t col = 0; col < slice.dimension(p); ++col) {
      const MonomialForm& source = slice.basis_[p][col];
      auto emit = [&](const Exponent& target_alpha, std::uint32_t target_wedge, const Rational& value) {
        auto row = slice.index_of(p + 1, MonomialForm{target_alpha, target_wedge});
        if (!row) {
          // Weight subadditivity (w(α+β) ≤ w(α)+1 for β in the support)
          // keeps every term inside the next degree of the same level.
          if (!graded) throw IntegrityError("∇ left the filtration level");
          return;
        }
        m.add(*row, col, value);
      };
      for (std::size_t i = 0; i < n; ++i) {
        if (source.wedge & (1u << i)) continue;
        const int sign = wedge_sign(source.wedge, i);
        const std::uint32_t target = source.wedge | (1u << i);
        if (source.alpha[i] != 0) emit(source.alpha, target, Rational(sign * source.alpha[i]));
        for (const auto& [beta, c] : f_.terms()) {
          if (beta[i] == 0) continue;
          Exponent shifted = source.alpha;
          for (std::size_t k = 0; k < n; ++k) shifted[k] += beta[k];
          emit(shifted, target, c * (sign * beta[i]));
        }
      }
    }
    slice.differentials_.push_back(std::move(m));
  }
  return slice;
}

std::vector<std::size_t> slice_cohomology(const ComplexSlice& slice) {
  const std::size_t n = slice.nvars();
  std::vector<std::size_t> ranks(n + 1, 0);
  for (std::size_t p = 0; p < n; ++p) ranks[p] = exact_rank(slice.differential(p));
  std::vector<std::size_t> h(n + 1);
  for (std::size_t p = 0; p <= n; ++p) {
    const std::size_t incoming = p == 0 ? 0 : ranks[p - 1];
    h[p] = slice.dimension(p) - ranks[p] - incoming;
  }
  return h;
}

std::vector<std::size_t> TwistedDeRham::betti_numbers() const {
  const std::size_t n = nvars();
  std::vector<std::size_t> h(n + 1);
  for (std::size_t p = 0; p <= n; ++p) {
    const std::size_t incoming = p == 0 ? 0 : base_ranks_[p - 1];
    h[p] = base_.dimension(p) - base_ranks_[p] - incoming;
  }
  return h;
}

std::vector<SparseVector> TwistedDeRham::cocycles(const Rational& lambda, std::size_t degree) const {
  const std::size_t n = nvars();
  if (degree > n) throw std::out_of_range("degree above n");
  if (lambda < 0 || lambda > static_cast<long>(n)) throw std::invalid_argument("level outside [0, n]");
  const ComplexSlice slice = level(lambda);
  std::vector<SparseVector> local;
  if (degree == n) {
    for (std::size_t k = 0; k < slice.dimension(n); ++k) local.push_back({{k, Rational(1)}});
  } else {
    local = kernel_basis(slice.differential(degree));
  }
  // Level λ ≥ 0 sits inside level 0 coordinate-wise.
  std::vector<SparseVector> out;
  for (const auto& v : local) {
    SparseVector mapped;
    for (const auto& [k, value] : v) {
      auto target = base_.index_of(degree, slice.basis(degree)[k]);
      if (!target) throw IntegrityError("filtration level not contained in level 0");
      mapped.emplace_back(*target, value);
    }
    std::sort(mapped.begin(), mapped.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(mapped));
  }
  return out;
}

std::size_t TwistedDeRham::filtration_image_dim(const Rational& lambda, std::size_t degree) const {
  EchelonSpace space = base_boundaries_.at(degree);
  const std::size_t boundary_dim = space.dimension();
  for (const auto& z : cocycles(lambda, degree)) space.insert(z);
  return space.dimension() - boundary_dim;
}

std::vector<std::size_t> TwistedDeRham::graded_cohomology(const Rational& lambda) const {
  return slice_cohomology(graded_level(lambda));
}

ComplexSlice build_filtration_level(const LaurentPolynomial& f, const Rational& lambda) {
  return TwistedDeRham(f).level(lambda);
}

ComplexSlice build_graded_level(const LaurentPolynomial& f, const Rational& lambda) {
  return TwistedDeRham(f).graded_level(lambda);
}

std::vector<std::size_t> betti_numbers(const LaurentPolynomial& f) { return TwistedDeRham(f).betti_numbers(); }

std::size_t filtration_image_dim(const LaurentPolynomial& f, const Rational& lambda, std::size_t degree) {
  return TwistedDeRham(f).filtration_image_dim(lambda, degree);
}

}  // namespace exphodge
