/**
 * @file groebner.hpp
 * @brief Buchberger's algorithm over F_p or Q, producing reduced Gröbner
 * bases.
 *
 * Polynomials are term vectors sorted descending in the chosen monomial
 * order with nonzero coefficients. The engine holds no global state; one
 * call computes one basis.
 */
#ifndef EXPHODGE_GROEBNER_HPP
#define EXPHODGE_GROEBNER_HPP

#include "exphodge/modular.hpp"
#include "exphodge/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace exphodge::groebner {

enum class MonomialOrder { grevlex, lex };

using Monomial = std::vector<std::uint32_t>;

/// True when a < b in `order`.
inline bool monomial_less(MonomialOrder order, const Monomial& a, const Monomial& b) {
  if (order == MonomialOrder::grevlex) {
    std::uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

struct PrimeField {
  using Elem = std::uint64_t;
  std::uint64_t p;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return a == 0; }
  Elem add(const Elem& a, const Elem& b) const { return modular::add(a, b, p); }
  Elem sub(const Elem& a, const Elem& b) const { return modular::sub(a, b, p); }
  Elem mul(const Elem& a, const Elem& b) const { return modular::mul(a, b, p); }
  Elem inv(const Elem& a) const { return modular::inverse(a, p); }
};

struct RationalField {
  using Elem = Rational;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return a == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return 1 / a; }
};

template <class Field>
struct Term {
  Monomial monomial;
  typename Field::Elem coefficient;
};

template <class Field>
using Polynomial = std::vector<Term<Field>>;

template <class Field>
struct Result {
  std::vector<Polynomial<Field>> basis;
  bool budget_exceeded = false;
  std::size_t pairs_processed = 0;

  bool is_unit() const {
    return !budget_exceeded && basis.size() == 1 && basis[0].size() == 1 &&
           std::all_of(basis[0][0].monomial.begin(), basis[0][0].monomial.end(), [](auto e) { return e == 0; });
  }
};

namespace detail {

template <class Field>
class Engine {
 public:
  Engine(const Field& field, MonomialOrder order) : k_(field), order_(order) {}

  void normalize(Polynomial<Field>& f) const {
    std::erase_if(f, [&](const Term<Field>& t) { return k_.is_zero(t.coefficient); });
    std::sort(f.begin(), f.end(),
              [&](const Term<Field>& a, const Term<Field>& b) { return monomial_less(order_, b.monomial, a.monomial); });
    // Merge equal monomials.
    Polynomial<Field> merged;
    for (auto& t : f) {
      if (!merged.empty() && merged.back().monomial == t.monomial) {
        merged.back().coefficient = k_.add(merged.back().coefficient, t.coefficient);
        if (k_.is_zero(merged.back().coefficient)) merged.pop_back();
      } else {
        merged.push_back(std::move(t));
      }
    }
    f = std::move(merged);
  }

  void make_monic(Polynomial<Field>& f) const {
    if (f.empty()) return;
    const auto inv = k_.inv(f.front().coefficient);
    for (auto& t : f) t.coefficient = k_.mul(t.coefficient, inv);
  }

  /// f − c·m·g.
  Polynomial<Field> subtract_multiple(const Polynomial<Field>& f, const typename Field::Elem& c, const Monomial& m,
                                      const Polynomial<Field>& g) const {
    Polynomial<Field> out;
    out.reserve(f.size() + g.size());
    auto a = f.begin();
    auto b = g.begin();
    Monomial shifted;
    auto shift = [&](const Monomial& x) {
      shifted.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] + m[i];
      return shifted;
    };
    while (a != f.end() || b != g.end()) {
      if (b == g.end()) {
        out.push_back(*a++);
        continue;
      }
      const Monomial mb = shift(b->monomial);
      if (a == f.end() || monomial_less(order_, a->monomial, mb)) {
        out.push_back({mb, k_.sub(k_.zero(), k_.mul(c, b->coefficient))});
        ++b;
      } else if (monomial_less(order_, mb, a->monomial)) {
        out.push_back(*a++);
      } else {
        auto z = k_.sub(a->coefficient, k_.mul(c, b->coefficient));
        if (!k_.is_zero(z)) out.push_back({a->monomial, std::move(z)});
        ++a;
        ++b;
      }
    }
    return out;
  }

  /// Full reduction of f modulo `basis` (monic elements).
  Polynomial<Field> reduce(Polynomial<Field> f, const std::vector<Polynomial<Field>>& basis) const {
    Polynomial<Field> remainder;
    while (!f.empty()) {
      const Term<Field>& lead = f.front();
      const Polynomial<Field>* divisor = nullptr;
      for (const auto& g : basis) {
        if (!g.empty() && divides(g.front().monomial, lead.monomial)) {
          divisor = &g;
          break;
        }
      }
      if (!divisor) {
        remainder.push_back(lead);
        f.erase(f.begin());
        continue;
      }
      Monomial m(lead.monomial.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = lead.monomial[i] - divisor->front().monomial[i];
      f = subtract_multiple(f, lead.coefficient, m, *divisor);
    }
    return remainder;
  }

  Polynomial<Field> s_polynomial(const Polynomial<Field>& f, const Polynomial<Field>& g) const {
    const Monomial l = lcm(f.front().monomial, g.front().monomial);
    Monomial mf(l.size()), mg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
      mf[i] = l[i] - f.front().monomial[i];
      mg[i] = l[i] - g.front().monomial[i];
    }
    Polynomial<Field> scaled;
    for (const auto& t : f) {
      Monomial x(t.monomial.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = t.monomial[i] + mf[i];
      scaled.push_back({x, t.coefficient});
    }
    return subtract_multiple(scaled, k_.one(), mg, g);
  }

  bool is_constant(const Polynomial<Field>& f) const {
    return f.size() == 1 && std::all_of(f[0].monomial.begin(), f[0].monomial.end(), [](auto e) { return e == 0; });
  }

  MonomialOrder order() const { return order_; }

 private:
  const Field& k_;
  MonomialOrder order_;
};

}  // namespace detail

/**
 * Reduced Gröbner basis of the ideal generated by `generators`.
 *
 * Pairs are processed smallest-lcm first with Buchberger's coprime-leading-
 * monomial criterion. Processing more than `max_pairs` pairs stops the
 * computation with budget_exceeded set. A constant in the basis stops early
 * with the basis {1}. The output is monic and sorted ascending by leading
 * monomial.
 */
template <class Field>
Result<Field> groebner_basis(const Field& field, std::vector<Polynomial<Field>> generators,
                             MonomialOrder order = MonomialOrder::grevlex, std::size_t max_pairs = 20000) {
  detail::Engine<Field> engine(field, order);
  Result<Field> result;
  std::vector<Polynomial<Field>> basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  auto unit = [&](const Polynomial<Field>& constant) {
    Polynomial<Field> one{{Monomial(constant.front().monomial.size(), 0), field.one()}};
    result.basis = {one};
    return result;
  };

  for (auto& g : generators) {
    engine.normalize(g);
    if (g.empty()) continue;
    engine.make_monic(g);
    if (engine.is_constant(g)) return unit(g);
    for (std::size_t i = 0; i < basis.size(); ++i) pairs.emplace_back(i, basis.size());
    basis.push_back(std::move(g));
  }

  while (!pairs.empty()) {
    if (result.pairs_processed >= max_pairs) {
      result.budget_exceeded = true;
      result.basis = basis;
      return result;
    }
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      return monomial_less(order, lcm(basis[a.first].front().monomial, basis[a.second].front().monomial),
                           lcm(basis[b.first].front().monomial, basis[b.second].front().monomial));
    });
    const auto [i, j] = *best;
    pairs.erase(best);
    ++result.pairs_processed;
    if (coprime(basis[i].front().monomial, basis[j].front().monomial)) continue;

    Polynomial<Field> h = engine.reduce(engine.s_polynomial(basis[i], basis[j]), basis);
    if (h.empty()) continue;
    engine.make_monic(h);
    if (engine.is_constant(h)) return unit(h);
    for (std::size_t k = 0; k < basis.size(); ++k) pairs.emplace_back(k, basis.size());
    basis.push_back(std::move(h));
  }

  // Minimalize, then interreduce.
  std::vector<Polynomial<Field>> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const bool divisible = divides(basis[j].front().monomial, basis[i].front().monomial);
      const bool same = basis[j].front().monomial == basis[i].front().monomial;
      redundant = divisible && (!same || j < i);
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial<Field>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial<Field> tail(minimal[i].begin() + 1, minimal[i].end());
    Polynomial<Field> reduced{minimal[i].front()};
    for (auto& t : engine.reduce(std::move(tail), others)) reduced.push_back(std::move(t));
    minimal[i] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const auto& a, const auto& b) {
    return monomial_less(order, a.front().monomial, b.front().monomial);
  });
  result.basis = std::move(minimal);
  return result;
}

}  // namespace exphodge::groebner

#endif  // EXPHODGE_GROEBNER_HPP
