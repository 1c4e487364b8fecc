#include "exphodge/nondegen.hpp"

#include "exphodge/modular.hpp"
#include "exphodge/parallel.hpp"

#include <cstdlib>
#include <sstream>

namespace exphodge {

FaceSystem build_face_system(const LaurentPolynomial& f, const NewtonPolytope& polytope, const Face& face) {
  const LaurentPolynomial restricted = face_restriction(f, polytope, face);
  std::vector<LaurentPolynomial> gens{restricted};
  for (std::size_t i = 0; i < f.nvars(); ++i) gens.push_back(log_derivative(restricted, i));

  Exponent lo = restricted.min_exponents();
  Exponent shift(f.nvars());
  for (std::size_t i = 0; i < lo.size(); ++i) shift[i] = -lo[i];

  FaceSystem system{face, {}, shift};
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    LaurentPolynomial::TermMap shifted;
    for (const auto& [alpha, c] : g.terms()) {
      Exponent beta = alpha;
      for (std::size_t i = 0; i < beta.size(); ++i) beta[i] += shift[i];
      shifted.emplace(std::move(beta), c);
    }
    system.generators.emplace_back(f.variables(), std::move(shifted));
  }
  return system;
}

namespace {

std::uint64_t to_field(const groebner::PrimeField& k, const Rational& q) { return reduce_rational_mod_p(q, k.p); }
Rational to_field(const groebner::RationalField&, const Rational& q) { return q; }

template <class Field>
FaceStatus decide(const FaceSystem& system, const Field& field, std::size_t max_pairs) {
  const auto result =
      groebner::groebner_basis(field, saturated_generators(system, field), groebner::MonomialOrder::grevlex, max_pairs);
  if (result.budget_exceeded) return FaceStatus::budget_exceeded;
  return result.is_unit() ? FaceStatus::empty : FaceStatus::nonempty;
}

}  // namespace

template <class Field>
std::vector<groebner::Polynomial<Field>> saturated_generators(const FaceSystem& system, const Field& field) {
  const std::size_t n = system.shift.size();
  std::vector<groebner::Polynomial<Field>> out;
  for (const auto& g : system.generators) {
    groebner::Polynomial<Field> p;
    for (const auto& [alpha, c] : g.terms()) {
      groebner::Monomial m(n + 1, 0);
      for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(alpha[i]);
      auto coefficient = to_field(field, c);
      if (!field.is_zero(coefficient)) p.push_back({std::move(m), std::move(coefficient)});
    }
    if (!p.empty()) out.push_back(std::move(p));
  }
  groebner::Monomial txx(n + 1, 1);
  groebner::Polynomial<Field> saturation{{txx, field.one()},
                                         {groebner::Monomial(n + 1, 0), field.sub(field.zero(), field.one())}};
  out.push_back(std::move(saturation));
  return out;
}

template std::vector<groebner::Polynomial<groebner::PrimeField>> saturated_generators(const FaceSystem&,
                                                                                      const groebner::PrimeField&);
template std::vector<groebner::Polynomial<groebner::RationalField>> saturated_generators(
    const FaceSystem&, const groebner::RationalField&);

std::string to_string(FaceStatus status) {
  switch (status) {
    case FaceStatus::vertex: return "vertex";
    case FaceStatus::empty: return "empty";
    case FaceStatus::nonempty: return "nonempty";
    case FaceStatus::budget_exceeded: return "budget exceeded";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::nondegenerate: return "nondegenerate";
    case Verdict::degenerate: return "degenerate";
    case Verdict::likely_nondegenerate: return "likely-nondegenerate";
  }
  return "?";
}

FaceStatus check_face(const LaurentPolynomial& f, const NewtonPolytope& polytope, const Face& face,
                      std::uint64_t prime, std::size_t max_pairs) {
  if (face.dim == 0) return FaceStatus::empty;
  const FaceSystem system = build_face_system(f, polytope, face);
  return decide(system, groebner::PrimeField{prime}, max_pairs);
}

FaceStatus check_face_exact(const LaurentPolynomial& f, const NewtonPolytope& polytope, const Face& face,
                            std::size_t max_pairs) {
  if (face.dim == 0) return FaceStatus::empty;
  const FaceSystem system = build_face_system(f, polytope, face);
  return decide(system, groebner::RationalField{}, max_pairs);
}

std::string Witness::str() const {
  std::ostringstream out;
  out << '(';
  if (rational) {
    for (std::size_t i = 0; i < rational->size(); ++i) out << (i ? "," : "") << to_string((*rational)[i]);
    out << ')';
  } else {
    for (std::size_t i = 0; i < modular.size(); ++i) out << (i ? "," : "") << modular[i];
    out << ") over F_" << prime;
  }
  return out.str();
}

bool verify_witness(const FaceSystem& system, const std::vector<Rational>& point) {
  if (point.size() != system.shift.size()) return false;
  for (const auto& x : point)
    if (x == 0) return false;
  for (const auto& g : system.generators)
    if (g.evaluate(point) != 0) return false;
  return true;
}

bool verify_witness_mod_p(const FaceSystem& system, const std::vector<std::uint64_t>& point, std::uint64_t p) {
  if (point.size() != system.shift.size()) return false;
  for (auto x : point)
    if (x % p == 0) return false;
  for (const auto& g : system.generators) {
    std::uint64_t sum = 0;
    for (const auto& [alpha, c] : g.terms()) {
      std::uint64_t term = reduce_rational_mod_p(c, p);
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        const std::uint64_t base = alpha[i] >= 0 ? point[i] % p : modular::inverse(point[i] % p, p);
        term = modular::mul(term, modular::pow(base, static_cast<std::uint64_t>(std::llabs(alpha[i])), p), p);
      }
      sum = modular::add(sum, term, p);
    }
    if (sum != 0) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kSearchBudget = 2'000'000;

std::optional<std::vector<Rational>> search_rational_witness(const FaceSystem& system) {
  static const std::vector<Rational> kCandidates = {
      Rational(1),     Rational(-1),    Rational(2),     Rational(-2),    Rational(1, 2),
      Rational(-1, 2), Rational(3),     Rational(-3),    Rational(1, 3),  Rational(-1, 3),
      Rational(3, 2),  Rational(-3, 2), Rational(2, 3),  Rational(-2, 3),
  };
  const std::size_t n = system.shift.size();
  std::size_t width = kCandidates.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= width;
  while (width > 2 && total > kSearchBudget / 10) {
    --width;
    total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= width;
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<Rational> point(n);
  for (std::size_t count = 0; count < total; ++count) {
    std::size_t rest = count;
    for (std::size_t i = n; i-- > 0;) {
      idx[i] = rest % width;
      rest /= width;
    }
    for (std::size_t i = 0; i < n; ++i) point[i] = kCandidates[idx[i]];
    if (verify_witness(system, point)) return point;
  }
  return std::nullopt;
}

std::optional<std::pair<std::uint64_t, std::vector<std::uint64_t>>> search_modular_witness(const FaceSystem& system) {
  const std::size_t n = system.shift.size();
  for (std::uint64_t p = 2; p <= 101; ++p) {
    if (!modular::is_prime(p)) continue;
    std::size_t total = 1;
    bool too_big = false;
    for (std::size_t i = 0; i < n; ++i) {
      total *= (p - 1);
      too_big = too_big || total > kSearchBudget;
    }
    if (too_big) break;
    try {
      std::vector<std::uint64_t> point(n);
      for (std::size_t count = 0; count < total; ++count) {
        std::size_t rest = count;
        for (std::size_t i = n; i-- > 0;) {
          point[i] = rest % (p - 1) + 1;
          rest /= (p - 1);
        }
        if (verify_witness_mod_p(system, point, p)) return std::make_pair(p, point);
      }
    } catch (const BadPrimeError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace

NondegeneracyReport is_nondegenerate(const LaurentPolynomial& f, const NondegenConfig& config) {
  const NewtonPolytope polytope = newton_polytope(f);
  polytope.require_full_dimensional();

  NondegeneracyReport report;
  modular::PrimeSource source(config.seed);
  int failures = 0;
  while (static_cast<int>(report.primes.size()) < std::max(1, config.primes)) {
    const std::uint64_t p = source.next();
    try {
      reduce_mod_p(f, p);
      report.primes.push_back(p);
    } catch (const BadPrimeError&) {
      if (++failures > 100) throw BadPrimeError("prime exhaustion: modular reductions repeatedly failed");
    }
  }

  for (const auto& face : proper_faces_excluding_origin(polytope)) {
    FaceReport fr;
    fr.face = face;
    fr.vertices = face_vertices(polytope, face);
    fr.status = FaceStatus::vertex;
    fr.certified = face.dim == 0;
    report.faces.push_back(std::move(fr));
  }

  parallel_for(report.faces.size(), config.threads, [&](std::size_t k) {
    FaceReport& fr = report.faces[k];
    if (fr.face.dim == 0) return;
    std::size_t budget_hits = 0;
    for (std::uint64_t p : report.primes) {
      switch (check_face(f, polytope, fr.face, p, config.max_pairs)) {
        case FaceStatus::empty: ++fr.unit_votes; break;
        case FaceStatus::nonempty: ++fr.nonunit_votes; break;
        default: ++budget_hits; break;
      }
    }
    if (fr.unit_votes + fr.nonunit_votes == 0) fr.status = FaceStatus::budget_exceeded;
    else fr.status = fr.nonunit_votes > fr.unit_votes ? FaceStatus::nonempty : FaceStatus::empty;

    if (config.certify) {
      const FaceStatus exact = check_face_exact(f, polytope, fr.face, config.max_pairs);
      if (exact != FaceStatus::budget_exceeded) {
        fr.status = exact;
        fr.certified = true;
      }
    }
  });

  for (const auto& fr : report.faces)
    if (fr.status == FaceStatus::budget_exceeded)
      throw BudgetExceeded("Gröbner budget exceeded on face " + describe_face(polytope, fr.face));

  for (std::size_t k = 0; k < report.faces.size(); ++k) {
    FaceReport& fr = report.faces[k];
    if (fr.status != FaceStatus::nonempty) continue;
    const FaceSystem system = build_face_system(f, polytope, fr.face);
    if (auto point = search_rational_witness(system)) {
      report.witness = Witness{point, 0, {}};
    } else if (auto modular_point = search_modular_witness(system)) {
      report.witness = Witness{std::nullopt, modular_point->first, modular_point->second};
    }
    if (!fr.certified && !(report.witness && report.witness->is_rational())) {
      const FaceStatus exact = check_face_exact(f, polytope, fr.face, config.max_pairs);
      if (exact == FaceStatus::empty) {
        // The modular votes were misled by bad reduction.
        fr.status = FaceStatus::empty;
        fr.certified = true;
        report.witness.reset();
        report.notes.push_back("modular majority overturned over Q on face " + describe_face(polytope, fr.face));
        continue;
      }
      if (exact == FaceStatus::nonempty) fr.certified = true;
    }
    report.witness_face = k;
    report.verdict = Verdict::degenerate;
    report.certified = fr.certified || (report.witness && report.witness->is_rational());
    if (!report.certified) report.notes.push_back("degeneracy supported by a modular witness only");
    return report;
  }

  const bool all_certified =
      std::all_of(report.faces.begin(), report.faces.end(), [](const FaceReport& fr) { return fr.certified; });
  report.verdict = all_certified ? Verdict::nondegenerate : Verdict::likely_nondegenerate;
  report.certified = all_certified;
  return report;
}

}  // namespace exphodge
