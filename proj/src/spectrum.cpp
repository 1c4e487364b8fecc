#include "exphodge/spectrum.hpp"

#include "exphodge/parallel.hpp"

#include <chrono>
#include <set>
#include <sstream>

namespace exphodge {

std::size_t HodgeSpectrum::total() const {
  std::size_t sum = 0;
  for (const auto& [lambda, m] : entries) sum += m;
  return sum;
}

std::size_t HodgeSpectrum::at(const Rational& lambda) const {
  for (const auto& [l, m] : entries)
    if (l == lambda) return m;
  return 0;
}

std::string HodgeSpectrum::str() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < entries.size(); ++k)
    out << (k ? "," : "") << '(' << to_string(entries[k].first) << ',' << entries[k].second << ')';
  out << '}';
  return out.str();
}

std::vector<Rational> jump_candidates(const NewtonPolytope& polytope) {
  polytope.require_full_dimensional();
  const long n = static_cast<long>(polytope.nvars());
  std::set<Rational> out;
  for (const auto& [c, count] : weight_census(polytope, Rational(n)))
    for (long p = 0; p <= n; ++p) {
      const Rational lambda = Rational(p) - c;
      if (lambda >= 0 && lambda <= n) out.insert(lambda);
    }
  return {out.begin(), out.end()};
}

std::vector<Rational> jump_candidates(const LaurentPolynomial& f) { return jump_candidates(newton_polytope(f)); }

namespace {

Integer binomial(long n, long k) {
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

HodgeSpectrum spectrum_euler(const LaurentPolynomial& f) {
  const NewtonPolytope polytope = newton_polytope(f);
  polytope.require_full_dimensional();
  const long n = static_cast<long>(f.nvars());
  const auto census = weight_census(polytope, Rational(n));
  auto count = [&](const Rational& c) -> Integer {
    auto it = census.find(c);
    return it == census.end() ? Integer(0) : Integer(it->second);
  };

  HodgeSpectrum spectrum{static_cast<std::size_t>(n), {}};
  for (const auto& lambda : jump_candidates(polytope)) {
    Integer h = 0;
    for (long p = 0; p <= n; ++p) {
      const Integer term = binomial(n, p) * count(Rational(p) - lambda);
      h += (p % 2 == 0) ? term : Integer(-term);
    }
    if (n % 2 == 1) h = -h;
    if (h < 0) throw IntegrityError("negative graded dimension at λ = " + to_string(lambda));
    if (h > 0) spectrum.entries.emplace_back(lambda, static_cast<std::size_t>(h));
  }
  return spectrum;
}

HodgeSpectrum spectrum_rank(const TwistedDeRham& complex, unsigned threads) {
  const std::size_t n = complex.nvars();
  const auto jumps = jump_candidates(complex.polytope());
  std::vector<std::size_t> image(jumps.size());
  parallel_for(jumps.size(), threads, [&](std::size_t k) { image[k] = complex.filtration_image_dim(jumps[k], n); });

  HodgeSpectrum spectrum{n, {}};
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const std::size_t next = k + 1 < jumps.size() ? image[k + 1] : 0;
    if (next > image[k]) throw IntegrityError("filtration image grew at λ = " + to_string(jumps[k + 1]));
    if (image[k] > next) spectrum.entries.emplace_back(jumps[k], image[k] - next);
  }
  return spectrum;
}

HodgeSpectrum spectrum_rank(const LaurentPolynomial& f, unsigned threads) {
  return spectrum_rank(TwistedDeRham(f), threads);
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "not applicable";
  }
  return "?";
}

namespace {

CheckResult degeneration_check(const TwistedDeRham& complex, const HodgeSpectrum& rank, unsigned threads) {
  const std::size_t n = complex.nvars();
  std::ostringstream detail;
  bool ok = true;

  HodgeSpectrum euler;
  try {
    euler = spectrum_euler(complex.polynomial());
  } catch (const IntegrityError& e) {
    return {CheckStatus::fail, e.what()};
  }
  if (euler != rank) {
    ok = false;
    detail << "routes differ: euler " << euler.str() << ", rank " << rank.str() << "; ";
  }

  const auto jumps = jump_candidates(complex.polytope());
  std::vector<std::vector<std::size_t>> graded(jumps.size());
  parallel_for(jumps.size(), threads, [&](std::size_t k) { graded[k] = complex.graded_cohomology(jumps[k]); });
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    for (std::size_t p = 0; p < n; ++p)
      if (graded[k][p] != 0) {
        ok = false;
        detail << "H^" << p << "(Gr^" << to_string(jumps[k]) << ") = " << graded[k][p] << "; ";
      }
    if (graded[k][n] != euler.at(jumps[k])) {
      ok = false;
      detail << "H^" << n << "(Gr^" << to_string(jumps[k]) << ") = " << graded[k][n] << " vs h = "
             << euler.at(jumps[k]) << "; ";
    }
  }

  const auto betti = complex.betti_numbers();
  for (std::size_t i = 0; i < n; ++i)
    if (betti[i] != 0) {
      ok = false;
      detail << "H^" << i << " = " << betti[i] << " below top degree; ";
    }
  const Integer volume = normalized_volume(complex.polytope());
  if (Integer(rank.total()) != volume || Integer(betti[n]) != volume) {
    ok = false;
    detail << "sum of multiplicities " << rank.total() << ", dim H^n " << betti[n] << ", volume " << volume << "; ";
  }

  if (ok) {
    detail << "euler = rank = " << rank.str() << "; graded pieces concentrated in degree " << n;
    return {CheckStatus::pass, detail.str()};
  }
  std::string text = detail.str();
  text.resize(text.size() - 2);
  return {CheckStatus::fail, text};
}

CheckResult symmetry_check(const TwistedDeRham& complex, const HodgeSpectrum& rank, unsigned threads) {
  const Rational n(static_cast<long>(complex.nvars()));
  bool symmetric = true;
  for (const auto& [lambda, m] : rank.entries) symmetric = symmetric && rank.at(n - lambda) == m;

  if (!contains_origin_interior(complex.polytope())) {
    return {CheckStatus::not_applicable, "origin not interior to Δ(f); rank spectrum " + rank.str() + " is " +
                                             (symmetric ? "symmetric" : "not symmetric")};
  }
  const HodgeSpectrum negated = spectrum_rank(TwistedDeRham(-complex.polynomial()), threads);
  std::ostringstream detail;
  if (negated != rank) {
    detail << "spectrum of -f " << negated.str() << " differs from " << rank.str();
    return {CheckStatus::fail, detail.str()};
  }
  if (!symmetric) return {CheckStatus::fail, "h^λ ≠ h^{n−λ} in " + rank.str()};
  return {CheckStatus::pass, "h^λ = h^{n−λ} for " + rank.str() + "; same spectrum for -f"};
}

}  // namespace

CheckResult check_degeneration(const LaurentPolynomial& f, unsigned threads) {
  const TwistedDeRham complex(f);
  return degeneration_check(complex, spectrum_rank(complex, threads), threads);
}

CheckResult check_symmetry(const LaurentPolynomial& f, unsigned threads) {
  const TwistedDeRham complex(f);
  return symmetry_check(complex, spectrum_rank(complex, threads), threads);
}

SpectrumMode parse_mode(const std::string& text) {
  if (text == "euler") return SpectrumMode::euler;
  if (text == "rank") return SpectrumMode::rank;
  if (text == "both") return SpectrumMode::both;
  throw std::invalid_argument("mode must be euler, rank or both");
}

bool AnalysisReport::has_failed_check() const {
  if (degeneration.status == CheckStatus::fail || symmetry.status == CheckStatus::fail) return true;
  if (curve_comparison && !curve_comparison->ok()) return true;
  if (curve_duality && !curve_duality->pass) return true;
  return false;
}

AnalysisReport analyze(const LaurentPolynomial& f, const AnalysisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport report(f, newton_polytope(f));
  report.polytope.require_full_dimensional();
  report.normalized_volume = normalized_volume(report.polytope);
  report.origin_interior = contains_origin_interior(report.polytope);

  NondegenConfig config = options.nondegen;
  config.threads = options.threads;
  report.nondegeneracy = is_nondegenerate(f, config);
  const bool degenerate = report.nondegeneracy.verdict == Verdict::degenerate;

  const TwistedDeRham complex(f);
  report.betti = complex.betti_numbers();
  const HodgeSpectrum rank = spectrum_rank(complex, options.threads);

  if (degenerate) {
    report.spectrum_supported = false;
    report.warnings.push_back("f is degenerate: spectrum unsupported by the degeneration theorem");
    if (options.mode != SpectrumMode::rank) report.warnings.push_back("Euler route suppressed for degenerate f");
    if (options.mode != SpectrumMode::euler) report.rank = rank;
    report.degeneration = {CheckStatus::not_applicable, "f is degenerate"};
    report.symmetry = {CheckStatus::not_applicable, "f is degenerate"};
  } else {
    if (report.nondegeneracy.verdict == Verdict::likely_nondegenerate)
      report.warnings.push_back("nondegeneracy decided modulo primes only (use --certify for a proof)");
    if (options.mode != SpectrumMode::rank) {
      try {
        report.euler = spectrum_euler(f);
      } catch (const IntegrityError& e) {
        report.warnings.push_back(std::string("Euler route failed: ") + e.what());
      }
    }
    if (options.mode != SpectrumMode::euler) report.rank = rank;
    report.degeneration = degeneration_check(complex, rank, options.threads);
    report.symmetry = symmetry_check(complex, rank, options.threads);
  }

  if (f.nvars() == 1 && options.curve) {
    report.curve_comparison = compare_filtrations(f, options.truncation);
    report.curve_duality = duality_check_curve(f, options.truncation);
  }

  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace exphodge
