#include "exphodge/cli.hpp"

#include "exphodge/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace exphodge {

namespace {

using Json = nlohmann::ordered_json;

struct CliConfig {
  std::string command;
  std::string poly;
  std::vector<std::string> vars;
  std::string mode = "both";
  bool certify = false;
  std::uint64_t seed = 20140101;
  int primes = 3;
  std::int64_t truncation = 0;  // 0: automatic
  bool json = false;
  unsigned threads = 1;
  bool require_nondegenerate = false;
  std::string plot;
  std::string dump;
  bool timing = false;
  std::chrono::steady_clock::time_point start;
};

std::optional<std::int64_t> truncation_of(const CliConfig& c) {
  if (c.truncation > 0) return c.truncation;
  return std::nullopt;
}

// ---- JSON ----------------------------------------------------------------

Json spectrum_json(const HodgeSpectrum& s) {
  Json a = Json::array();
  for (const auto& [lambda, m] : s.entries) a.push_back({{"lambda", to_string(lambda)}, {"mult", m}});
  return a;
}

Json input_json(const LaurentPolynomial& f) {
  return {{"poly", format_laurent(f)}, {"vars", f.variables()}, {"n", f.nvars()}};
}

Json polytope_json(const NewtonPolytope& p) {
  Json facets = Json::array();
  for (const auto& facet : p.facets()) facets.push_back({{"normal", facet.normal}, {"level", facet.level}});
  Json j;
  j["vertices"] = p.vertices();
  j["facets"] = facets;
  j["nvol"] = p.full_dimensional() ? to_int64(normalized_volume(p)) : 0;
  j["origin_interior"] = contains_origin_interior(p);
  j["dim"] = p.dim();
  return j;
}

Json nondegen_json(const NondegeneracyReport& r, const NewtonPolytope& p) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["certified"] = r.certified;
  if (r.witness && r.witness_face) {
    Json w;
    w["face"] = describe_face(p, r.faces[*r.witness_face].face);
    if (r.witness->is_rational()) {
      Json point = Json::array();
      for (const auto& x : *r.witness->rational) point.push_back(to_string(x));
      w["point"] = point;
    } else {
      w["prime"] = r.witness->prime;
      w["point"] = r.witness->modular;
    }
    j["witness"] = w;
  }
  Json faces = Json::array();
  for (const auto& fr : r.faces)
    faces.push_back({{"face", describe_face(p, fr.face)},
                     {"dim", fr.face.dim},
                     {"status", to_string(fr.status)},
                     {"certified", fr.certified},
                     {"votes", {fr.unit_votes, fr.nonunit_votes}}});
  j["faces"] = faces;
  j["primes"] = r.primes;
  j["notes"] = r.notes;
  return j;
}

Json check_json(const CheckResult& c) {
  if (c.status == CheckStatus::not_applicable) return nullptr;
  return c.passed();
}

Json curve_json(const CurveFiltrationReport& c, const CurveDualityReport& d) {
  Json j;
  Json jumps = Json::array();
  for (const auto& l : c.jumps) jumps.push_back(to_string(l));
  j["jumps"] = jumps;
  Json newton = Json::array(), deligne = Json::array(), toric = Json::array(), compact = Json::array(),
       injective = Json::array();
  for (const auto& row : c.rows) {
    newton.push_back(row.newton);
    deligne.push_back(row.deligne);
    toric.push_back(row.toric);
    compact.push_back(row.compact);
    injective.push_back(row.deligne_injective);
  }
  j["newton"] = newton;
  j["deligne"] = deligne;
  j["toric"] = toric;
  j["compact"] = compact;
  j["deligne_injective"] = injective;
  j["ambient_level"] = c.ambient_level;
  j["truncation"] = c.truncation;
  Json duality = Json::array();
  for (const auto& [lambda, h, hc] : d.rows)
    duality.push_back({{"lambda", to_string(lambda)}, {"h", h}, {"h_c_dual", hc}});
  j["duality"] = duality;
  j["dims_agree"] = c.dims_agree;
  j["subspaces_agree"] = c.subspaces_agree;
  return j;
}

// ---- text ----------------------------------------------------------------

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << v[k];
  return out.str();
}

void text_polytope(std::ostream& out, const NewtonPolytope& p) {
  out << "dim Δ: " << p.dim() << "\nvertices:";
  for (const auto& v : p.vertices()) out << ' ' << format_point(v);
  out << "\nfacets:";
  for (const auto& f : p.facets()) out << " <" << format_point(f.normal) << ",α> >= " << -f.level << ';';
  out << "\nnormalized volume: " << normalized_volume(p) << "\norigin interior: "
      << (contains_origin_interior(p) ? "yes" : "no") << '\n';
}

std::string verdict_line(const NondegeneracyReport& r, const NewtonPolytope& p) {
  std::string line = to_string(r.verdict);
  if (r.verdict == Verdict::degenerate && r.witness_face) {
    line += ", face " + describe_face(p, r.faces[*r.witness_face].face);
    if (r.witness) line += ", witness " + r.witness->str();
  }
  if (r.certified && r.verdict != Verdict::degenerate) line += " (certified)";
  return line;
}

void text_nondegen(std::ostream& out, const NondegeneracyReport& r, const NewtonPolytope& p) {
  out << verdict_line(r, p) << '\n';
  for (const auto& fr : r.faces) {
    if (fr.face.dim == 0) continue;
    out << "  face " << describe_face(p, fr.face) << ": " << to_string(fr.status) << " (votes empty "
        << fr.unit_votes << ", nonempty " << fr.nonunit_votes << (fr.certified ? ", certified" : "") << ")\n";
  }
  for (const auto& note : r.notes) out << "  note: " << note << '\n';
}

void text_curve(std::ostream& out, const CurveFiltrationReport& c, const CurveDualityReport& d) {
  out << "curve: ambient M = " << c.ambient_level << ", truncation B = " << c.truncation << ", dim H^1 = " << c.h1
      << '\n';
  out << "  lambda  newton  deligne  toric  compact  injective  subspaces\n";
  for (const auto& row : c.rows) {
    out << "  " << to_string(row.lambda) << "  " << row.newton << "  " << row.deligne << "  " << row.toric << "  "
        << row.compact << "  " << (row.deligne_injective ? "yes" : "no") << "  "
        << (row.subspaces_agree ? "agree" : "differ") << '\n';
  }
  out << "  duality h^λ(f) = h_c^{1-λ}(-f):";
  for (const auto& [lambda, h, hc] : d.rows) out << ' ' << to_string(lambda) << ':' << h << '=' << hc;
  out << '\n';
  out << "curve comparison: " << (c.ok() ? "pass" : "fail") << "\ncurve duality: " << (d.pass ? "pass" : "fail")
      << '\n';
}

// ---- plot ----------------------------------------------------------------

void write_plot(const std::string& path, const NewtonPolytope& p, const std::optional<HodgeSpectrum>& spectrum) {
  std::ofstream svg(path);
  if (!svg) throw std::runtime_error("cannot write " + path);
  const double scale = 40, ox = 160, oy = 160;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"320\">\n";
  auto px = [&](const Exponent& a) {
    std::ostringstream s;
    s << ox + scale * a[0] << ',' << oy - scale * (a.size() > 1 ? a[1] : 0);
    return s.str();
  };
  const auto& v = p.vertices();
  if (p.nvars() == 2) {
    // Order the vertices by angle around their centroid.
    double cx = 0, cy = 0;
    for (const auto& a : v) cx += a[0], cy += a[1];
    cx /= v.size(), cy /= v.size();
    std::vector<Exponent> ring = v;
    std::sort(ring.begin(), ring.end(), [&](const Exponent& a, const Exponent& b) {
      return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
    });
    svg << "<polygon fill=\"#dde8f4\" stroke=\"#234\" points=\"";
    for (const auto& a : ring) svg << px(a) << ' ';
    svg << "\"/>\n";
  } else {
    svg << "<polyline stroke=\"#234\" stroke-width=\"3\" points=\"" << px(v.front()) << ' ' << px(v.back()) << "\"/>\n";
  }
  for (const auto& a : lattice_points_in_dilate(p, 1))
    svg << "<circle r=\"3\" fill=\"#234\" cx=\"" << ox + scale * a[0] << "\" cy=\""
        << oy - scale * (a.size() > 1 ? a[1] : 0) << "\"/>\n";
  svg << "<circle r=\"4\" fill=\"#c33\" cx=\"" << ox << "\" cy=\"" << oy << "\"/>\n";
  if (spectrum && !spectrum->entries.empty()) {
    const double x0 = 360, base = 280, width = 240;
    const double n = static_cast<double>(p.nvars());
    svg << "<line stroke=\"#234\" x1=\"" << x0 << "\" y1=\"" << base << "\" x2=\"" << x0 + width << "\" y2=\"" << base
        << "\"/>\n";
    for (const auto& [lambda, m] : spectrum->entries) {
      const double x = x0 + width * lambda.convert_to<double>() / n;
      svg << "<rect fill=\"#4a7\" x=\"" << x - 6 << "\" y=\"" << base - 30.0 * m << "\" width=\"12\" height=\""
          << 30.0 * m << "\"/>\n<text font-size=\"11\" x=\"" << x - 8 << "\" y=\"" << base + 14 << "\">"
          << to_string(lambda) << "</text>\n";
    }
  }
  svg << "</svg>\n";
}

void dump_matrices(const std::string& prefix, const TwistedDeRham& complex) {
  for (std::size_t p = 0; p < complex.nvars(); ++p) {
    std::ofstream file(prefix + ".M" + std::to_string(p) + ".txt");
    if (!file) throw std::runtime_error("cannot write " + prefix);
    complex.base_level().differential(p).write_triplets(file);
  }
}

// ---- commands ------------------------------------------------------------

int finish(std::ostream& out, const CliConfig& c, Json& j) {
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - c.start).count();
  if (c.timing) j["timing_ms"] = ms;
  if (c.json) out << j.dump(2) << '\n';
  else if (c.timing) out << "time: " << ms << " ms\n";
  return exit_code::ok;
}

int cmd_volume(const CliConfig& c, const LaurentPolynomial& f, std::ostream& out) {
  const NewtonPolytope p = newton_polytope(f);
  p.require_full_dimensional();
  if (!c.plot.empty()) write_plot(c.plot, p, std::nullopt);
  Json j{{"input", input_json(f)}, {"polytope", polytope_json(p)}};
  if (!c.json) text_polytope(out, p);
  return finish(out, c, j);
}

int cmd_betti(const CliConfig& c, const LaurentPolynomial& f, std::ostream& out) {
  const TwistedDeRham complex(f);
  if (!c.dump.empty()) dump_matrices(c.dump, complex);
  const auto betti = complex.betti_numbers();
  Json j{{"input", input_json(f)}, {"betti", betti}};
  if (!c.json) out << "betti: " << join(betti) << '\n';
  return finish(out, c, j);
}

int cmd_nondegen(const CliConfig& c, const LaurentPolynomial& f, std::ostream& out) {
  const NewtonPolytope p = newton_polytope(f);
  p.require_full_dimensional();
  const NondegeneracyReport r =
      is_nondegenerate(f, {.primes = c.primes, .seed = c.seed, .certify = c.certify, .threads = c.threads});
  Json j{{"input", input_json(f)}, {"nondegeneracy", nondegen_json(r, p)}};
  if (!c.json) text_nondegen(out, r, p);
  finish(out, c, j);
  return c.require_nondegenerate && r.verdict == Verdict::degenerate ? exit_code::degenerate : exit_code::ok;
}

int cmd_curve(const CliConfig& c, const LaurentPolynomial& f, std::ostream& out) {
  if (f.nvars() != 1) throw std::invalid_argument("curve needs a polynomial in one variable");
  newton_polytope(f).require_full_dimensional();
  const CurveFiltrationReport cmp = compare_filtrations(f, truncation_of(c));
  const CurveDualityReport dual = duality_check_curve(f, truncation_of(c));
  Json j{{"input", input_json(f)},
         {"curve", curve_json(cmp, dual)},
         {"checks", {{"curve_comparison", cmp.ok()}, {"curve_duality", dual.pass}}}};
  if (!c.json) text_curve(out, cmp, dual);
  finish(out, c, j);
  return cmp.ok() && dual.pass ? exit_code::ok : exit_code::integrity;
}

int cmd_analyze(const CliConfig& c, const LaurentPolynomial& f, std::ostream& out, bool full) {
  AnalysisOptions options;
  options.mode = parse_mode(c.mode);
  options.nondegen = {.primes = c.primes, .seed = c.seed, .certify = c.certify, .threads = c.threads};
  options.threads = c.threads;
  options.curve = full;
  options.truncation = truncation_of(c);
  const AnalysisReport r = analyze(f, options);
  if (!c.dump.empty()) dump_matrices(c.dump, TwistedDeRham(f));
  if (!c.plot.empty())
    write_plot(c.plot, r.polytope, r.rank ? r.rank : r.euler);

  Json spectrum = Json::object();
  if (r.euler) spectrum["euler"] = spectrum_json(*r.euler);
  if (r.rank) spectrum["rank"] = spectrum_json(*r.rank);
  spectrum["supported"] = r.spectrum_supported;

  Json j;
  j["input"] = input_json(f);
  if (full) {
    j["polytope"] = polytope_json(r.polytope);
    j["nondegeneracy"] = nondegen_json(r.nondegeneracy, r.polytope);
    j["betti"] = r.betti;
  }
  j["spectrum"] = spectrum;
  if (full) {
    Json checks{{"degeneration", check_json(r.degeneration)}, {"symmetry", check_json(r.symmetry)}};
    if (r.curve_comparison) checks["curve_comparison"] = r.curve_comparison->ok();
    if (r.curve_duality) checks["curve_duality"] = r.curve_duality->pass;
    checks["details"] = {{"degeneration", r.degeneration.detail}, {"symmetry", r.symmetry.detail}};
    j["checks"] = checks;
    if (r.curve_comparison && r.curve_duality) j["curve"] = curve_json(*r.curve_comparison, *r.curve_duality);
  }
  j["warnings"] = r.warnings;

  if (!c.json) {
    out << "f = " << format_laurent(f) << "  (n = " << f.nvars() << ")\n";
    if (full) {
      text_polytope(out, r.polytope);
      out << "nondegeneracy: ";
      text_nondegen(out, r.nondegeneracy, r.polytope);
      out << "betti: " << join(r.betti) << '\n';
    }
    const std::string tag = r.spectrum_supported ? "" : ", unsupported";
    if (r.euler) out << "spectrum (euler" << tag << "): " << r.euler->str() << '\n';
    if (r.rank) out << "spectrum (rank" << tag << "): " << r.rank->str() << '\n';
    if (full) {
      out << "check degeneration: " << to_string(r.degeneration.status) << " (" << r.degeneration.detail << ")\n";
      out << "check symmetry: " << to_string(r.symmetry.status) << " (" << r.symmetry.detail << ")\n";
      if (r.curve_comparison && r.curve_duality) text_curve(out, *r.curve_comparison, *r.curve_duality);
    }
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  }
  finish(out, c, j);

  if (c.require_nondegenerate && r.nondegeneracy.verdict == Verdict::degenerate) return exit_code::degenerate;
  if (full && r.has_failed_check()) return exit_code::integrity;
  return exit_code::ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Irregular Hodge spectra of twisted de Rham cohomology of Laurent polynomials", "exphodge"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"analyze", "full report: polytope, nondegeneracy, Betti numbers, spectra, checks"},
      {"spectrum", "irregular Hodge spectrum of H^n"},
      {"nondegen", "nondegeneracy verdict with face details"},
      {"volume", "Newton polytope summary and normalized volume"},
      {"curve", "one-variable filtration comparison and duality"},
      {"betti", "dimensions of H^i, i = 0..n"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("poly", c.poly, "Laurent polynomial, e.g. \"x + y + x^-1*y^-1\"")->required();
    sub->add_option("--vars", c.vars, "variable names in order")->delimiter(',');
    sub->add_option("--mode", c.mode, "spectrum route")->check(CLI::IsMember({"euler", "rank", "both"}));
    sub->add_flag("--certify", c.certify, "decide nondegeneracy exactly over Q");
    sub->add_option("--seed", c.seed, "seed for random primes")->envname("EXPHODGE_SEED");
    sub->add_option("--primes", c.primes, "number of random primes")->check(CLI::PositiveNumber);
    sub->add_option("--truncation", c.truncation, "Čech truncation bound B (curve)")->check(CLI::PositiveNumber);
    sub->add_flag("--json", c.json, "machine-readable output");
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--require-nondegenerate", c.require_nondegenerate, "exit 3 on degenerate input");
    sub->add_option("--plot", c.plot, "write an SVG of the polytope and spectrum (n <= 2)");
    sub->add_option("--dump-matrices", c.dump, "write level-0 differentials as PREFIX.M<p>.txt");
    sub->add_flag("--timing", c.timing, "report elapsed time");
    sub->callback([&c, name = name] { c.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    c.start = std::chrono::steady_clock::now();
    const LaurentPolynomial f = parse_laurent(c.poly, c.vars);
    if (!c.plot.empty() && f.nvars() > 2) {
      err << "warning: --plot supports n <= 2 only; skipped\n";
      c.plot.clear();
    }
    if (c.command == "volume") return cmd_volume(c, f, out);
    if (c.command == "betti") return cmd_betti(c, f, out);
    if (c.command == "nondegen") return cmd_nondegen(c, f, out);
    if (c.command == "curve") return cmd_curve(c, f, out);
    if (c.command == "spectrum") return cmd_analyze(c, f, out, false);
    return cmd_analyze(c, f, out, true);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::parse;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::dimension;
  } catch (const IntegrityError& e) {
    err << "error: integrity failure: " << e.what() << '\n';
    return exit_code::integrity;
  } catch (const BadPrimeError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::integrity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

}  // namespace exphodge
