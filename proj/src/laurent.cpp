#include "exphodge/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace exphodge {

LaurentPolynomial::LaurentPolynomial(std::vector<std::string> variables, TermMap terms)
    : variables_(std::move(variables)) {
  if (variables_.empty()) throw std::invalid_argument("a Laurent polynomial needs at least one variable");
  for (auto& [alpha, c] : terms) {
    if (alpha.size() != variables_.size())
      throw std::invalid_argument("exponent arity does not match the variable count");
    if (c != 0) terms_.emplace(alpha, std::move(c));
  }
}

std::vector<std::string> LaurentPolynomial::default_variables(std::size_t n) {
  static const char* const kShort[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(n <= 4 ? std::string(kShort[i]) : "x" + std::to_string(i + 1));
  return names;
}

Rational LaurentPolynomial::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<Exponent> LaurentPolynomial::support() const {
  std::vector<Exponent> out;
  out.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) out.push_back(alpha);
  return out;
}

Exponent LaurentPolynomial::min_exponents() const {
  if (terms_.empty()) return {};
  Exponent lo = terms_.begin()->first;
  for (const auto& [alpha, c] : terms_)
    for (std::size_t i = 0; i < alpha.size(); ++i) lo[i] = std::min(lo[i], alpha[i]);
  return lo;
}

Exponent LaurentPolynomial::max_exponents() const {
  if (terms_.empty()) return {};
  Exponent hi = terms_.begin()->first;
  for (const auto& [alpha, c] : terms_)
    for (std::size_t i = 0; i < alpha.size(); ++i) hi[i] = std::max(hi[i], alpha[i]);
  return hi;
}

namespace {

Rational power(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("negative power of zero");
    return power(1 / base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  auto e = static_cast<std::uint64_t>(exponent);
  while (e) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

}  // namespace

Rational LaurentPolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw std::invalid_argument("evaluation point has the wrong arity");
  Rational sum = 0;
  for (const auto& [alpha, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < alpha.size(); ++i) term *= power(point[i], alpha[i]);
    sum += term;
  }
  return sum;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  TermMap negated;
  for (const auto& [alpha, c] : terms_) negated.emplace(alpha, -c);
  return LaurentPolynomial(variables_, std::move(negated));
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& other) const {
  if (other.nvars() != nvars()) throw std::invalid_argument("adding polynomials in different variable counts");
  TermMap sum = terms_;
  for (const auto& [alpha, c] : other.terms_) sum[alpha] += c;
  return LaurentPolynomial(variables_, std::move(sum));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct RawFactor {
  std::string name;
  std::int64_t exponent;
  std::size_t position;
};

struct RawTerm {
  Rational coefficient;
  std::vector<RawFactor> factors;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip_space();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = take() == '-' ? -1 : 1;
    }
    terms.push_back(term(sign));
    for (;;) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      take();
      terms.push_back(term(c == '-' ? -1 : 1));
    }
    return terms;
  }

 private:
  RawTerm term(int sign) {
    skip_space();
    RawTerm t{Rational(sign), {}};
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coefficient *= rational();
      skip_space();
      if (peek() != '*') return t;
      take();
      t.factors.push_back(factor());
    } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
      t.factors.push_back(factor());
    } else {
      fail("expected a term");
    }
    for (;;) {
      skip_space();
      if (peek() != '*') break;
      take();
      t.factors.push_back(factor());
    }
    return t;
  }

  RawFactor factor() {
    skip_space();
    const std::size_t start = pos_;
    if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected a variable");
    std::string name;
    while (std::isalpha(static_cast<unsigned char>(peek()))) name += take();
    while (std::isdigit(static_cast<unsigned char>(peek()))) name += take();
    std::int64_t exponent = 1;
    skip_space();
    if (peek() == '^') {
      take();
      skip_space();
      bool negative = false;
      if (peek() == '+' || peek() == '-') negative = take() == '-';
      skip_space();
      const Integer magnitude = digits("expected an integer exponent");
      exponent = to_int64(negative ? Integer(-magnitude) : magnitude);
    }
    return {name, exponent, start};
  }

  Rational rational() {
    const Integer num = digits("expected a number");
    skip_space();
    if (peek() != '/') return Rational(num);
    take();
    skip_space();
    const std::size_t at = pos_;
    const Integer den = digits("expected a denominator");
    if (den == 0) fail_at("denominator must be positive", at);
    return Rational(num, den);
  }

  Integer digits(const char* what) {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(what);
    std::string run;
    while (std::isdigit(static_cast<unsigned char>(peek()))) run += take();
    return Integer(run);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    std::ostringstream msg;
    msg << "syntax error at position " << at << ": " << what;
    if (at < text_.size()) msg << " (found '" << text_[at] << "')";
    else msg << " (found end of input)";
    throw ParseError(msg.str(), at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<std::size_t> short_name_index(const std::string& name) {
  static const std::string kShort = "xyzw";
  if (name.size() == 1 && kShort.find(name[0]) != std::string::npos) return kShort.find(name[0]);
  return std::nullopt;
}

std::optional<std::size_t> indexed_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  if (name.size() > 6) return std::nullopt;
  return std::stoul(name.substr(1));
}

std::vector<std::string> infer_variables(const std::vector<RawTerm>& terms) {
  std::vector<std::string> seen;
  for (const auto& t : terms)
    for (const auto& f : t.factors)
      if (std::find(seen.begin(), seen.end(), f.name) == seen.end()) seen.push_back(f.name);
  if (seen.empty()) return LaurentPolynomial::default_variables(1);

  if (std::all_of(seen.begin(), seen.end(), [](const auto& s) { return short_name_index(s).has_value(); })) {
    std::size_t top = 0;
    for (const auto& s : seen) top = std::max(top, *short_name_index(s));
    return LaurentPolynomial::default_variables(top + 1);
  }
  if (std::all_of(seen.begin(), seen.end(), [](const auto& s) { return indexed_name(s).has_value(); })) {
    std::size_t top = 0;
    for (const auto& s : seen) top = std::max(top, *indexed_name(s));
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= top; ++i) names.push_back("x" + std::to_string(i));
    return names;
  }
  return seen;
}

}  // namespace

LaurentPolynomial parse_laurent(std::string_view text, const std::vector<std::string>& variables) {
  const std::vector<RawTerm> raw = Parser(text).parse();
  std::vector<std::string> names = variables.empty() ? infer_variables(raw) : variables;

  LaurentPolynomial::TermMap terms;
  for (const auto& t : raw) {
    Exponent alpha(names.size(), 0);
    for (const auto& f : t.factors) {
      auto it = std::find(names.begin(), names.end(), f.name);
      if (it == names.end()) throw ParseError("unknown variable '" + f.name + "'", f.position);
      alpha[static_cast<std::size_t>(it - names.begin())] += f.exponent;
    }
    terms[alpha] += t.coefficient;
  }
  LaurentPolynomial f(std::move(names), std::move(terms));
  if (f.is_zero()) throw ParseError("f must be nonzero", 0);
  return f;
}

std::string format_laurent(const LaurentPolynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [alpha, c] : f.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    first = false;

    std::vector<std::string> factors;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      factors.push_back(alpha[i] == 1 ? f.variables()[i] : f.variables()[i] + "^" + std::to_string(alpha[i]));
    }
    if (factors.empty()) {
      out << to_string(magnitude);
      continue;
    }
    if (magnitude != 1) out << to_string(magnitude) << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) out << (k ? "*" : "") << factors[k];
  }
  return out.str();
}

LaurentPolynomial log_derivative(const LaurentPolynomial& f, std::size_t index) {
  if (index >= f.nvars()) throw std::out_of_range("variable index out of range");
  LaurentPolynomial::TermMap out;
  for (const auto& [alpha, c] : f.terms())
    if (alpha[index] != 0) out.emplace(alpha, c * alpha[index]);
  return LaurentPolynomial(f.variables(), std::move(out));
}

LaurentPolynomial restrict_terms(const LaurentPolynomial& f, const std::function<bool(const Exponent&)>& keep) {
  LaurentPolynomial::TermMap out;
  for (const auto& [alpha, c] : f.terms())
    if (keep(alpha)) out.emplace(alpha, c);
  return LaurentPolynomial(f.variables(), std::move(out));
}

namespace {

std::uint64_t integer_mod(const Integer& z, std::uint64_t p) {
  Integer r = z % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

}  // namespace

std::uint64_t reduce_rational_mod_p(const Rational& a, std::uint64_t prime) {
  if (prime < 2 || prime >= (std::uint64_t{1} << 32)) throw std::invalid_argument("prime out of supported range");
  const std::uint64_t den = integer_mod(boost::multiprecision::denominator(a), prime);
  if (den == 0) throw BadPrimeError("bad prime " + std::to_string(prime) + ": a coefficient denominator vanishes");
  const std::uint64_t num = integer_mod(boost::multiprecision::numerator(a), prime);
  return num * pow_mod(den, prime - 2, prime) % prime;
}

ModularLaurent reduce_mod_p(const LaurentPolynomial& f, std::uint64_t prime) {
  ModularLaurent out{f.nvars(), prime, {}};
  for (const auto& [alpha, c] : f.terms()) {
    const std::uint64_t r = reduce_rational_mod_p(c, prime);
    if (r != 0) out.terms.emplace(alpha, r);
  }
  return out;
}

}  // namespace exphodge
