#include "presym/scalar/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "presym/error.hpp"

namespace presym {

namespace {

thread_local int t_degree_cap = kDefaultDegreeCap;

void check_product_degree(int da, int db) {
  if (da + db > t_degree_cap) {
    throw Error(ErrorCode::DegreeCapExceeded,
                "product degree " + std::to_string(da + db) + " exceeds cap " + std::to_string(t_degree_cap));
  }
}

}  // namespace

int degree_cap() noexcept { return t_degree_cap; }

DegreeCapScope::DegreeCapScope(int cap) : saved_(t_degree_cap) {
  t_degree_cap = std::clamp(cap, 0, kMaxDegreeCap);
}

DegreeCapScope::~DegreeCapScope() { t_degree_cap = saved_; }

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(int var, unsigned exponent) {
  if (var < 0 || var >= kMaxVariables) throw std::out_of_range("monomial variable index");
  Monomial m;
  m.bits_ = static_cast<std::uint64_t>(exponent & 0xffu) << shift(var);
  return m;
}

int Monomial::highest_variable() const {
  for (int v = kMaxVariables - 1; v >= 0; --v) {
    if (exponent(v) != 0) return v;
  }
  return -1;
}

bool Monomial::divides(Monomial other) const {
  for (int v = 0; v < kMaxVariables; ++v) {
    if (exponent(v) > other.exponent(v)) return false;
  }
  return true;
}

Monomial Monomial::with_exponent(int var, unsigned e) const {
  Monomial m = *this;
  m.bits_ &= ~(0xffull << shift(var));
  m.bits_ |= static_cast<std::uint64_t>(e & 0xffu) << shift(var);
  return m;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.emplace_back(Monomial(), Rational(c));
}

Polynomial::Polynomial(const Rational& c) {
  if (!presym::is_zero(c)) terms_.emplace_back(Monomial(), c);
}

Polynomial Polynomial::variable(int var) { return monomial(Monomial::variable(var)); }

Polynomial Polynomial::monomial(Monomial m, Rational c) {
  Polynomial p;
  if (!presym::is_zero(c)) p.terms_.emplace_back(m, std::move(c));
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    Rational acc = std::move(terms_[i].second);
    while (j < terms_.size() && terms_[j].first == terms_[i].first) {
      acc += terms_[j].second;
      ++j;
    }
    if (!presym::is_zero(acc)) {
      terms_[out].first = terms_[i].first;
      terms_[out].second = std::move(acc);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return 0;
}

unsigned Polynomial::degree_in(int var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.exponent(var));
  return d;
}

int Polynomial::highest_variable() const {
  int h = -1;
  for (const auto& t : terms_) h = std::max(h, t.first.highest_variable());
  return h;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <bool Subtract>
std::vector<Polynomial::Term> merge_terms(const std::vector<Polynomial::Term>& a,
                                          const std::vector<Polynomial::Term>& b) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      if constexpr (Subtract) {
        out.emplace_back(b[j].first, -b[j].second);
      } else {
        out.push_back(b[j]);
      }
      ++j;
    } else {
      Rational c = Subtract ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (!presym::is_zero(c)) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (terms_.empty()) return *this = rhs;
  terms_ = merge_terms<false>(terms_, rhs.terms_);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.terms_.empty()) return *this;
  terms_ = merge_terms<true>(terms_, rhs.terms_);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (presym::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b * a.terms_[0].second;
  if (b.is_constant()) return a * b.terms_[0].second;
  check_product_degree(a.total_degree(), b.total_degree());
  if (a.size() == 1 || b.size() == 1) {
    const Polynomial& mono = a.size() == 1 ? a : b;
    const Polynomial& other = a.size() == 1 ? b : a;
    Polynomial r;
    r.terms_.reserve(other.size());
    const auto& [m, c] = mono.terms_[0];
    // Monomial orders are multiplicative, so the result stays sorted.
    for (const auto& [mo, co] : other.terms_) r.terms_.emplace_back(mo * m, co * c);
    return r;
  }
  std::vector<Polynomial::Term> prods;
  prods.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) prods.emplace_back(ma * mb, ca * cb);
  }
  return Polynomial::from_terms(std::move(prods));
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.exponent(var);
    if (e == 0) continue;
    r.terms_.emplace_back(m.with_exponent(var, e - 1), c * e);
  }
  // Lowering one exponent can reorder terms of equal degree.
  r.normalize();
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r(1);
  for (unsigned i = 0; i < e; ++i) r *= *this;
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return {};
  Rational inv = 1 / leading_coefficient();
  Polynomial r = *this;
  r *= inv;
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < Monomial::kMaxVariables; ++v) {
      unsigned e = m.exponent(v);
      if (e == 0) continue;
      if (static_cast<std::size_t>(v) >= point.size()) throw Error(ErrorCode::DimensionMismatch, "point too short");
      for (unsigned k = 0; k < e; ++k) t *= point[static_cast<std::size_t>(v)];
    }
    acc += t;
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string vars;
    for (int v = 0; v < Monomial::kMaxVariables; ++v) {
      unsigned e = m.exponent(v);
      if (e == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += "x" + std::to_string(v + 1);
      if (e > 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += vars;
    } else {
      out += mag.get_str() + "*" + vars;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Polynomial parse_all() {
    Polynomial p = parse_sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial parse_sum() {
    Polynomial acc;
    bool negate = false;
    if (peek('+') || peek('-')) {
      negate = s_[pos_] == '-';
      ++pos_;
    }
    Polynomial t = parse_term();
    acc = negate ? -t : t;
    while (peek('+') || peek('-')) {
      bool minus = s_[pos_] == '-';
      ++pos_;
      Polynomial next = parse_term();
      if (minus) {
        acc -= next;
      } else {
        acc += next;
      }
    }
    return acc;
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (peek('*')) {
      ++pos_;
      acc *= parse_factor();
    }
    return acc;
  }

  Polynomial parse_factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '(') {
      ++pos_;
      Polynomial inner = parse_sum();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (s_[pos_] == 'x') {
      ++pos_;
      int idx = std::stoi(digits());
      if (idx < 1 || idx > Monomial::kMaxVariables) fail("variable index out of range");
      unsigned e = 1;
      if (peek('^')) {
        ++pos_;
        e = static_cast<unsigned>(std::stoul(digits()));
        if (e > kMaxDegreeCap) fail("exponent too large");
      }
      return Polynomial::monomial(Monomial::variable(idx - 1, e));
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::string num = digits();
      Rational q(num);
      // A '/' directly after a number is a rational coefficient, not a fraction bar.
      std::size_t save = pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size()) {
        std::size_t after = pos_ + 1;
        while (after < s_.size() && std::isspace(static_cast<unsigned char>(s_[after]))) ++after;
        if (after < s_.size() && std::isdigit(static_cast<unsigned char>(s_[after]))) {
          pos_ = after;
          std::string den = digits();
          q = Rational(num + "/" + den);
          q.canonicalize();
          if (q.get_den() == 0) fail("zero denominator");
        } else {
          pos_ = save;
        }
      } else {
        pos_ = save;
      }
      return Polynomial(q);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) {
  if (text.find('/') != std::string_view::npos) {
    // Only numeric '/' is allowed inside a polynomial; the rational literal
    // path validates it. Zero denominators are rejected before GMP sees them.
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
      if (text[i] != '/') continue;
      std::size_t j = i + 1;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      std::size_t k = j;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      if (k > j && text.substr(j, k - j).find_first_not_of('0') == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "zero denominator in \"" + std::string(text) + "\"");
      }
    }
  }
  return PolyParser(text).parse_all();
}

// ---------------------------------------------------------------------------
// Division and gcd

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (b.is_constant()) return a * Rational(1 / b.leading_coefficient());
  DegreeCapScope unlimited(kMaxDegreeCap);
  Polynomial r = a;
  std::vector<Polynomial::Term> q;
  const auto& [lm, lc] = b.leading_term();
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading_term();
    if (!lm.divides(rm)) throw std::logic_error("exact_quotient: divisor does not divide dividend");
    Polynomial t = Polynomial::monomial(rm / lm, rc / lc);
    q.push_back(t.terms()[0]);
    r -= t * b;
  }
  return Polynomial::from_terms(std::move(q));
}

namespace {

/// Coefficients of p viewed as a polynomial in `var`, indexed by exponent.
std::vector<Polynomial> coefficients_in(const Polynomial& p, int var) {
  std::vector<std::vector<Polynomial::Term>> buckets(p.degree_in(var) + 1);
  for (const auto& [m, c] : p.terms()) buckets[m.exponent(var)].emplace_back(m.with_exponent(var, 0), c);
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(std::move(b)));
  return out;
}

Polynomial leading_coefficient_in(const Polynomial& p, int var) {
  unsigned d = p.degree_in(var);
  std::vector<Polynomial::Term> t;
  for (const auto& [m, c] : p.terms()) {
    if (m.exponent(var) == d) t.emplace_back(m.with_exponent(var, 0), c);
  }
  return Polynomial::from_terms(std::move(t));
}

/// Scale to integer coefficients with unit content and positive leading term.
Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(p.leading_coefficient()) < 0) scale = -scale;
  return p * scale;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

Polynomial content_in(const Polynomial& p, int var) {
  Polynomial g;
  for (const auto& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_impl(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, int var) {
  unsigned db = b.degree_in(var);
  Polynomial lcb = leading_coefficient_in(b, var);
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    unsigned dr = r.degree_in(var);
    Polynomial lcr = leading_coefficient_in(r, var);
    Polynomial shift = Polynomial::monomial(Monomial::variable(var, dr - db));
    r = lcb * r - lcr * shift * b;
  }
  return r;
}

Polynomial monomial_gcd(const Polynomial& mono, const Polynomial& p) {
  Monomial g = mono.leading_term().first;
  for (const auto& [m, c] : p.terms()) {
    Monomial next;
    for (int v = 0; v < Monomial::kMaxVariables; ++v) {
      next = next.with_exponent(v, std::min(g.exponent(v), m.exponent(v)));
    }
    g = next;
    if (g.is_one()) break;
  }
  return Polynomial::monomial(g);
}

unsigned variables_of(const Polynomial& p) {
  unsigned mask = 0;
  for (const auto& [m, c] : p.terms()) {
    for (int v = 0; v < Monomial::kMaxVariables; ++v) {
      if (m.exponent(v) != 0) mask |= 1u << v;
    }
  }
  return mask;
}

/// Coefficients of p as a polynomial in the variables outside `keep`.
std::vector<Polynomial> coefficients_outside(const Polynomial& p, unsigned keep) {
  std::map<std::uint64_t, std::vector<Polynomial::Term>> buckets;
  for (const auto& [m, c] : p.terms()) {
    Monomial inner, outer;
    for (int v = 0; v < Monomial::kMaxVariables; ++v) {
      if (keep & (1u << v)) {
        inner = inner.with_exponent(v, m.exponent(v));
      } else {
        outer = outer.with_exponent(v, m.exponent(v));
      }
    }
    buckets[outer.bits()].emplace_back(inner, c);
  }
  std::vector<Polynomial> out;
  for (auto& [k, terms] : buckets) out.push_back(Polynomial::from_terms(std::move(terms)));
  return out;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.size() == 1) return monomial_gcd(a, b);
  if (b.size() == 1) return monomial_gcd(b, a);
  if (a == b) return a.monic();

  // The gcd only involves shared variables; reduce both sides to coefficients
  // over the others first (cheap when a denominator like 1 + x4^2 meets a
  // numerator in all variables).
  const unsigned va = variables_of(a), vb = variables_of(b), shared = va & vb;
  if (shared == 0) return Polynomial(1);
  if (va != vb) {
    Polynomial g;
    for (const Polynomial* p : {&b, &a}) {
      if ((variables_of(*p) & ~shared) == 0) {
        g = g.is_zero() ? p->monic() : gcd_impl(g, *p);
        continue;
      }
      for (const auto& c : coefficients_outside(*p, shared)) {
        g = g.is_zero() ? c.monic() : gcd_impl(g, c);
        if (g.is_constant()) return Polynomial(1);
      }
    }
    return g.monic();
  }

  int var = std::max(a.highest_variable(), b.highest_variable());
  if (a.degree_in(var) == 0) return gcd_impl(a, content_in(b, var));
  if (b.degree_in(var) == 0) return gcd_impl(content_in(a, var), b);

  Polynomial ca = content_in(a, var);
  Polynomial cb = content_in(b, var);
  Polynomial content_gcd = gcd_impl(ca, cb);

  Polynomial r0 = integer_primitive(exact_quotient(a, ca));
  Polynomial r1 = integer_primitive(exact_quotient(b, cb));
  if (r0.degree_in(var) < r1.degree_in(var)) std::swap(r0, r1);
  while (!r1.is_zero()) {
    Polynomial r = pseudo_remainder(r0, r1, var);
    r0 = std::move(r1);
    if (r.is_zero()) {
      r1 = Polynomial();
    } else if (r.degree_in(var) == 0) {
      // Primitive parts have a unit gcd.
      r0 = Polynomial(1);
      r1 = Polynomial();
    } else {
      r1 = integer_primitive(exact_quotient(r, content_in(r, var)));
    }
  }
  Polynomial g = r0.is_constant() ? Polynomial(1) : exact_quotient(r0, content_in(r0, var));
  return (g * content_gcd).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  DegreeCapScope unlimited(kMaxDegreeCap);
  return gcd_impl(a, b);
}

bool is_pattern_nonvanishing(const Polynomial& p) {
  if (p.is_zero()) return false;
  int sign = sgn(p.constant_term());
  if (sign == 0) return false;
  for (const auto& [m, c] : p.terms()) {
    if (sgn(c) != sign) return false;
    for (int v = 0; v < Monomial::kMaxVariables; ++v) {
      if (m.exponent(v) % 2 != 0) return false;
    }
  }
  return true;
}

}  // namespace presym
