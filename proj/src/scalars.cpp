#include "superdual/scalars.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <utility>

namespace superdual {

Rational parse_rational(const std::string& s) {
  static const std::regex re(R"(\s*([+-]?\d+)(?:/(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw std::invalid_argument("invalid rational '" + s + "' (expected p/r)");
  mpz_class p(m[1].str());
  mpz_class r(1);
  if (m[2].matched) r = mpz_class(m[2].str());
  if (r == 0) throw std::invalid_argument("invalid rational '" + s + "': zero denominator");
  Rational out(p, r);
  out.canonicalize();
  return out;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (sgn(c) != 0) {
    c_.push_back(c);
    c_.back().canonicalize();
  }
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int e) {
  LaurentPoly p;
  if (sgn(c) != 0) {
    p.lo_ = e;
    p.c_.push_back(c);
    p.c_.back().canonicalize();
  }
  return p;
}

LaurentPoly LaurentPoly::from_coeffs(int lo, std::vector<Rational> c) {
  LaurentPoly p;
  p.lo_ = lo;
  p.c_ = std::move(c);
  for (auto& x : p.c_) x.canonicalize();
  p.trim();
  return p;
}

bool LaurentPoly::is_one() const { return lo_ == 0 && c_.size() == 1 && c_[0] == 1; }

Rational LaurentPoly::coeff(int e) const {
  if (e < lo_ || e > hi()) return Rational(0);
  return c_[static_cast<std::size_t>(e - lo_)];
}

std::size_t LaurentPoly::term_count() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Rational& x) { return sgn(x) != 0; }));
}

void LaurentPoly::trim() {
  std::size_t b = 0;
  while (b < c_.size() && sgn(c_[b]) == 0) ++b;
  if (b == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  std::size_t e = c_.size();
  while (sgn(c_[e - 1]) == 0) --e;
  if (b > 0 || e < c_.size()) {
    c_ = std::vector<Rational>(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
    lo_ += static_cast<int>(b);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int nlo = std::min(lo_, o.lo_);
  int nhi = std::max(hi(), o.hi());
  if (nlo != lo_ || nhi != hi()) {
    std::vector<Rational> nc(static_cast<std::size_t>(nhi - nlo + 1));
    for (std::size_t i = 0; i < c_.size(); ++i) nc[i + static_cast<std::size_t>(lo_ - nlo)] = c_[i];
    c_ = std::move(nc);
    lo_ = nlo;
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i + static_cast<std::size_t>(o.lo_ - lo_)] += o.c_[i];
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    c_.clear();
    lo_ = 0;
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  LaurentPoly r;
  r.lo_ = a.lo_ + b.lo_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.lo_ += k;
  return r;
}

Rational LaurentPoly::eval(const Rational& q0) const {
  if (is_zero()) return Rational(0);
  if (sgn(q0) == 0 && lo_ < 0) throw std::domain_error("negative power of q at q = 0");
  // Horner on the coefficient vector, then multiply by q0^lo.
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q0 + c_[i];
  Rational base = q0;
  int e = lo_;
  if (e < 0) {
    base = 1 / q0;
    e = -e;
  }
  Rational pw(1);
  while (e > 0) {
    if (e & 1) pw *= base;
    base *= base;
    e >>= 1;
  }
  return acc * pw;
}

std::string LaurentPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    int e = lo_ + static_cast<int>(i);
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

// ------------------------------------------------------- dense poly helpers

namespace {

using Dense = std::vector<Rational>;  // ascending, index = exponent

void dtrim(Dense& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

// a = q*b + r
void ddivmod(Dense a, const Dense& b, Dense& quo, Dense& rem) {
  dtrim(a);
  quo.clear();
  if (a.size() < b.size()) {
    rem = std::move(a);
    return;
  }
  quo.assign(a.size() - b.size() + 1, Rational(0));
  Rational lead_inv = 1 / b.back();
  const long db = static_cast<long>(b.size()) - 1;
  for (long k = static_cast<long>(a.size()) - 1; k >= db; --k) {
    if (sgn(a[static_cast<std::size_t>(k)]) == 0) continue;
    Rational f = a[static_cast<std::size_t>(k)] * lead_inv;
    auto off = static_cast<std::size_t>(k - db);
    quo[off] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[off + j] -= f * b[j];
  }
  dtrim(a);
  dtrim(quo);
  rem = std::move(a);
}

void dmonic(Dense& a) {
  Rational inv = 1 / a.back();
  for (auto& x : a) x *= inv;
}

Dense dgcd(Dense a, Dense b) {
  dtrim(a);
  dtrim(b);
  while (!b.empty()) {
    Dense qq, r;
    ddivmod(a, b, qq, r);
    a = std::move(b);
    b = std::move(r);
    if (!b.empty()) dmonic(b);
  }
  if (!a.empty()) dmonic(a);
  return a;
}

}  // namespace

// ----------------------------------------------------------------- RatFunc

RatFunc RatFunc::normalize(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw std::domain_error("division by zero in ℚ(q)");
  RatFunc r;
  if (num.is_zero()) return r;
  int s = den.lo();
  num = num.shifted(-s);
  den = den.shifted(-s);
  if (den.span() == 1) {
    num *= 1 / den.coeff(0);
    r.num_ = std::move(num);
    return r;
  }
  int nlo = num.lo();
  Dense P = num.coeffs();
  Dense D = den.coeffs();
  Dense G = dgcd(P, D);
  if (G.size() > 1) {
    Dense qq, rr;
    ddivmod(P, G, qq, rr);
    P = std::move(qq);
    ddivmod(D, G, qq, rr);
    D = std::move(qq);
  }
  // Primitive integer denominator with positive constant term.
  mpz_class l(1), g(0);
  for (const auto& x : D) {
    if (sgn(x) == 0) continue;
    mpz_class dd = x.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), dd.get_mpz_t());
  }
  for (const auto& x : D) {
    if (sgn(x) == 0) continue;
    Rational xl = x * l;
    mpz_class nn = xl.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nn.get_mpz_t());
  }
  Rational f(l, g);
  f.canonicalize();
  if (sgn(D[0]) < 0) f = -f;
  for (auto& x : D) x *= f;
  for (auto& x : P) x *= f;
  r.num_ = LaurentPoly::from_coeffs(nlo, std::move(P));
  r.den_ = LaurentPoly::from_coeffs(0, std::move(D));
  return r;
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw std::logic_error("not a constant: " + str());
  return num_.is_zero() ? Rational(0) : num_.coeff(0);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in ℚ(q)");
  return normalize(den_, num_);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) *this = normalize(num_, den_);
    return *this;
  }
  *this = normalize(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  *this = normalize(num_ * o.num_, den_ * o.den_);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in ℚ(q)");
  if (o.is_constant()) {
    num_ *= 1 / o.num_.coeff(0);
    return *this;
  }
  *this = normalize(num_ * o.den_, den_ * o.num_);
  return *this;
}

Rational RatFunc::specialize(const Rational& q0) const {
  if (sgn(q0) == 0) throw std::domain_error("cannot specialize at q0 = 0");
  Rational dv = den_.eval(q0);
  if (sgn(dv) == 0)
    throw std::domain_error("pole at q0 = " + rational_str(q0) + ": factor (" + den_.str() + ") vanishes");
  return num_.eval(q0) / dv;
}

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc arith(const RatFunc& a, const RatFunc& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  return {};
}

RatFunc q_minus_qinv() { return RatFunc(LaurentPoly::q_pow(1) - LaurentPoly::q_pow(-1)); }

}  // namespace superdual
