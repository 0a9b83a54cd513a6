#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace superdual {

using Rational = mpq_class;

/// Parse "p/r" or "p" into an exact rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

/// Finitely supported map Z -> Q, stored densely from the lowest exponent.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT
  LaurentPoly(const Rational& c);  // NOLINT

  static LaurentPoly monomial(const Rational& c, int e);
  static LaurentPoly q_pow(int e) { return monomial(Rational(1), e); }
  /// Build from ascending coefficients starting at exponent `lo`.
  static LaurentPoly from_coeffs(int lo, std::vector<Rational> c);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_constant() const { return c_.empty() || (lo_ == 0 && c_.size() == 1); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  std::size_t span() const { return c_.size(); }
  Rational coeff(int e) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  std::size_t term_count() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.lo_ == b.lo_ && a.c_ == b.c_;
  }

  LaurentPoly shifted(int k) const;
  /// Exact evaluation; q0 must be nonzero when negative exponents occur.
  Rational eval(const Rational& q0) const;
  std::string str() const;

 private:
  void trim();
  int lo_ = 0;
  std::vector<Rational> c_;
};

/// Element of Q(q) in canonical reduced form.
/// The denominator is a primitive integer polynomial with positive constant term,
/// so every monomial factor lives in the numerator.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(const LaurentPoly& p) : num_(p), den_(1) {}  // NOLINT

  static RatFunc normalize(LaurentPoly num, LaurentPoly den);
  static RatFunc q_pow(int e) { return RatFunc(LaurentPoly::q_pow(e)); }
  static RatFunc q() { return q_pow(1); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  Rational constant_value() const;

  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Exact value at q = q0. Throws std::domain_error at q0 = 0 or at a pole.
  Rational specialize(const Rational& q0) const;
  /// Rough size used for pivot choice.
  std::size_t weight() const { return num_.span() + den_.span(); }
  std::string str() const;

 private:
  LaurentPoly num_;
  LaurentPoly den_;
};

enum class ArithOp { add, sub, mul, div };
RatFunc arith(const RatFunc& a, const RatFunc& b, ArithOp op);

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline std::size_t pivot_weight(const RatFunc& x) { return x.weight(); }
inline std::size_t pivot_weight(const Rational& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}
inline std::string to_str(const RatFunc& x) { return x.str(); }
inline std::string to_str(const Rational& x) { return rational_str(x); }

/// q - q^{-1}
RatFunc q_minus_qinv();

}  // namespace superdual
