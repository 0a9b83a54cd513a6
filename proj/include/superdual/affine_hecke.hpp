#pragma once

#include "superdual/uq_rep.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace superdual {

/// One-line notation, values 1..d.
using Perm = std::vector<int>;

Perm perm_identity(int d);
/// (a*b)(x) = a(b(x))
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& p);
Perm simple_reflection(int i, int d);
int perm_length(const Perm& p);
/// Lexicographically least reduced word (i_1, ..., i_k) with w = s_{i_1} ... s_{i_k}.
std::vector<int> reduced_word(const Perm& p);
/// All of S_d in lexicographic order of one-line notation.
std::vector<Perm> all_perms(int d);

struct HeckeAtom {
  enum class Kind { T, Tinv, Y, Yinv };
  Kind kind = Kind::T;
  int index = 1;

  static HeckeAtom T(int i) { return {Kind::T, i}; }
  static HeckeAtom Tinv(int i) { return {Kind::Tinv, i}; }
  static HeckeAtom Y(int j) { return {Kind::Y, j}; }
  static HeckeAtom Yinv(int j) { return {Kind::Yinv, j}; }
  std::string str() const;
};
using HeckeWord = std::vector<HeckeAtom>;

/// Parse "T1 y2^-1 T2^-1 y1" (also '*' separated).
HeckeWord parse_hecke_word(const std::string& s, int d);

/// Element of the affine Hecke algebra in Bernstein normal form sum c * y^mu * T_w.
class HeckeElt {
 public:
  using Key = std::pair<std::vector<int>, Perm>;

  explicit HeckeElt(int d = 1) : d_(d) {}
  static HeckeElt one(int d);
  static HeckeElt Tw(const Perm& w, const RatFunc& c = RatFunc(1));
  static HeckeElt y_mono(const std::vector<int>& mu, const RatFunc& c = RatFunc(1));
  static HeckeElt atom(const HeckeAtom& a, int d);

  int d() const { return d_; }
  const std::map<Key, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool y_free() const;
  RatFunc coeff(const std::vector<int>& mu, const Perm& w) const;
  void add_term(const std::vector<int>& mu, const Perm& w, const RatFunc& c);

  HeckeElt& operator+=(const HeckeElt& o);
  HeckeElt& operator-=(const HeckeElt& o);
  HeckeElt& operator*=(const RatFunc& s);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(HeckeElt a, const RatFunc& s) { return a *= s; }
  friend HeckeElt operator*(const HeckeElt& a, const HeckeElt& b);
  friend bool operator==(const HeckeElt& a, const HeckeElt& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

  std::string str() const;

 private:
  int d_;
  std::map<Key, RatFunc> terms_;
};

/// Product of y-free elements in the T_w basis.
HeckeElt finite_hecke_mul(const HeckeElt& a, const HeckeElt& b);
/// Normal form of a word, y-monomials on the left.
HeckeElt bernstein_nf(const HeckeWord& word, int d);
/// y_j -> z T_{j-1} ... T_1^2 ... T_{j-1}, identity on T.
HeckeElt ev_z(const HeckeElt& h, const Rational& z);

/// M_c = H / (y_j - c_j) H as a right module with basis T_w.
class McModule {
 public:
  McModule(std::vector<Rational> c);

  int d() const { return d_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Perm>& basis() const { return basis_; }
  const std::vector<Rational>& c() const { return c_; }
  std::size_t index_of(const Perm& w) const { return index_.at(w); }

  using Vec = std::vector<RatFunc>;
  Vec unit_vector(const Perm& w) const;
  /// Image of an algebra element in M_c: y-monomials evaluate through c.
  Vec reduce(const HeckeElt& h) const;
  Vec right_action(const Vec& m, const HeckeAtom& g) const;
  /// Column w holds the coordinates of T_w * g.
  SparseMat<RatFunc> matrix(const HeckeAtom& g) const;
  /// Matrix of right multiplication by a word (reverse product of atom matrices).
  SparseMat<RatFunc> word_matrix(const HeckeWord& w) const;
  /// Element of the finite Hecke algebra represented by a module vector.
  HeckeElt as_element(const Vec& m) const;

 private:
  int d_;
  std::vector<Rational> c_;
  std::vector<Perm> basis_;
  std::map<Perm, std::size_t> index_;
};

inline McModule::Vec mc_right_action(const McModule& M, const McModule::Vec& m, const HeckeAtom& g) { return M.right_action(m, g); }

/// T_i acting on V^{(x)d} as R-hat in slots (i, i+1).
SuperOp pi_d(int i, int d, const CartanDatum& cd);
/// pi(T_w) along the reduced word.
SuperOp pi_perm(const Perm& w, const CartanDatum& cd);
/// pi of a y-free element.
SuperOp pi_element(const HeckeElt& h, const CartanDatum& cd);

}  // namespace superdual
