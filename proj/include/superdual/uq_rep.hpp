#pragma once

#include "superdual/super_tensor.hpp"

#include <string>
#include <vector>

namespace superdual {

/// Root data of the affine sl(m|n) diagram with nodes 0..n'-1.
class CartanDatum {
 public:
  explicit CartanDatum(SuperDim dim);

  const SuperDim& dim() const { return dim_; }
  int nprime() const { return dim_.nprime(); }
  /// Index of the last finite node, n' - 1.
  int last_node() const { return dim_.nprime() - 1; }
  /// d_i for node i: 1 for 1 <= i <= m, -1 otherwise (including node 0).
  int d_coef(int i) const;
  std::vector<int> eps(int i) const;
  /// alpha_i = eps_i - eps_{i+1}; alpha_0 = eps_{n'} - eps_1.
  std::vector<int> alpha(int i) const;
  int root_parity(int i) const;
  int pairing(const std::vector<int>& g, const std::vector<int>& l) const { return dim_.pairing(g, l); }
  /// q_i = q^{d_i}
  RatFunc q_node(int i) const { return RatFunc::q_pow(d_coef(i)); }

 private:
  SuperDim dim_;
};

int cartan_pairing(const CartanDatum& cd, const std::vector<int>& g, const std::vector<int>& l);

struct GeneratorTag {
  enum class Kind { E, F, K, Sigma, E0, F0, K0 };
  Kind kind = Kind::E;
  int index = 0;           // for E/F: 1..n'-1
  std::vector<int> gamma;  // for K

  static GeneratorTag E(int i) { return {Kind::E, i, {}}; }
  static GeneratorTag F(int i) { return {Kind::F, i, {}}; }
  static GeneratorTag K(std::vector<int> g) { return {Kind::K, 0, std::move(g)}; }
  static GeneratorTag Sigma() { return {Kind::Sigma, 0, {}}; }
  static GeneratorTag E0() { return {Kind::E0, 0, {}}; }
  static GeneratorTag F0() { return {Kind::F0, 0, {}}; }
  static GeneratorTag K0() { return {Kind::K0, 0, {}}; }
  /// E_i / F_i / K_{alpha_i} with node 0 mapped to the affine tags.
  static GeneratorTag node_E(int i) { return i == 0 ? E0() : E(i); }
  static GeneratorTag node_F(int i) { return i == 0 ? F0() : F(i); }

  bool affine() const { return kind == Kind::E0 || kind == Kind::F0 || kind == Kind::K0; }
  std::string str() const;
  /// Accepts E<i>, F<i>, K0, Kalpha<i>, Keps<i>, K(g1,...,gn'), sigma.
  static GeneratorTag parse(const std::string& s, const CartanDatum& cd);
};

/// Image of a generator on V. `c` is the evaluation parameter for E0/F0.
SuperOp rho_site(const GeneratorTag& g, const CartanDatum& cd, const Rational& c = Rational(1));

/// diag(q, 1, ..., 1, q)
SuperOp k_pi(const CartanDatum& cd);

/// Finite generators on V^{(x)d}.
/// E_i = sum_k K_{alpha_i}^{(k-1)} (x) rho(E_i) (x) 1, F_i = sum_k 1 (x) rho(F_i) (x) K_{alpha_i}^{-1},
/// as graded tensors.
SuperOp rho_d(const GeneratorTag& g, int d, const CartanDatum& cd);

/// Affine generators on V(c_1) (x) ... (x) V(c_d).
SuperOp rho_d_affine(const GeneratorTag& g, int d, const std::vector<Rational>& c, const CartanDatum& cd);

/// Slot-j shapes of the affine action: K_Pi^{-1} ... (x) E_{n',1} (x) 1 ... and 1 ... (x) E_{1,n'} (x) K_Pi ...
SuperOp y_e_shape(int j, int d, const CartanDatum& cd);
SuperOp y_f_shape(int j, int d, const CartanDatum& cd);

/// Literal product rho(E_1) ... rho(E_{n'-1}); equals q^{n-m+1} E_{1,n'}.
SuperOp e_pi_product(const CartanDatum& cd);

struct TensorTerm {
  RatFunc coef;
  SuperOp a;
  SuperOp b;
};

/// R as a sum of matrix-unit tensors.
std::vector<TensorTerm> r_matrix_terms(const CartanDatum& cd);
std::vector<TensorTerm> rhat_terms(const CartanDatum& cd);
SuperOp sum_graded(const std::vector<TensorTerm>& terms);
SuperOp build_R(const CartanDatum& cd);
SuperOp build_Rhat(const CartanDatum& cd);
/// 1^{(i-1)} (x) R-hat (x) 1^{(d-i-1)}
SuperOp rhat_slot(int i, int d, const CartanDatum& cd);

/// Coproduct of a finite generator as tensor terms on V (x) V.
std::vector<TensorTerm> coproduct_terms(const GeneratorTag& g, const CartanDatum& cd);

/// sigma, K_{alpha_k} and E_k, F_k for 1 <= k <= n'-1.
std::vector<GeneratorTag> finite_generators(const CartanDatum& cd);

}  // namespace superdual
