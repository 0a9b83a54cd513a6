#include "superdual/uq_rep.hpp"

#include <regex>
#include <sstream>

namespace superdual {

CartanDatum::CartanDatum(SuperDim dim) : dim_(dim) {
  if (dim.m < 1 || dim.n < 1) throw std::invalid_argument("need m >= 1 and n >= 1");
}

int CartanDatum::d_coef(int i) const {
  if (i < 0 || i > nprime()) throw std::out_of_range("node index out of range");
  return (i >= 1 && i <= dim_.m) ? 1 : -1;
}

std::vector<int> CartanDatum::eps(int i) const {
  if (i < 1 || i > nprime()) throw std::out_of_range("basis index out of range");
  std::vector<int> v(static_cast<std::size_t>(nprime()), 0);
  v[static_cast<std::size_t>(i - 1)] = 1;
  return v;
}

std::vector<int> CartanDatum::alpha(int i) const {
  if (i < 0 || i > last_node()) throw std::out_of_range("node index out of range");
  std::vector<int> v(static_cast<std::size_t>(nprime()), 0);
  if (i == 0) {
    v.back() += 1;
    v.front() -= 1;
  } else {
    v[static_cast<std::size_t>(i - 1)] = 1;
    v[static_cast<std::size_t>(i)] = -1;
  }
  return v;
}

int CartanDatum::root_parity(int i) const { return (i == 0 || i == dim_.m) ? 1 : 0; }

int cartan_pairing(const CartanDatum& cd, const std::vector<int>& g, const std::vector<int>& l) { return cd.pairing(g, l); }

std::string GeneratorTag::str() const {
  switch (kind) {
    case Kind::E: return "E" + std::to_string(index);
    case Kind::F: return "F" + std::to_string(index);
    case Kind::Sigma: return "sigma";
    case Kind::E0: return "E0";
    case Kind::F0: return "F0";
    case Kind::K0: return "K0";
    case Kind::K: {
      std::ostringstream os;
      os << "K(";
      for (std::size_t i = 0; i < gamma.size(); ++i) os << (i ? "," : "") << gamma[i];
      os << ")";
      return os.str();
    }
  }
  return "?";
}

GeneratorTag GeneratorTag::parse(const std::string& s, const CartanDatum& cd) {
  static const std::regex ef(R"(([EF])(\d+))"), ka(R"(Kalpha(\d+))"), ke(R"(Keps(\d+))"), kv(R"(K\(([-\d,\s]+)\))");
  std::smatch m;
  if (s == "sigma") return Sigma();
  if (s == "K0") return K0();
  if (std::regex_match(s, m, ef)) {
    int i = std::stoi(m[2].str());
    if (i < 0 || i > cd.last_node()) throw std::invalid_argument("generator index out of range: " + s);
    return m[1].str() == "E" ? node_E(i) : node_F(i);
  }
  if (std::regex_match(s, m, ka)) return K(cd.alpha(std::stoi(m[1].str())));
  if (std::regex_match(s, m, ke)) return K(cd.eps(std::stoi(m[1].str())));
  if (std::regex_match(s, m, kv)) {
    std::vector<int> g;
    std::stringstream ss(m[1].str());
    std::string tok;
    while (std::getline(ss, tok, ',')) g.push_back(std::stoi(tok));
    if (static_cast<int>(g.size()) != cd.nprime()) throw std::invalid_argument("K weight needs n' entries: " + s);
    return K(g);
  }
  throw std::invalid_argument("unknown generator tag: " + s);
}

namespace {

SuperOp k_diag(const std::vector<int>& gamma, const CartanDatum& cd) {
  std::vector<RatFunc> diag;
  for (int i = 1; i <= cd.nprime(); ++i) diag.push_back(RatFunc::q_pow(cd.pairing(gamma, cd.eps(i))));
  return SuperOp::diagonal(cd.dim(), 1, diag);
}

std::vector<int> neg(std::vector<int> v) {
  for (auto& x : v) x = -x;
  return v;
}

void check_finite_index(int i, const CartanDatum& cd) {
  if (i < 1 || i > cd.last_node()) throw std::out_of_range("finite generator index out of range");
}

}  // namespace

SuperOp rho_site(const GeneratorTag& g, const CartanDatum& cd, const Rational& c) {
  const SuperDim dim = cd.dim();
  const int np = cd.nprime();
  switch (g.kind) {
    case GeneratorTag::Kind::E:
      check_finite_index(g.index, cd);
      return SuperOp::unit(dim, g.index, g.index + 1, RatFunc::q_pow(-cd.d_coef(g.index + 1)));
    case GeneratorTag::Kind::F:
      check_finite_index(g.index, cd);
      return SuperOp::unit(dim, g.index + 1, g.index, RatFunc::q_pow(cd.d_coef(g.index + 1)));
    case GeneratorTag::Kind::K:
      return k_diag(g.gamma, cd);
    case GeneratorTag::Kind::Sigma: {
      std::vector<RatFunc> s;
      for (int i = 1; i <= np; ++i) s.emplace_back(dim.parity(i) ? -1 : 1);
      return SuperOp::diagonal(dim, 1, s);
    }
    case GeneratorTag::Kind::E0:
      if (sgn(c) == 0) throw std::invalid_argument("evaluation parameter must be nonzero");
      return SuperOp::unit(dim, np, 1, RatFunc(c));
    case GeneratorTag::Kind::F0:
      if (sgn(c) == 0) throw std::invalid_argument("evaluation parameter must be nonzero");
      return SuperOp::unit(dim, 1, np, RatFunc(Rational(1 / c)));
    case GeneratorTag::Kind::K0:
      return k_diag(cd.alpha(0), cd);
  }
  throw std::logic_error("unreachable");
}

SuperOp k_pi(const CartanDatum& cd) { return k_diag(neg(cd.alpha(0)), cd); }

namespace {

SuperOp diagonal_weight_op(const std::vector<int>& gamma, int d, const CartanDatum& cd) {
  SuperOp out(cd.dim(), d, 0);
  for (std::size_t r = 0; r < out.size(); ++r)
    out.add_entry(r, r, RatFunc::q_pow(cd.pairing(gamma, word_weight(word_of(r, cd.dim(), d), cd.dim()))));
  return out;
}

}  // namespace

SuperOp rho_d(const GeneratorTag& g, int d, const CartanDatum& cd) {
  if (d < 1) throw std::invalid_argument("tensor power must be positive");
  if (g.affine()) throw std::invalid_argument("affine generator " + g.str() + ": use rho_d_affine");
  const SuperOp I = SuperOp::identity(cd.dim(), 1);
  switch (g.kind) {
    case GeneratorTag::Kind::E: {
      SuperOp a = rho_site(g, cd), ka = k_diag(cd.alpha(g.index), cd);
      SuperOp out(cd.dim(), d, a.parity());
      for (int k = 1; k <= d; ++k) out += slot_embed(ka, a, I, k, d);
      return out;
    }
    case GeneratorTag::Kind::F: {
      SuperOp a = rho_site(g, cd), kai = k_diag(neg(cd.alpha(g.index)), cd);
      SuperOp out(cd.dim(), d, a.parity());
      for (int k = 1; k <= d; ++k) out += slot_embed(I, a, kai, k, d);
      return out;
    }
    case GeneratorTag::Kind::K:
      return diagonal_weight_op(g.gamma, d, cd);
    case GeneratorTag::Kind::Sigma: {
      SuperOp out(cd.dim(), d, 0);
      for (std::size_t r = 0; r < out.size(); ++r) out.add_entry(r, r, RatFunc(word_parity(word_of(r, cd.dim(), d), cd.dim()) ? -1 : 1));
      return out;
    }
    default:
      break;
  }
  throw std::logic_error("unreachable");
}

SuperOp y_e_shape(int j, int d, const CartanDatum& cd) {
  return slot_embed(k_diag(cd.alpha(0), cd), SuperOp::unit(cd.dim(), cd.nprime(), 1), SuperOp::identity(cd.dim(), 1), j, d);
}

SuperOp y_f_shape(int j, int d, const CartanDatum& cd) {
  return slot_embed(SuperOp::identity(cd.dim(), 1), SuperOp::unit(cd.dim(), 1, cd.nprime()), k_pi(cd), j, d);
}

SuperOp rho_d_affine(const GeneratorTag& g, int d, const std::vector<Rational>& c, const CartanDatum& cd) {
  if (!g.affine()) throw std::invalid_argument("finite generator " + g.str() + ": use rho_d");
  if (static_cast<int>(c.size()) != d) throw std::invalid_argument("need one evaluation parameter per tensor factor");
  for (const auto& x : c)
    if (sgn(x) == 0) throw std::invalid_argument("evaluation parameters must be nonzero");
  if (g.kind == GeneratorTag::Kind::K0) return diagonal_weight_op(cd.alpha(0), d, cd);
  SuperOp out(cd.dim(), d, 1);
  for (int j = 1; j <= d; ++j) {
    const Rational& cj = c[static_cast<std::size_t>(j - 1)];
    if (g.kind == GeneratorTag::Kind::E0)
      out += y_e_shape(j, d, cd) * RatFunc(cj);
    else
      out += y_f_shape(j, d, cd) * RatFunc(Rational(1 / cj));
  }
  return out;
}

SuperOp e_pi_product(const CartanDatum& cd) {
  SuperOp p = SuperOp::identity(cd.dim(), 1);
  for (int i = 1; i <= cd.last_node(); ++i) p = p * rho_site(GeneratorTag::E(i), cd);
  return p;
}

std::vector<TensorTerm> r_matrix_terms(const CartanDatum& cd) {
  const SuperDim dim = cd.dim();
  const int np = cd.nprime();
  std::vector<TensorTerm> t;
  for (int i = 1; i <= np; ++i) t.push_back({RatFunc::q_pow(dim.parity(i) ? -1 : 1), SuperOp::unit(dim, i, i), SuperOp::unit(dim, i, i)});
  for (int i = 1; i <= np; ++i)
    for (int j = 1; j <= np; ++j)
      if (i != j) t.push_back({RatFunc(1), SuperOp::unit(dim, i, i), SuperOp::unit(dim, j, j)});
  for (int i = 1; i <= np; ++i)
    for (int j = i + 1; j <= np; ++j)
      t.push_back({q_minus_qinv() * RatFunc(dim.parity(i) ? -1 : 1), SuperOp::unit(dim, j, i), SuperOp::unit(dim, i, j)});
  return t;
}

std::vector<TensorTerm> rhat_terms(const CartanDatum& cd) {
  const SuperDim dim = cd.dim();
  const int np = cd.nprime();
  std::vector<TensorTerm> t;
  for (int i = 1; i <= np; ++i) {
    int s = dim.parity(i) ? -1 : 1;
    t.push_back({RatFunc::q_pow(s) * RatFunc(s), SuperOp::unit(dim, i, i), SuperOp::unit(dim, i, i)});
  }
  for (int i = 1; i <= np; ++i)
    for (int j = 1; j <= np; ++j)
      if (i != j) t.push_back({RatFunc(dim.parity(i) ? -1 : 1), SuperOp::unit(dim, j, i), SuperOp::unit(dim, i, j)});
  for (int i = 1; i <= np; ++i)
    for (int j = i + 1; j <= np; ++j) t.push_back({q_minus_qinv(), SuperOp::unit(dim, i, i), SuperOp::unit(dim, j, j)});
  return t;
}

SuperOp sum_graded(const std::vector<TensorTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty term list");
  SuperOp out(terms[0].a.dim(), 2, terms[0].a.parity() ^ terms[0].b.parity());
  for (const auto& t : terms) out += graded_tensor({t.a, t.b}) * t.coef;
  return out;
}

SuperOp build_R(const CartanDatum& cd) { return sum_graded(r_matrix_terms(cd)); }
SuperOp build_Rhat(const CartanDatum& cd) { return sum_graded(rhat_terms(cd)); }

SuperOp rhat_slot(int i, int d, const CartanDatum& cd) {
  if (i < 1 || i >= d) throw std::out_of_range("R-hat slot out of range");
  return embed_even_block(build_Rhat(cd), i, d);
}

std::vector<TensorTerm> coproduct_terms(const GeneratorTag& g, const CartanDatum& cd) {
  const SuperOp I = SuperOp::identity(cd.dim(), 1);
  switch (g.kind) {
    case GeneratorTag::Kind::E: {
      SuperOp e = rho_site(g, cd);
      return {{RatFunc(1), e, I}, {RatFunc(1), k_diag(cd.alpha(g.index), cd), e}};
    }
    case GeneratorTag::Kind::F: {
      SuperOp f = rho_site(g, cd);
      return {{RatFunc(1), f, k_diag(neg(cd.alpha(g.index)), cd)}, {RatFunc(1), I, f}};
    }
    case GeneratorTag::Kind::K:
    case GeneratorTag::Kind::Sigma: {
      SuperOp k = rho_site(g, cd);
      return {{RatFunc(1), k, k}};
    }
    default:
      throw std::invalid_argument("coproduct terms only for finite generators");
  }
}

std::vector<GeneratorTag> finite_generators(const CartanDatum& cd) {
  std::vector<GeneratorTag> g{GeneratorTag::Sigma()};
  for (int k = 1; k <= cd.last_node(); ++k) g.push_back(GeneratorTag::K(cd.alpha(k)));
  for (int k = 1; k <= cd.last_node(); ++k) g.push_back(GeneratorTag::E(k));
  for (int k = 1; k <= cd.last_node(); ++k) g.push_back(GeneratorTag::F(k));
  return g;
}

}  // namespace superdual
