#include "superdual/verify_suite.hpp"

#include "superdual/parallel.hpp"

#include <functional>
#include <sstream>

namespace superdual {

std::vector<CheckResult> run_tasks(const std::vector<CheckTask>& tasks) {
  return parallel_map<CheckResult>(tasks.size(), [&](std::size_t k) {
    CheckResult r = timed(tasks[k].run);
    r.name = tasks[k].name;
    return r;
  });
}

namespace {

Json base_params(int m, int n, int d) { return Json{{"m", m}, {"n", n}, {"d", d}}; }

void require_d(int d, int lo) {
  if (d < lo) throw std::invalid_argument("suite needs d >= " + std::to_string(lo));
}

std::string idx(int i) { return std::to_string(i); }
std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::vector<int> add(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<int> neg(std::vector<int> a) {
  for (auto& x : a) x = -x;
  return a;
}

// Operators over a scalar field F with a tracked parity, so one code path serves
// both Q(q) and a rational specialization.
template <class F>
struct GOp {
  SparseMat<F> m;
  int parity = 0;
};

template <class F>
int prod_parity(const GOp<F>& a, const GOp<F>& b) {
  return a.parity == kMixedParity || b.parity == kMixedParity ? kMixedParity : (a.parity + b.parity) % 2;
}
template <class F>
GOp<F> operator*(const GOp<F>& a, const GOp<F>& b) {
  return {a.m * b.m, prod_parity(a, b)};
}
template <class F>
GOp<F> operator+(const GOp<F>& a, const GOp<F>& b) {
  return {a.m + b.m, a.parity == b.parity ? a.parity : kMixedParity};
}
template <class F>
GOp<F> operator-(const GOp<F>& a, const GOp<F>& b) {
  return {a.m - b.m, a.parity == b.parity ? a.parity : kMixedParity};
}
template <class F>
GOp<F> operator*(const GOp<F>& a, const F& s) {
  return {a.m * s, a.parity};
}

template <class F>
struct Field;

template <>
struct Field<RatFunc> {
  static RatFunc q_pow(int e) { return RatFunc::q_pow(e); }
  static GOp<RatFunc> lift(const SuperOp& op) { return {op.mat(), op.parity()}; }
  std::string label() const { return "symbolic"; }
};

template <>
struct Field<Rational> {
  Rational q0;
  Rational q_pow(int e) const {
    Rational r(1);
    for (int k = 0; k < std::abs(e); ++k) r *= q0;
    if (e < 0) r = 1 / r;
    return r;
  }
  GOp<Rational> lift(const SuperOp& op) const { return {op.specialize_matrix(q0), op.parity()}; }
  std::string label() const { return "rational:" + rational_str(q0); }
};

template <class F>
CheckResult zero_check(const GOp<F>& res) {
  CheckResult r;
  r.residual_nnz = res.m.nnz();
  r.pass = r.residual_nnz == 0;
  if (auto nz = res.m.first_nonzero()) r.witness = Witness{std::get<0>(*nz), std::get<1>(*nz), to_str(std::get<2>(*nz))};
  return r;
}

template <class F>
GOp<F> super_bracket(const GOp<F>& a, const GOp<F>& b) {
  if (a.parity == kMixedParity || b.parity == kMixedParity) throw std::invalid_argument("bracket needs homogeneous operators");
  auto ba = b * a;
  return (a.parity & b.parity) ? a * b + ba : a * b - ba;
}

/// XY - (-1)^{p(X)p(Y)} q^{-(alpha,beta)} YX
template <class F, class Fld>
GOp<F> deformed_bracket(const GOp<F>& a, const GOp<F>& b, int pairing, const Fld& fld) {
  F s = fld.q_pow(-pairing);
  if (a.parity & b.parity) s = -s;
  return a * b - (b * a) * s;
}

template <class F, class Fld>
std::vector<CheckResult> qs_checks(const CartanDatum& cd, const std::vector<Rational>& c, const Fld& fld) {
  const int d = static_cast<int>(c.size());
  const int last = cd.last_node();
  const int m = cd.dim().m, n = cd.dim().n;
  auto lift = [&](const SuperOp& op) { return fld.lift(op); };

  std::vector<GOp<F>> E, Fo, K, Kinv;
  for (int i = 0; i <= last; ++i) {
    E.push_back(lift(i == 0 ? rho_d_affine(GeneratorTag::E0(), d, c, cd) : rho_d(GeneratorTag::E(i), d, cd)));
    Fo.push_back(lift(i == 0 ? rho_d_affine(GeneratorTag::F0(), d, c, cd) : rho_d(GeneratorTag::F(i), d, cd)));
    K.push_back(lift(i == 0 ? rho_d_affine(GeneratorTag::K0(), d, c, cd) : rho_d(GeneratorTag::K(cd.alpha(i)), d, cd)));
    Kinv.push_back(lift(rho_d(GeneratorTag::K(neg(cd.alpha(i))), d, cd)));
  }
  const GOp<F> sigma = lift(rho_d(GeneratorTag::Sigma(), d, cd));
  const GOp<F> id = lift(SuperOp::identity(cd.dim(), d));
  auto Kg = [&](const std::vector<int>& g) { return lift(rho_d(GeneratorTag::K(g), d, cd)); };

  std::vector<std::pair<std::string, std::vector<int>>> lattice;
  for (int i = 0; i <= last; ++i) lattice.emplace_back("alpha" + idx(i), cd.alpha(i));
  lattice.emplace_back("eps1", cd.eps(1));

  std::vector<CheckTask> tasks;
  auto task = [&](std::string name, std::function<CheckResult()> fn) { tasks.push_back({std::move(name), std::move(fn)}); };
  auto zero = [](const GOp<F>& res, Json info = Json::object()) {
    CheckResult r = zero_check(res);
    r.info = std::move(info);
    return r;
  };

  // QS1: K-monoid on a lattice basis and sigma
  const std::vector<int> origin(static_cast<std::size_t>(cd.nprime()), 0);
  task("QS1 K(0) = 1", [&] { return zero(Kg(origin) - id); });
  task("QS1 K0 = K(alpha0)", [&] { return zero(K[0] - Kg(cd.alpha(0))); });
  task("QS1 sigma^2 = 1", [&] { return zero(sigma * sigma - id); });
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    const std::string na = lattice[a].first;
    const std::vector<int> ga = lattice[a].second;
    task("QS1 K(" + na + ")K(-" + na + ") = 1", [&, ga] { return zero(Kg(ga) * Kg(neg(ga)) - id); });
    task("QS1 sigma K(" + na + ") = K(" + na + ") sigma", [&, ga] { return zero(sigma * Kg(ga) - Kg(ga) * sigma); });
    for (std::size_t b = a + 1; b < lattice.size(); ++b) {
      const std::string nb = lattice[b].first;
      const std::vector<int> gb = lattice[b].second;
      task("QS1 K(" + na + ")K(" + nb + ") = K(" + na + "+" + nb + ")", [&, ga, gb] { return zero(Kg(ga) * Kg(gb) - Kg(add(ga, gb))); });
    }
  }

  // QS2: conjugation by K and sigma
  for (const auto& entry : lattice) {
    const std::string na = entry.first;
    const std::vector<int> ga = entry.second;
    for (int i = 0; i <= last; ++i) {
      const int e = cd.pairing(ga, cd.alpha(i));
      const auto I = static_cast<std::size_t>(i);
      task("QS2 K(" + na + ") E" + idx(i) + " K(-" + na + ")", [&, ga, e, I] { return zero(Kg(ga) * E[I] * Kg(neg(ga)) - E[I] * fld.q_pow(e), Json{{"exponent", e}}); });
      task("QS2 K(" + na + ") F" + idx(i) + " K(-" + na + ")", [&, ga, e, I] { return zero(Kg(ga) * Fo[I] * Kg(neg(ga)) - Fo[I] * fld.q_pow(-e), Json{{"exponent", -e}}); });
    }
  }
  for (int i = 0; i <= last; ++i) {
    const F s = cd.root_parity(i) ? F(-1) : F(1);
    const auto I = static_cast<std::size_t>(i);
    task("QS2 sigma E" + idx(i) + " sigma", [&, s, I] { return zero(sigma * E[I] * sigma - E[I] * s); });
    task("QS2 sigma F" + idx(i) + " sigma", [&, s, I] { return zero(sigma * Fo[I] * sigma - Fo[I] * s); });
  }

  // QS3: [E_i, F_j] = delta_ij (K_i - K_i^{-1}) / (q_i - q_i^{-1})
  for (int i = 0; i <= last; ++i)
    for (int j = 0; j <= last; ++j) {
      const auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
      const int di = cd.d_coef(i);
      task("QS3 [E" + idx(i) + ",F" + idx(j) + "]", [&, I, J, di] {
        GOp<F> rhs{SparseMat<F>(id.m.rows(), id.m.cols()), 0};
        if (I == J) {
          F denom = fld.q_pow(di) - fld.q_pow(-di);
          rhs = (K[I] - Kinv[I]) * F(F(1) / denom);
        }
        return zero(super_bracket(E[I], Fo[J]) - rhs, Json{{"q_i", "q^" + idx(di)}});
      });
    }

  // QS4 / QS5 on E and F respectively
  for (int side = 0; side < 2; ++side) {
    const std::vector<GOp<F>>* Xp = side == 0 ? &E : &Fo;
    const std::string tag = side == 0 ? "QS4" : "QS5", L = side == 0 ? "E" : "F";
    auto weight = [&](int i) { return side == 0 ? cd.alpha(i) : neg(cd.alpha(i)); };
    for (int i = 0; i <= last; ++i)
      for (int j = i + 1; j <= last; ++j)
        if (cd.pairing(cd.alpha(i), cd.alpha(j)) == 0)
          task(tag + "(1) [" + L + idx(i) + "," + L + idx(j) + "]", [&, Xp, i, j] { return zero(super_bracket((*Xp)[at(i)], (*Xp)[at(j)])); });
    for (int i : {0, m})
      task(tag + "(2) " + L + idx(i) + "^2", [&, Xp, i] { return zero((*Xp)[at(i)] * (*Xp)[at(i)]); });
    if (cd.nprime() >= 3)
      for (int i = 1; i <= last; ++i) {
        if (i == m) continue;
        for (int j : {(i + last) % (last + 1), (i + 1) % (last + 1)}) {
          task(tag + "(3) " + L + idx(i) + "," + L + idx(j), [&, Xp, i, j] {
            const auto& X = *Xp;
            const F qq = fld.q_pow(1) + fld.q_pow(-1);
            const auto& Xi = X[at(i)];
            const auto& Xj = X[at(j)];
            return zero(Xi * Xi * Xj - Xi * Xj * Xi * qq + Xj * Xi * Xi);
          });
        }
      }
    if (m >= 2 && n >= 2) {
      // [[[X_a, X_b]], X_c]], X_b] with the deformed inner brackets and a plain outer superbracket
      const std::vector<std::tuple<std::string, int, int, int>> quartics = {
          {"(4)", m - 1, m, m + 1}, {"(4)", m + 1, m, m - 1}, {"(4')", last, 0, 1}, {"(4')", 1, 0, last}};
      for (const auto& [label, a, b, cc] : quartics) {
        const int e1 = cd.pairing(weight(a), weight(b));
        const int e2 = cd.pairing(add(weight(a), weight(b)), weight(cc));
        std::ostringstream ident;
        ident << "[[[" << L << a << "," << L << b << "]_{q^" << -e1 << "}," << L << cc << "]_{q^" << -e2 << "}," << L << b << "] = 0";
        const int A = a, B = b, C = cc;
        task(tag + label + " " + L + idx(a) + "," + L + idx(b) + "," + L + idx(cc), [&, Xp, A, B, C, e1, e2, text = ident.str()] {
          const auto& X = *Xp;
          auto inner = deformed_bracket(X[at(A)], X[at(B)], e1, fld);
          auto mid = deformed_bracket(inner, X[at(C)], e2, fld);
          return zero(super_bracket(mid, X[at(B)]), Json{{"identity", text}});
        });
      }
    }
  }
  return run_tasks(tasks);
}

}  // namespace

VerificationReport run_hecke_suite(int m, int n, int d) {
  require_d(d, 2);
  CartanDatum cd({m, n});
  VerificationReport rep;
  rep.suite = "hecke";
  rep.params = base_params(m, n, d);
  std::vector<SuperOp> R;
  for (int i = 1; i < d; ++i) R.push_back(rhat_slot(i, d, cd));
  const SuperOp I = SuperOp::identity(cd.dim(), d);
  std::vector<CheckTask> tasks;
  for (int i = 1; i < d; ++i) {
    const SuperOp* Ri = &R[static_cast<std::size_t>(i - 1)];
    tasks.push_back({"quadratic i=" + idx(i), [&I, Ri] { return check_zero("", (*Ri + I * RatFunc::q_pow(-1)) * (*Ri - I * RatFunc::q())); }});
    if (i + 1 < d) {
      const SuperOp* Rj = &R[static_cast<std::size_t>(i)];
      tasks.push_back({"braid i=" + idx(i), [Ri, Rj] { return compare_ops("", *Ri * *Rj * *Ri, *Rj * *Ri * *Rj); }});
    }
    for (int j = i + 2; j < d; ++j) {
      const SuperOp* Rj = &R[static_cast<std::size_t>(j - 1)];
      tasks.push_back({"far-commute i=" + idx(i) + " j=" + idx(j), [Ri, Rj] { return compare_ops("", *Ri * *Rj, *Rj * *Ri); }});
    }
  }
  rep.checks = run_tasks(tasks);
  return rep;
}

VerificationReport run_commuting_suite(int m, int n, int d) {
  require_d(d, 2);
  CartanDatum cd({m, n});
  VerificationReport rep;
  rep.suite = "commuting";
  rep.params = base_params(m, n, d);
  std::vector<SuperOp> R;
  for (int i = 1; i < d; ++i) R.push_back(rhat_slot(i, d, cd));
  std::vector<std::pair<std::string, SuperOp>> gens;
  for (const auto& g : finite_generators(cd)) gens.emplace_back(g.str(), rho_d(g, d, cd));
  std::vector<CheckTask> tasks;
  for (int i = 1; i < d; ++i)
    for (const auto& gen : gens) {
      const SuperOp* Ri = &R[static_cast<std::size_t>(i - 1)];
      const SuperOp* g = &gen.second;
      tasks.push_back({"[R" + idx(i) + "," + gen.first + "]", [Ri, g] { return compare_ops("", *Ri * *g, *g * *Ri); }});
    }
  rep.checks = run_tasks(tasks);
  return rep;
}

VerificationReport run_descent_suite(int m, int n, int d) {
  require_d(d, 2);
  CartanDatum cd({m, n});
  const SuperDim dim = cd.dim();
  VerificationReport rep;
  rep.suite = "descent";
  rep.params = base_params(m, n, d);
  std::vector<CheckTask> tasks;
  for (int i = 1; i < d; ++i) {
    tasks.push_back({"R" + idx(i) + " Y" + idx(i + 1) + "F = Y" + idx(i) + "F R" + idx(i), [&cd, i, d] {
                       SuperOp Ri = rhat_slot(i, d, cd);
                       return compare_ops("", Ri * y_f_shape(i + 1, d, cd), y_f_shape(i, d, cd) * Ri);
                     }});
    tasks.push_back({"Y" + idx(i + 1) + "E R" + idx(i) + " = R" + idx(i) + " Y" + idx(i) + "E", [&cd, i, d] {
                       SuperOp Ri = rhat_slot(i, d, cd);
                       return compare_ops("", y_e_shape(i + 1, d, cd) * Ri, Ri * y_e_shape(i, d, cd));
                     }});
  }
  // two-site kernels, tensor products read as plain Kronecker products
  const SuperOp I = SuperOp::identity(dim, 1), Rh = build_Rhat(cd);
  const SuperOp sigma = rho_site(GeneratorTag::Sigma(), cd), kpi = k_pi(cd);
  const SuperOp kpi_inv = rho_site(GeneratorTag::K(cd.alpha(0)), cd);
  const SuperOp e_pi = e_pi_product(cd);
  SuperOp f_pi = I;
  for (int k = 1; k <= cd.last_node(); ++k) f_pi = rho_site(GeneratorTag::F(k), cd) * f_pi;
  tasks.push_back({"kernel R(sigma x E_Pi) = (E_Pi x K_Pi)R", [=] { return compare_ops("", Rh * kron({sigma, e_pi}), kron({e_pi, kpi}) * Rh); }});
  tasks.push_back({"kernel (sigma K_Pi^-1 x F_Pi)R = R(F_Pi x 1)", [=] { return compare_ops("", kron({sigma * kpi_inv, f_pi}) * Rh, Rh * kron({f_pi, I})); }});
  rep.checks = run_tasks(tasks);
  return rep;
}

VerificationReport run_qs_affine_suite(int m, int n, const std::vector<Rational>& c, const QsOptions& opt) {
  const int d = static_cast<int>(c.size());
  require_d(d, 1);
  for (const auto& x : c)
    if (sgn(x) == 0) throw std::invalid_argument("evaluation parameters must be nonzero");
  VerificationReport rep;
  rep.suite = "qs-affine";
  if (m == n) {
    if (!opt.allow_m_equals_n)
      throw SuiteRefused("m = n = " + std::to_string(m) + " refused: the presentation checked here assumes m != n (pass allow-m-equals-n to run it anyway)");
    rep.incomplete = true;
    rep.note = "m = n: the additional relations of the m = n case are not checked";
  }
  if (m < 2 || n < 2) rep.note += std::string(rep.note.empty() ? "" : "; ") + "quartic relations apply only for m, n >= 2 and were skipped";
  CartanDatum cd({m, n});
  rep.params = base_params(m, n, d);
  Json cj = Json::array();
  for (const auto& x : c) cj.push_back(rational_str(x));
  rep.params["c"] = cj;
  if (opt.q0) {
    Field<Rational> fld{*opt.q0};
    if (*opt.q0 == 0 || *opt.q0 == 1 || *opt.q0 == -1) throw std::invalid_argument("q0 must avoid 0 and roots of unity");
    rep.params["q"] = fld.label();
    rep.checks = qs_checks<Rational>(cd, c, fld);
  } else {
    Field<RatFunc> fld;
    rep.params["q"] = fld.label();
    rep.checks = qs_checks<RatFunc>(cd, c, fld);
  }
  return rep;
}

VerificationReport run_hopf_suite(int m, int n) {
  CartanDatum cd({m, n});
  const SuperDim dim = cd.dim();
  VerificationReport rep;
  rep.suite = "hopf";
  rep.params = Json{{"m", m}, {"n", n}};
  const SuperOp R = build_R(cd);
  std::vector<GeneratorTag> gens = finite_generators(cd);
  for (int i = 1; i <= cd.nprime(); ++i) gens.push_back(GeneratorTag::K(cd.eps(i)));
  std::vector<CheckTask> tasks;
  for (const auto& g : gens) {
    tasks.push_back({"intertwine " + g.str(), [&cd, &R, g] {
                       SuperOp delta(cd.dim(), 2, 0), opp(cd.dim(), 2, 0);
                       for (const auto& t : coproduct_terms(g, cd)) {
                         delta += graded_tensor({t.a, t.b}) * t.coef;
                         const int s = (t.a.parity() & t.b.parity()) ? -1 : 1;
                         opp += graded_tensor({t.b, t.a}) * (t.coef * RatFunc(s));
                       }
                       return compare_ops("", opp * R, R * delta);
                     }});
  }
  const SuperOp I = SuperOp::identity(dim, 1);
  auto leg = [&](int which) {
    SuperOp out(dim, 3, 0);
    for (const auto& t : r_matrix_terms(cd)) {
      std::vector<SuperOp> f;
      if (which == 12) f = {t.a, t.b, I};
      if (which == 13) f = {t.a, I, t.b};
      if (which == 23) f = {I, t.a, t.b};
      out += graded_tensor(f) * t.coef;
    }
    return out;
  };
  tasks.push_back({"cocycle (Delta x id)R = R13 R23", [&cd, &leg, dim] {
                     auto r = compare_ops("", super_permutation(dim, {2, 0, 1}) * leg(13) * leg(23), rhat_slot(1, 3, cd) * rhat_slot(2, 3, cd));
                     r.info["identity"] = "P_{(12),3} R13 R23 = Rhat1 Rhat2";
                     return r;
                   }});
  tasks.push_back({"cocycle (id x Delta)R = R13 R12", [&cd, &leg, dim] {
                     auto r = compare_ops("", super_permutation(dim, {1, 2, 0}) * leg(13) * leg(12), rhat_slot(2, 3, cd) * rhat_slot(1, 3, cd));
                     r.info["identity"] = "P_{1,(23)} R13 R12 = Rhat2 Rhat1";
                     return r;
                   }});
  tasks.push_back({"Yang-Baxter R12 R13 R23 = R23 R13 R12", [&leg] { return compare_ops("", leg(12) * leg(13) * leg(23), leg(23) * leg(13) * leg(12)); }});
  rep.checks = run_tasks(tasks);
  return rep;
}

Json report_to_json(const VerificationReport& r, const std::string& tool_version) {
  Json j;
  j["tool_version"] = tool_version;
  j["params"] = r.params;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  j["checks"] = checks;
  j["overall"] = r.overall();
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace superdual
