#include "superdual/affine_hecke.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

namespace superdual {

// ------------------------------------------------------------ permutations

Perm perm_identity(int d) {
  Perm p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 1);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) r[x] = a[static_cast<std::size_t>(b[x] - 1)];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[static_cast<std::size_t>(p[x] - 1)] = static_cast<int>(x) + 1;
  return r;
}

Perm simple_reflection(int i, int d) {
  if (i < 1 || i >= d) throw std::out_of_range("simple reflection index out of range");
  Perm p = perm_identity(d);
  std::swap(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
  return p;
}

int perm_length(const Perm& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return inv;
}

namespace {
// l(s_i w) < l(w) iff i+1 appears before i in one-line notation of w
bool left_descent(const Perm& w, int i) {
  auto pos = [&](int v) { return std::find(w.begin(), w.end(), v) - w.begin(); };
  return pos(i + 1) < pos(i);
}
}  // namespace

std::vector<int> reduced_word(const Perm& p) {
  std::vector<int> word;
  Perm w = p;
  const int d = static_cast<int>(w.size());
  while (true) {
    int found = 0;
    for (int i = 1; i < d; ++i)
      if (left_descent(w, i)) {
        found = i;
        break;
      }
    if (!found) break;
    word.push_back(found);
    w = perm_compose(simple_reflection(found, d), w);
  }
  return word;
}

std::vector<Perm> all_perms(int d) {
  std::vector<Perm> out;
  Perm p = perm_identity(d);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// ------------------------------------------------------------------ atoms

std::string HeckeAtom::str() const {
  switch (kind) {
    case Kind::T: return "T" + std::to_string(index);
    case Kind::Tinv: return "T" + std::to_string(index) + "^-1";
    case Kind::Y: return "y" + std::to_string(index);
    case Kind::Yinv: return "y" + std::to_string(index) + "^-1";
  }
  return "?";
}

HeckeWord parse_hecke_word(const std::string& s, int d) {
  static const std::regex tok(R"(([Tty])(\d+)(\^(-?1))?)");
  std::string cleaned = s;
  std::replace(cleaned.begin(), cleaned.end(), '*', ' ');
  std::istringstream is(cleaned);
  std::string t;
  HeckeWord w;
  while (is >> t) {
    std::smatch m;
    if (!std::regex_match(t, m, tok)) throw std::invalid_argument("bad atom '" + t + "' (use Ti, Ti^-1, yj, yj^-1)");
    int idx = std::stoi(m[2].str());
    bool inv = m[4].matched && m[4].str() == "-1";
    char c = m[1].str()[0];
    if (c == 'y') {
      if (idx < 1 || idx > d) throw std::invalid_argument("y index out of range in '" + t + "'");
      w.push_back(inv ? HeckeAtom::Yinv(idx) : HeckeAtom::Y(idx));
    } else {
      if (idx < 1 || idx >= d) throw std::invalid_argument("T index out of range in '" + t + "'");
      w.push_back(inv ? HeckeAtom::Tinv(idx) : HeckeAtom::T(idx));
    }
  }
  return w;
}

// --------------------------------------------------------------- HeckeElt

HeckeElt HeckeElt::one(int d) { return Tw(perm_identity(d)); }

HeckeElt HeckeElt::Tw(const Perm& w, const RatFunc& c) {
  HeckeElt h(static_cast<int>(w.size()));
  h.add_term(std::vector<int>(w.size(), 0), w, c);
  return h;
}

HeckeElt HeckeElt::y_mono(const std::vector<int>& mu, const RatFunc& c) {
  HeckeElt h(static_cast<int>(mu.size()));
  h.add_term(mu, perm_identity(static_cast<int>(mu.size())), c);
  return h;
}

HeckeElt HeckeElt::atom(const HeckeAtom& a, int d) {
  switch (a.kind) {
    case HeckeAtom::Kind::T:
      return Tw(simple_reflection(a.index, d));
    case HeckeAtom::Kind::Tinv:
      // T^{-1} = T - (q - q^{-1})
      return Tw(simple_reflection(a.index, d)) - one(d) * q_minus_qinv();
    case HeckeAtom::Kind::Y:
    case HeckeAtom::Kind::Yinv: {
      if (a.index < 1 || a.index > d) throw std::out_of_range("y index out of range");
      std::vector<int> mu(static_cast<std::size_t>(d), 0);
      mu[static_cast<std::size_t>(a.index - 1)] = a.kind == HeckeAtom::Kind::Y ? 1 : -1;
      return y_mono(mu);
    }
  }
  throw std::logic_error("unreachable");
}

bool HeckeElt::y_free() const {
  for (const auto& [k, v] : terms_)
    for (int e : k.first)
      if (e) return false;
  return true;
}

RatFunc HeckeElt::coeff(const std::vector<int>& mu, const Perm& w) const {
  auto it = terms_.find({mu, w});
  return it == terms_.end() ? RatFunc() : it->second;
}

void HeckeElt::add_term(const std::vector<int>& mu, const Perm& w, const RatFunc& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(mu.size()) != d_ || static_cast<int>(w.size()) != d_) throw std::invalid_argument("Hecke term rank mismatch");
  auto [it, fresh] = terms_.try_emplace({mu, w}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
  if (o.d_ != d_) throw std::invalid_argument("Hecke rank mismatch");
  for (const auto& [k, v] : o.terms_) add_term(k.first, k.second, v);
  return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
  if (o.d_ != d_) throw std::invalid_argument("Hecke rank mismatch");
  for (const auto& [k, v] : o.terms_) add_term(k.first, k.second, -v);
  return *this;
}

HeckeElt& HeckeElt::operator*=(const RatFunc& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= s;
  return *this;
}

namespace {

using FinElt = std::map<Perm, RatFunc>;

void fin_add(FinElt& e, const Perm& w, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = e.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }
}

// T_i * (sum c_x T_x)
FinElt left_mul_T(int i, const FinElt& e) {
  FinElt out;
  for (const auto& [x, c] : e) {
    Perm sx = perm_compose(simple_reflection(i, static_cast<int>(x.size())), x);
    fin_add(out, sx, c);
    if (left_descent(x, i)) fin_add(out, x, c * q_minus_qinv());
  }
  return out;
}

// T_u * T_v
FinElt fin_mul(const Perm& u, const Perm& v) {
  FinElt e{{v, RatFunc(1)}};
  auto word = reduced_word(u);
  for (auto it = word.rbegin(); it != word.rend(); ++it) e = left_mul_T(*it, e);
  return e;
}

struct TyTerm {
  RatFunc c;
  int a, b;  // exponents of y_i, y_{i+1}
  bool has_T;
};

// T_i y_i^a y_{i+1}^b = sum c y_i^a' y_{i+1}^b' T_i^{has_T}
std::vector<TyTerm> t_times_pair(int a, int b) {
  thread_local std::map<std::pair<int, int>, std::vector<TyTerm>> cache;
  auto key = std::make_pair(a, b);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const RatFunc xi = q_minus_qinv();
  std::vector<TyTerm> out;
  auto shift = [&](const std::vector<TyTerm>& in, int da, int db) {
    for (auto t : in) {
      t.a += da;
      t.b += db;
      out.push_back(t);
    }
  };
  if (a == 0 && b == 0) {
    out.push_back({RatFunc(1), 0, 0, true});
  } else if (b > 0) {
    // T z = y T + xi z
    shift(t_times_pair(a, b - 1), 1, 0);
    out.push_back({xi, a, b, false});
  } else if (b < 0) {
    // T z^-1 = y^-1 T - xi y^-1
    shift(t_times_pair(a, b + 1), -1, 0);
    out.push_back({-xi, a - 1, b + 1, false});
  } else if (a > 0) {
    // T y = z T - xi z
    shift(t_times_pair(a - 1, 0), 0, 1);
    out.push_back({-xi, a - 1, 1, false});
  } else {
    // T y^-1 = z^-1 T + xi y^-1
    shift(t_times_pair(a + 1, 0), 0, -1);
    out.push_back({xi, a, 0, false});
  }
  // merge like terms
  std::map<std::tuple<int, int, bool>, RatFunc> merged;
  for (const auto& t : out) {
    auto [it, fresh] = merged.try_emplace({t.a, t.b, t.has_T}, t.c);
    if (!fresh) it->second += t.c;
  }
  std::vector<TyTerm> res;
  for (const auto& [k, c] : merged)
    if (!c.is_zero()) res.push_back({c, std::get<0>(k), std::get<1>(k), std::get<2>(k)});
  cache.emplace(key, res);
  return res;
}

// T_w y^nu = sum c y^mu T_x
std::map<std::pair<std::vector<int>, Perm>, RatFunc> tw_times_y(const Perm& w, const std::vector<int>& nu) {
  const int d = static_cast<int>(w.size());
  std::map<std::pair<std::vector<int>, Perm>, RatFunc> state{{{nu, perm_identity(d)}, RatFunc(1)}};
  auto word = reduced_word(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int i = *it;
    std::map<std::pair<std::vector<int>, Perm>, RatFunc> next;
    for (const auto& [key, c] : state) {
      const auto& [mu, x] = key;
      for (const auto& t : t_times_pair(mu[static_cast<std::size_t>(i - 1)], mu[static_cast<std::size_t>(i)])) {
        std::vector<int> mu2 = mu;
        mu2[static_cast<std::size_t>(i - 1)] = t.a;
        mu2[static_cast<std::size_t>(i)] = t.b;
        FinElt xs = t.has_T ? left_mul_T(i, FinElt{{x, RatFunc(1)}}) : FinElt{{x, RatFunc(1)}};
        for (const auto& [x2, c2] : xs) {
          RatFunc v = c * t.c * c2;
          auto [jt, fresh] = next.try_emplace({mu2, x2}, v);
          if (!fresh) {
            jt->second += v;
            if (jt->second.is_zero()) next.erase(jt);
          }
        }
      }
    }
    state = std::move(next);
  }
  return state;
}

}  // namespace

HeckeElt operator*(const HeckeElt& a, const HeckeElt& b) {
  if (a.d_ != b.d_) throw std::invalid_argument("Hecke rank mismatch");
  HeckeElt out(a.d_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      for (const auto& [kp, cp] : tw_times_y(ka.second, kb.first)) {
        std::vector<int> mu = ka.first;
        for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += kp.first[j];
        for (const auto& [z, cz] : fin_mul(kp.second, kb.second)) out.add_term(mu, z, ca * cb * cp * cz);
      }
    }
  }
  return out;
}

HeckeElt finite_hecke_mul(const HeckeElt& a, const HeckeElt& b) {
  if (!a.y_free() || !b.y_free()) throw std::invalid_argument("finite_hecke_mul needs y-free inputs");
  return a * b;
}

HeckeElt bernstein_nf(const HeckeWord& word, int d) {
  HeckeElt h = HeckeElt::one(d);
  for (const auto& a : word) h = h * HeckeElt::atom(a, d);
  return h;
}

std::string HeckeElt::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ") * y^(";
    for (std::size_t j = 0; j < k.first.size(); ++j) os << (j ? "," : "") << k.first[j];
    os << ") * T[";
    for (std::size_t j = 0; j < k.second.size(); ++j) os << (j ? "," : "") << k.second[j];
    os << "]";
  }
  return os.str();
}

// ------------------------------------------------------------------- ev_z

HeckeElt ev_z(const HeckeElt& h, const Rational& z) {
  if (sgn(z) == 0) throw std::invalid_argument("ev_z needs z != 0");
  const int d = h.d();
  auto image = [&](int j, bool inverse) {
    HeckeElt e = HeckeElt::one(d) * RatFunc(inverse ? Rational(1 / z) : z);
    HeckeAtom::Kind k = inverse ? HeckeAtom::Kind::Tinv : HeckeAtom::Kind::T;
    for (int i = j - 1; i >= 1; --i) e = e * HeckeElt::atom({k, i}, d);
    for (int i = 1; i <= j - 1; ++i) e = e * HeckeElt::atom({k, i}, d);
    return e;
  };
  HeckeElt out(d);
  for (const auto& [key, c] : h.terms()) {
    HeckeElt t = HeckeElt::one(d) * c;
    for (int j = 1; j <= d; ++j) {
      int e = key.first[static_cast<std::size_t>(j - 1)];
      HeckeElt f = image(j, e < 0);
      for (int r = 0; r < std::abs(e); ++r) t = t * f;
    }
    out += t * HeckeElt::Tw(key.second);
  }
  return out;
}

// -------------------------------------------------------------------- M_c

McModule::McModule(std::vector<Rational> c) : d_(static_cast<int>(c.size())), c_(std::move(c)) {
  if (d_ < 1) throw std::invalid_argument("M_c needs d >= 1");
  for (const auto& x : c_)
    if (sgn(x) == 0) throw std::invalid_argument("M_c parameters must be nonzero");
  basis_ = all_perms(d_);
  for (std::size_t k = 0; k < basis_.size(); ++k) index_[basis_[k]] = k;
}

McModule::Vec McModule::unit_vector(const Perm& w) const {
  Vec v(dim());
  v[index_of(w)] = RatFunc(1);
  return v;
}

McModule::Vec McModule::reduce(const HeckeElt& h) const {
  Vec v(dim());
  for (const auto& [key, c] : h.terms()) {
    Rational val(1);
    for (int j = 0; j < d_; ++j) {
      int e = key.first[static_cast<std::size_t>(j)];
      const Rational& cj = c_[static_cast<std::size_t>(j)];
      for (int r = 0; r < std::abs(e); ++r) val *= (e > 0 ? cj : Rational(1 / cj));
    }
    v[index_of(key.second)] += c * RatFunc(val);
  }
  return v;
}

HeckeElt McModule::as_element(const Vec& m) const {
  HeckeElt h(d_);
  for (std::size_t k = 0; k < dim(); ++k) h.add_term(std::vector<int>(static_cast<std::size_t>(d_), 0), basis_[k], m[k]);
  return h;
}

McModule::Vec McModule::right_action(const Vec& m, const HeckeAtom& g) const {
  return reduce(as_element(m) * HeckeElt::atom(g, d_));
}

SparseMat<RatFunc> McModule::matrix(const HeckeAtom& g) const {
  SparseMat<RatFunc> M(dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    Vec col = reduce(HeckeElt::Tw(basis_[k]) * HeckeElt::atom(g, d_));
    for (std::size_t r = 0; r < dim(); ++r) M.set(r, k, col[r]);
  }
  return M;
}

SparseMat<RatFunc> McModule::word_matrix(const HeckeWord& w) const {
  SparseMat<RatFunc> M = SparseMat<RatFunc>::identity(dim());
  for (const auto& a : w) M = matrix(a) * M;
  return M;
}

// ------------------------------------------------------------------- pi_d

SuperOp pi_d(int i, int d, const CartanDatum& cd) { return rhat_slot(i, d, cd); }

SuperOp pi_perm(const Perm& w, const CartanDatum& cd) {
  const int d = static_cast<int>(w.size());
  SuperOp out = SuperOp::identity(cd.dim(), d);
  for (int i : reduced_word(w)) out = out * pi_d(i, d, cd);
  return out;
}

SuperOp pi_element(const HeckeElt& h, const CartanDatum& cd) {
  if (!h.y_free()) throw std::invalid_argument("pi_element needs a y-free element");
  SuperOp out(cd.dim(), h.d(), 0);
  for (const auto& [key, c] : h.terms()) out += pi_perm(key.second, cd) * c;
  return out;
}

}  // namespace superdual
