#include "superdual/super_tensor.hpp"

#include <atomic>
#include <limits>

namespace superdual {

namespace {
std::atomic<int> g_koszul_disabled{0};
}

KoszulSignsDisabled::KoszulSignsDisabled() { ++g_koszul_disabled; }
KoszulSignsDisabled::~KoszulSignsDisabled() { --g_koszul_disabled; }
bool koszul_signs_enabled() { return g_koszul_disabled.load() == 0; }

int SuperDim::pairing(const std::vector<int>& g, const std::vector<int>& l) const {
  int s = 0;
  for (int i = 0; i < nprime(); ++i) s += g[static_cast<std::size_t>(i)] * l[static_cast<std::size_t>(i)] * (parity(i + 1) ? -1 : 1);
  return s;
}

std::size_t space_size(const SuperDim& dim, int d) {
  std::size_t s = 1;
  for (int k = 0; k < d; ++k) {
    s *= static_cast<std::size_t>(dim.nprime());
    if (s > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
      throw std::overflow_error("tensor power too large");
  }
  return s;
}

Word word_of(std::size_t rank, const SuperDim& dim, int d) {
  if (rank >= space_size(dim, d)) throw std::out_of_range("word rank out of range");
  Word w(static_cast<std::size_t>(d));
  auto np = static_cast<std::size_t>(dim.nprime());
  for (int k = d - 1; k >= 0; --k) {
    w[static_cast<std::size_t>(k)] = static_cast<int>(rank % np) + 1;
    rank /= np;
  }
  return w;
}

std::size_t rank_of(const Word& w, const SuperDim& dim) {
  std::size_t r = 0;
  for (int x : w) {
    if (x < 1 || x > dim.nprime()) throw std::out_of_range("letter out of range");
    r = r * static_cast<std::size_t>(dim.nprime()) + static_cast<std::size_t>(x - 1);
  }
  return r;
}

int word_parity(const Word& w, const SuperDim& dim) {
  int p = 0;
  for (int x : w) p ^= dim.parity(x);
  return p;
}

std::vector<int> word_weight(const Word& w, const SuperDim& dim) {
  std::vector<int> wt(static_cast<std::size_t>(dim.nprime()), 0);
  for (int x : w) ++wt[static_cast<std::size_t>(x - 1)];
  return wt;
}

// ------------------------------------------------------------------ SuperOp

SuperOp::SuperOp(SuperDim dim, int d, int parity) : dim_(dim), d_(d), parity_(parity) {
  auto n = space_size(dim, d);
  mat_ = SparseMat<RatFunc>(n, n);
}

SuperOp SuperOp::identity(SuperDim dim, int d) {
  SuperOp op(dim, d, 0);
  op.mat_ = SparseMat<RatFunc>::identity(op.size());
  return op;
}

SuperOp SuperOp::unit(SuperDim dim, int i, int j, const RatFunc& s) {
  if (i < 1 || j < 1 || i > dim.nprime() || j > dim.nprime()) throw std::out_of_range("matrix unit index out of range");
  SuperOp op(dim, 1, dim.parity(i) ^ dim.parity(j));
  op.mat_.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), s);
  return op;
}

SuperOp SuperOp::diagonal(SuperDim dim, int d, const std::vector<RatFunc>& diag) {
  SuperOp op(dim, d, 0);
  if (diag.size() != op.size()) throw std::invalid_argument("diagonal length mismatch");
  for (std::size_t i = 0; i < diag.size(); ++i) op.mat_.set(i, i, diag[i]);
  return op;
}

SuperOp SuperOp::from_matrix(SuperDim dim, int d, SparseMat<RatFunc> m) {
  SuperOp op(dim, d, 0);
  if (m.rows() != op.size() || m.cols() != op.size()) throw std::invalid_argument("matrix shape mismatch");
  op.mat_ = std::move(m);
  auto split = op.split_parity();
  if (!split.first.is_zero() && !split.second.is_zero())
    op.parity_ = kMixedParity;
  else if (!split.second.is_zero())
    op.parity_ = 1;
  return op;
}

bool SuperOp::parity_consistent() const {
  if (parity_ == kMixedParity) return true;
  for (std::size_t r = 0; r < size(); ++r) {
    int pr = word_parity(word_of(r, dim_, d_), dim_);
    for (const auto& [c, v] : mat_.row(r))
      if ((pr ^ word_parity(word_of(c, dim_, d_), dim_)) != parity_) return false;
  }
  return true;
}

std::pair<SuperOp, SuperOp> SuperOp::split_parity() const {
  SuperOp ev(dim_, d_, 0), od(dim_, d_, 1);
  std::vector<int> par(size());
  for (std::size_t r = 0; r < size(); ++r) par[r] = word_parity(word_of(r, dim_, d_), dim_);
  for (std::size_t r = 0; r < size(); ++r)
    for (const auto& [c, v] : mat_.row(r)) (par[r] == par[c] ? ev : od).mat_.set(r, c, v);
  return {ev, od};
}

void SuperOp::check_compatible(const SuperOp& o) const {
  if (!(dim_ == o.dim_) || d_ != o.d_) throw std::invalid_argument("operator shape mismatch");
}

namespace {
int sum_parity(const SuperOp& a, const SuperOp& b) {
  if (a.is_zero()) return b.parity();
  if (b.is_zero()) return a.parity();
  return a.parity() == b.parity() ? a.parity() : kMixedParity;
}
}  // namespace

SuperOp& SuperOp::operator+=(const SuperOp& o) {
  check_compatible(o);
  parity_ = sum_parity(*this, o);
  mat_ += o.mat_;
  return *this;
}

SuperOp& SuperOp::operator-=(const SuperOp& o) {
  check_compatible(o);
  parity_ = sum_parity(*this, o);
  mat_ -= o.mat_;
  return *this;
}

SuperOp& SuperOp::operator*=(const RatFunc& s) {
  mat_ *= s;
  return *this;
}

SuperOp operator*(const SuperOp& a, const SuperOp& b) {
  a.check_compatible(b);
  int p = (a.homogeneous() && b.homogeneous()) ? (a.parity_ ^ b.parity_) : kMixedParity;
  SuperOp out(a.dim_, a.d_, p);
  out.mat_ = a.mat_ * b.mat_;
  return out;
}

SuperOp SuperOp::specialize(const Rational& q0) const {
  SuperOp out(dim_, d_, parity_);
  out.mat_ = mat_.map<RatFunc>([&](const RatFunc& x) { return RatFunc(x.specialize(q0)); });
  return out;
}

SparseMat<Rational> SuperOp::specialize_matrix(const Rational& q0) const {
  return mat_.map<Rational>([&](const RatFunc& x) { return x.specialize(q0); });
}

std::vector<SuperOp::Triplet> SuperOp::triplets() const {
  std::vector<Triplet> out;
  for (std::size_t r = 0; r < size(); ++r)
    for (const auto& [c, v] : mat_.row(r)) out.push_back({r, c, v.str()});
  return out;
}

// ------------------------------------------------------------- tensor ops

namespace {

struct ColEntries {
  std::vector<std::vector<std::pair<int, RatFunc>>> cols;  // per input letter (0-based)
};

ColEntries column_view(const SuperOp& a) {
  if (a.d() != 1) throw std::invalid_argument("tensor factor must be a 1-site operator");
  ColEntries ce;
  ce.cols.resize(a.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (const auto& [c, v] : a.mat().row(r)) ce.cols[c].emplace_back(static_cast<int>(r), v);
  return ce;
}

SuperOp tensor_impl(const std::vector<SuperOp>& ops, bool graded) {
  if (ops.empty()) throw std::invalid_argument("empty tensor product");
  const SuperDim dim = ops[0].dim();
  const int d = static_cast<int>(ops.size());
  int total_parity = 0;
  std::vector<int> par;
  std::vector<ColEntries> views;
  for (const auto& op : ops) {
    if (!(op.dim() == dim)) throw std::invalid_argument("tensor factors must share the super dimension");
    if (graded && !op.homogeneous()) throw std::invalid_argument("graded_tensor needs homogeneous factors: split the operator by parity first");
    par.push_back(op.homogeneous() ? op.parity() : 0);
    total_parity ^= par.back();
    views.push_back(column_view(op));
  }
  bool signs = graded && koszul_signs_enabled();
  bool any_mixed = false;
  for (const auto& op : ops) any_mixed |= !op.homogeneous();
  SuperOp out(dim, d, any_mixed ? kMixedParity : total_parity);
  const std::size_t N = out.size();
  const auto np = static_cast<std::size_t>(dim.nprime());
  std::vector<std::pair<std::size_t, RatFunc>> cur, next;
  for (std::size_t col = 0; col < N; ++col) {
    Word w = word_of(col, dim, d);
    int sign = 1, acc = 0;
    if (signs)
      for (int k = 0; k < d; ++k) {
        if (par[static_cast<std::size_t>(k)] && (acc & 1)) sign = -sign;
        acc += dim.parity(w[static_cast<std::size_t>(k)]);
      }
    cur.assign(1, {0, RatFunc(sign)});
    for (int k = 0; k < d && !cur.empty(); ++k) {
      next.clear();
      const auto& entries = views[static_cast<std::size_t>(k)].cols[static_cast<std::size_t>(w[static_cast<std::size_t>(k)] - 1)];
      for (const auto& [pre, cf] : cur)
        for (const auto& [r, v] : entries) next.emplace_back(pre * np + static_cast<std::size_t>(r), cf * v);
      std::swap(cur, next);
    }
    for (const auto& [row, v] : cur) out.add_entry(row, col, v);
  }
  return out;
}

}  // namespace

SuperOp graded_tensor(const std::vector<SuperOp>& ops) { return tensor_impl(ops, true); }
SuperOp kron(const std::vector<SuperOp>& ops) { return tensor_impl(ops, false); }

SuperOp slot_embed(const SuperOp& left, const SuperOp& a, const SuperOp& right, int j, int d) {
  if (j < 1 || j > d) throw std::out_of_range("slot index out of range");
  std::vector<SuperOp> ops;
  for (int k = 1; k < j; ++k) ops.push_back(left);
  ops.push_back(a);
  for (int k = j + 1; k <= d; ++k) ops.push_back(right);
  return graded_tensor(ops);
}

SuperOp embed_even_block(const SuperOp& x, int first, int d) {
  if (x.parity() != 0) throw std::invalid_argument("block embedding needs an even operator");
  const int k = x.d();
  if (first < 1 || first + k - 1 > d) throw std::out_of_range("block position out of range");
  const SuperDim dim = x.dim();
  SuperOp out(dim, d, 0);
  const auto np = static_cast<std::size_t>(dim.nprime());
  std::size_t inner = 1, tail = 1;
  for (int i = 0; i < k; ++i) inner *= np;
  for (int i = first + k; i <= d; ++i) tail *= np;
  const std::size_t head = out.size() / (inner * tail);
  for (std::size_t h = 0; h < head; ++h)
    for (std::size_t r = 0; r < inner; ++r)
      for (const auto& [c, v] : x.mat().row(r))
        for (std::size_t t = 0; t < tail; ++t) out.add_entry((h * inner + r) * tail + t, (h * inner + c) * tail + t, v);
  return out;
}

SuperOp super_permutation(SuperDim dim, const std::vector<int>& order) {
  const int d = static_cast<int>(order.size());
  SuperOp out(dim, d, 0);
  for (std::size_t col = 0; col < out.size(); ++col) {
    Word w = word_of(col, dim, d);
    Word o(w.size());
    int sign = 1;
    for (int k = 0; k < d; ++k) o[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
    // every pair of input slots whose relative order flips contributes a Koszul sign
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        int sa = order[static_cast<std::size_t>(a)], sb = order[static_cast<std::size_t>(b)];
        if (sa > sb && dim.parity(w[static_cast<std::size_t>(sa)]) && dim.parity(w[static_cast<std::size_t>(sb)])) sign = -sign;
      }
    out.add_entry(rank_of(o, dim), col, RatFunc(sign));
  }
  return out;
}

SuperOp bracket_super(const SuperOp& a, const SuperOp& b) {
  if (!a.homogeneous() || !b.homogeneous()) throw std::invalid_argument("bracket needs homogeneous operators");
  SuperOp ab = a * b, ba = b * a;
  return (a.parity() & b.parity()) ? ab + ba : ab - ba;
}

SuperOp bracket_q(const SuperOp& a, const SuperOp& b, const std::vector<int>& alpha, const std::vector<int>& beta) {
  if (!a.homogeneous() || !b.homogeneous()) throw std::invalid_argument("bracket needs homogeneous operators");
  RatFunc s = RatFunc::q_pow(-a.dim().pairing(alpha, beta));
  if (a.parity() & b.parity()) s = -s;
  return a * b - (b * a) * s;
}

RatFunc supertrace(const SuperOp& a) {
  RatFunc t;
  for (std::size_t r = 0; r < a.size(); ++r) {
    RatFunc v = a.get(r, r);
    if (v.is_zero()) continue;
    if (word_parity(word_of(r, a.dim(), a.d()), a.dim()))
      t -= v;
    else
      t += v;
  }
  return t;
}

}  // namespace superdual
