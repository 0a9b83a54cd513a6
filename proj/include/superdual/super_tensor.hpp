#pragma once

#include "superdual/scalars.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace superdual {

/// Z/2-graded space of dimension (m|n); letters are 1-based, the first m are even.
struct SuperDim {
  int m = 1;
  int n = 1;

  int nprime() const { return m + n; }
  int parity(int letter) const { return letter <= m ? 0 : 1; }
  /// (g, l) = sum_i g_i l_i (-1)^{p(i)}
  int pairing(const std::vector<int>& g, const std::vector<int>& l) const;
  friend bool operator==(const SuperDim&, const SuperDim&) = default;
};

using Word = std::vector<int>;

/// n'^d; throws std::overflow_error past 2^31.
std::size_t space_size(const SuperDim& dim, int d);
/// Big-endian mixed radix: rank 0 is (1,...,1).
Word word_of(std::size_t rank, const SuperDim& dim, int d);
std::size_t rank_of(const Word& w, const SuperDim& dim);
int word_parity(const Word& w, const SuperDim& dim);
std::vector<int> word_weight(const Word& w, const SuperDim& dim);

template <class F>
class SparseMat {
 public:
  using Row = std::map<std::uint32_t, F>;

  SparseMat() = default;
  SparseMat(std::size_t r, std::size_t c) : ncols_(c), rows_(r) {}

  static SparseMat identity(std::size_t n) {
    SparseMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace(static_cast<std::uint32_t>(i), F(1));
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return ncols_; }
  const Row& row(std::size_t i) const { return rows_[i]; }

  F get(std::size_t r, std::size_t c) const {
    auto it = rows_[r].find(static_cast<std::uint32_t>(c));
    return it == rows_[r].end() ? F(0) : it->second;
  }
  void set(std::size_t r, std::size_t c, const F& v) {
    if (is_zero(v))
      rows_[r].erase(static_cast<std::uint32_t>(c));
    else
      rows_[r][static_cast<std::uint32_t>(c)] = v;
  }
  void add_to(std::size_t r, std::size_t c, const F& v) {
    if (is_zero(v)) return;
    auto [it, fresh] = rows_[r].try_emplace(static_cast<std::uint32_t>(c), v);
    if (!fresh) {
      it->second += v;
      if (is_zero(it->second)) rows_[r].erase(it);
    }
  }

  std::size_t nnz() const {
    std::size_t k = 0;
    for (const auto& r : rows_) k += r.size();
    return k;
  }
  bool is_zero_matrix() const {
    for (const auto& r : rows_)
      if (!r.empty()) return false;
    return true;
  }
  /// First stored entry in row-major order.
  std::optional<std::tuple<std::size_t, std::size_t, F>> first_nonzero() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!rows_[i].empty()) return std::tuple{i, std::size_t(rows_[i].begin()->first), rows_[i].begin()->second};
    return std::nullopt;
  }

  SparseMat& operator+=(const SparseMat& o) {
    check_same(o);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [c, v] : o.rows_[i]) add_to(i, c, v);
    return *this;
  }
  SparseMat& operator-=(const SparseMat& o) {
    check_same(o);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [c, v] : o.rows_[i]) add_to(i, c, -v);
    return *this;
  }
  SparseMat& operator*=(const F& s) {
    if (is_zero(s)) {
      for (auto& r : rows_) r.clear();
      return *this;
    }
    for (auto& r : rows_)
      for (auto& [c, v] : r) v *= s;
    return *this;
  }
  friend SparseMat operator+(SparseMat a, const SparseMat& b) { return a += b; }
  friend SparseMat operator-(SparseMat a, const SparseMat& b) { return a -= b; }
  friend SparseMat operator*(SparseMat a, const F& s) { return a *= s; }
  friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
    SparseMat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Row acc;
      for (const auto& [k, av] : a.rows_[i])
        for (const auto& [j, bv] : b.rows_[k]) {
          auto [it, fresh] = acc.try_emplace(j, av * bv);
          if (!fresh) it->second += av * bv;
        }
      for (auto it = acc.begin(); it != acc.end();) it = is_zero(it->second) ? acc.erase(it) : std::next(it);
      out.rows_[i] = std::move(acc);
    }
    return out;
  }
  friend bool operator==(const SparseMat& a, const SparseMat& b) { return a.ncols_ == b.ncols_ && a.rows_ == b.rows_; }

  template <class G, class Fn>
  SparseMat<G> map(Fn fn) const {
    SparseMat<G> out(rows(), cols());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [c, v] : rows_[i]) out.set(i, c, fn(v));
    return out;
  }

 private:
  void check_same(const SparseMat& o) const {
    if (o.rows() != rows() || o.cols() != cols()) throw std::invalid_argument("matrix shape mismatch in sum");
  }
  std::size_t ncols_ = 0;
  std::vector<Row> rows_;
};

inline constexpr int kMixedParity = -1;

/// Sparse operator on V^{(x)d} over Q(q) carrying a declared parity.
class SuperOp {
 public:
  SuperOp() = default;
  SuperOp(SuperDim dim, int d, int parity);

  static SuperOp identity(SuperDim dim, int d);
  /// 1-site matrix unit E_{i,j} scaled by s.
  static SuperOp unit(SuperDim dim, int i, int j, const RatFunc& s = RatFunc(1));
  static SuperOp diagonal(SuperDim dim, int d, const std::vector<RatFunc>& diag);
  /// Infers the parity from the entries; kMixedParity when inhomogeneous.
  static SuperOp from_matrix(SuperDim dim, int d, SparseMat<RatFunc> m);

  const SuperDim& dim() const { return dim_; }
  int d() const { return d_; }
  std::size_t size() const { return mat_.rows(); }
  int parity() const { return parity_; }
  bool homogeneous() const { return parity_ != kMixedParity; }
  const SparseMat<RatFunc>& mat() const { return mat_; }

  RatFunc get(std::size_t r, std::size_t c) const { return mat_.get(r, c); }
  void add_entry(std::size_t r, std::size_t c, const RatFunc& v) { mat_.add_to(r, c, v); }
  bool is_zero() const { return mat_.is_zero_matrix(); }
  std::size_t nnz() const { return mat_.nnz(); }
  /// True when every entry matches the declared parity.
  bool parity_consistent() const;
  /// Even and odd parts.
  std::pair<SuperOp, SuperOp> split_parity() const;

  SuperOp& operator+=(const SuperOp& o);
  SuperOp& operator-=(const SuperOp& o);
  SuperOp& operator*=(const RatFunc& s);
  friend SuperOp operator+(SuperOp a, const SuperOp& b) { return a += b; }
  friend SuperOp operator-(SuperOp a, const SuperOp& b) { return a -= b; }
  friend SuperOp operator*(SuperOp a, const RatFunc& s) { return a *= s; }
  friend SuperOp operator*(const RatFunc& s, SuperOp a) { return a *= s; }
  friend SuperOp operator*(const SuperOp& a, const SuperOp& b);
  friend bool operator==(const SuperOp& a, const SuperOp& b) { return a.dim_ == b.dim_ && a.mat_ == b.mat_; }

  /// Entrywise specialization at q = q0 (entries become constants).
  SuperOp specialize(const Rational& q0) const;
  SparseMat<Rational> specialize_matrix(const Rational& q0) const;

  struct Triplet {
    std::size_t row, col;
    std::string value;
  };
  std::vector<Triplet> triplets() const;

 private:
  void check_compatible(const SuperOp& o) const;
  SuperDim dim_;
  int d_ = 0;
  int parity_ = 0;
  SparseMat<RatFunc> mat_;
};

inline SuperOp compose(const SuperOp& a, const SuperOp& b) { return a * b; }

/// Koszul-signed tensor of homogeneous 1-site operators.
SuperOp graded_tensor(const std::vector<SuperOp>& ops);
/// Plain Kronecker product of 1-site operators (no signs).
SuperOp kron(const std::vector<SuperOp>& ops);
/// left^{(j-1)} (x) A (x) right^{(d-j)}, graded.
SuperOp slot_embed(const SuperOp& left, const SuperOp& a, const SuperOp& right, int j, int d);
/// 1^{(x)(first-1)} (x) X (x) 1^{...} for an even operator X on k consecutive sites.
SuperOp embed_even_block(const SuperOp& x, int first, int d);
/// Signed reordering of tensor factors: output slot k receives input slot order[k].
SuperOp super_permutation(SuperDim dim, const std::vector<int>& order);

SuperOp bracket_super(const SuperOp& a, const SuperOp& b);
/// AB - (-1)^{p(A)p(B)} q^{-(alpha,beta)} BA
SuperOp bracket_q(const SuperOp& a, const SuperOp& b, const std::vector<int>& alpha, const std::vector<int>& beta);
RatFunc supertrace(const SuperOp& a);

/// Mutation hook: while alive, graded_tensor drops all Koszul signs.
class KoszulSignsDisabled {
 public:
  KoszulSignsDisabled();
  ~KoszulSignsDisabled();
  KoszulSignsDisabled(const KoszulSignsDisabled&) = delete;
  KoszulSignsDisabled& operator=(const KoszulSignsDisabled&) = delete;
};
bool koszul_signs_enabled();

}  // namespace superdual
