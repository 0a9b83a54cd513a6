#pragma once

#include "superdual/super_tensor.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace superdual {

enum class Certification { exact, probabilistic };
std::string certification_str(Certification c);

struct SpecPolicy {
  enum class Mode { automatic, symbolic, specialized };
  Mode mode = Mode::automatic;
  /// Sample points for specialized mode; poles are skipped.
  std::vector<Rational> samples{Rational(5, 3), Rational(7, 2), Rational(-4, 3)};
  /// Automatic mode stays symbolic up to this many stored entries.
  std::size_t symbolic_limit = 40000;

  static SpecPolicy symbolic();
  static SpecPolicy specialized(std::vector<Rational> q0s);
  /// Resolved mode for a system with `entries` stored entries.
  bool use_symbolic(std::size_t entries) const;
  std::string str() const;
};

template <class F>
using SparseVec = std::map<std::uint32_t, F>;

/// Rows kept in semi-echelon form: each row has leading entry 1 at its pivot column,
/// and no other row carries a nonzero in that pivot column below its own pivot.
template <class F>
class EchelonBasis {
 public:
  std::size_t rank() const { return rows_.size(); }
  const std::map<std::uint32_t, SparseVec<F>>& rows() const { return rows_; }

  /// Reduces v against the stored rows in place.
  void reduce(SparseVec<F>& v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto pr = rows_.find(it->first);
      if (pr == rows_.end()) {
        ++it;
        continue;
      }
      const std::uint32_t col = it->first;
      const F factor = it->second;
      for (const auto& [c, x] : pr->second) {
        F delta = factor * x;
        auto [jt, fresh] = v.try_emplace(c, -delta);
        if (!fresh) {
          jt->second -= delta;
          if (is_zero(jt->second)) v.erase(jt);
        }
      }
      it = v.upper_bound(col);
    }
  }

  /// Adds v to the span; returns false when v was already in it.
  bool insert(SparseVec<F> v) {
    reduce(v);
    if (v.empty()) return false;
    auto lead = v.begin();
    const std::uint32_t col = lead->first;
    const F inv = F(1) / lead->second;
    for (auto& [c, x] : v) x = x * inv;
    // keep earlier rows free of the new pivot column
    for (auto& [pc, row] : rows_) {
      auto jt = row.find(col);
      if (jt == row.end()) continue;
      const F factor = jt->second;
      for (const auto& [c, x] : v) {
        F delta = factor * x;
        auto [kt, fresh] = row.try_emplace(c, -delta);
        if (!fresh) {
          kt->second -= delta;
          if (is_zero(kt->second)) row.erase(kt);
        }
      }
    }
    rows_.emplace(col, std::move(v));
    return true;
  }

  bool contains(SparseVec<F> v) const {
    reduce(v);
    return v.empty();
  }

 private:
  std::map<std::uint32_t, SparseVec<F>> rows_;
};

template <class F>
struct RankKernel {
  std::size_t rank = 0;
  std::vector<SparseVec<F>> kernel;
};

/// Gauss-Jordan elimination; rows enter sparsest first, ties broken by entry size.
template <class F>
RankKernel<F> rank_kernel_exact(const SparseMat<F>& a) {
  std::vector<std::size_t> order(a.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto row_weight = [&](std::size_t i) {
    std::size_t w = 0;
    for (const auto& [c, x] : a.row(i)) w += pivot_weight(x);
    return w;
  };
  std::vector<std::pair<std::size_t, std::size_t>> key(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) key[i] = {a.row(i).size(), row_weight(i)};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key[x] < key[y]; });

  EchelonBasis<F> eb;
  for (std::size_t i : order)
    if (!a.row(i).empty()) eb.insert(SparseVec<F>(a.row(i).begin(), a.row(i).end()));

  RankKernel<F> out;
  out.rank = eb.rank();
  for (std::uint32_t free = 0; free < a.cols(); ++free) {
    if (eb.rows().count(free)) continue;
    SparseVec<F> v;
    v.emplace(free, F(1));
    for (const auto& [pc, row] : eb.rows()) {
      auto it = row.find(free);
      if (it != row.end()) v.emplace(pc, -it->second);
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

template <class F>
SparseVec<F> mat_vec(const SparseMat<F>& a, const SparseVec<F>& v) {
  SparseVec<F> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    F acc(0);
    for (const auto& [c, x] : a.row(i)) {
      auto it = v.find(c);
      if (it != v.end()) acc += x * it->second;
    }
    if (!is_zero(acc)) out.emplace(static_cast<std::uint32_t>(i), acc);
  }
  return out;
}

/// Row-major flattening of a square matrix into one vector.
template <class F>
SparseVec<F> flatten(const SparseMat<F>& a) {
  SparseVec<F> v;
  const auto n = static_cast<std::uint32_t>(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& [c, x] : a.row(i)) v.emplace(static_cast<std::uint32_t>(i) * n + c, x);
  return v;
}

template <class F>
SparseMat<F> unflatten(const SparseVec<F>& v, std::size_t n) {
  SparseMat<F> a(n, n);
  for (const auto& [k, x] : v) a.set(k / n, k % n, x);
  return a;
}

template <class F>
std::size_t span_dim_exact(const std::vector<SparseMat<F>>& ops) {
  EchelonBasis<F> eb;
  for (const auto& op : ops) eb.insert(flatten(op));
  return eb.rank();
}

/// Dimension of the unital algebra generated by `gens`, closing under left multiplication.
template <class F>
std::size_t generated_algebra_dim_exact(const std::vector<SparseMat<F>>& gens) {
  if (gens.empty()) return 0;
  const std::size_t n = gens.front().rows();
  EchelonBasis<F> eb;
  std::vector<SparseMat<F>> frontier;
  auto push = [&](const SparseMat<F>& x) {
    if (eb.insert(flatten(x))) frontier.push_back(x);
  };
  push(SparseMat<F>::identity(n));
  for (const auto& g : gens) push(g);
  // the whole matrix algebra cannot grow further
  while (!frontier.empty() && eb.rank() < n * n) {
    auto x = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& g : gens) push(g * x);
  }
  return eb.rank();
}

/// Unique solution of a x = b, nullopt when inconsistent; throws when a has a kernel.
template <class F>
std::optional<SparseVec<F>> solve_unique(const SparseMat<F>& a, const SparseVec<F>& b) {
  const auto last = static_cast<std::uint32_t>(a.cols());
  EchelonBasis<F> eb;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    SparseVec<F> row(a.row(i).begin(), a.row(i).end());
    auto it = b.find(static_cast<std::uint32_t>(i));
    if (it != b.end()) row.emplace(last, it->second);
    if (!row.empty()) eb.insert(std::move(row));
  }
  if (eb.rows().count(last)) return std::nullopt;
  if (eb.rank() != a.cols()) throw std::domain_error("linear system has a nontrivial kernel");
  SparseVec<F> x;
  for (const auto& [p, row] : eb.rows()) {
    auto it = row.find(last);
    if (it != row.end()) x.emplace(p, it->second);
  }
  return x;
}

struct CommutantResult {
  std::size_t dimension = 0;
  /// Basis over Q(q) in symbolic mode, at the first usable sample otherwise.
  std::vector<SparseMat<RatFunc>> basis;
  std::vector<SparseMat<Rational>> basis_specialized;
  Certification certification = Certification::exact;
  bool recheck_ok = false;
  std::optional<Rational> q0;
  std::size_t unknowns = 0;
};

/// Ordinary commutant {A : A g = g A} as an exact kernel computation.
/// Unknowns are restricted to entries joining equal diagonal values of the diagonal generators.
template <class F>
RankKernel<F> commutant_exact(const std::vector<SparseMat<F>>& gens, std::vector<std::pair<std::uint32_t, std::uint32_t>>* unknowns_out);

struct RankKernelResult {
  std::size_t rank = 0;
  std::vector<SparseVec<RatFunc>> kernel;
  std::vector<SparseVec<Rational>> kernel_specialized;
  Certification certification = Certification::exact;
  std::optional<Rational> q0;
};

RankKernelResult rank_kernel(const SparseMat<RatFunc>& a, const SpecPolicy& policy = {});

struct DimResult {
  std::size_t dimension = 0;
  Certification certification = Certification::exact;
  std::optional<Rational> q0;
};

DimResult span_dim(const std::vector<SuperOp>& ops, const SpecPolicy& policy = {});
CommutantResult commutant_basis(const std::vector<SuperOp>& gens, const SpecPolicy& policy = {});
DimResult generated_algebra_dim(const std::vector<SuperOp>& gens, const SpecPolicy& policy = {});

/// Entrywise specialization; nullopt at a pole.
std::optional<SparseMat<Rational>> try_specialize(const SparseMat<RatFunc>& a, const Rational& q0);

}  // namespace superdual
