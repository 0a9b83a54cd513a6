#include "superdual/linalg.hpp"

#include "superdual/parallel.hpp"

#include <sstream>
#include <stdexcept>

namespace superdual {

std::string certification_str(Certification c) { return c == Certification::exact ? "exact" : "probabilistic"; }

SpecPolicy SpecPolicy::symbolic() {
  SpecPolicy p;
  p.mode = Mode::symbolic;
  return p;
}

SpecPolicy SpecPolicy::specialized(std::vector<Rational> q0s) {
  if (q0s.empty()) throw std::invalid_argument("specialized policy needs at least one sample point");
  for (const auto& q0 : q0s)
    if (q0 == 0 || q0 == 1 || q0 == -1) throw std::invalid_argument("sample point " + rational_str(q0) + " is a root of unity or zero");
  SpecPolicy p;
  p.mode = Mode::specialized;
  p.samples = std::move(q0s);
  return p;
}

bool SpecPolicy::use_symbolic(std::size_t entries) const {
  switch (mode) {
    case Mode::symbolic: return true;
    case Mode::specialized: return false;
    default: return entries <= symbolic_limit;
  }
}

std::string SpecPolicy::str() const {
  if (mode == Mode::symbolic) return "symbolic";
  std::ostringstream os;
  os << (mode == Mode::automatic ? "auto(" : "rational(");
  for (std::size_t i = 0; i < samples.size(); ++i) os << (i ? "," : "") << rational_str(samples[i]);
  os << ")";
  return os.str();
}

std::optional<SparseMat<Rational>> try_specialize(const SparseMat<RatFunc>& a, const Rational& q0) {
  SparseMat<Rational> out(a.rows(), a.cols());
  try {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (const auto& [c, x] : a.row(i)) out.set(i, c, x.specialize(q0));
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  return out;
}

namespace {

template <class F>
bool is_diagonal(const SparseMat<F>& g) {
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (const auto& [c, x] : g.row(i))
      if (c != i) return false;
  return true;
}

std::vector<SparseMat<RatFunc>> mats_of(const std::vector<SuperOp>& ops) {
  std::vector<SparseMat<RatFunc>> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back(op.mat());
  return out;
}

std::size_t total_nnz(const std::vector<SuperOp>& ops) {
  std::size_t k = 0;
  for (const auto& op : ops) k += op.nnz();
  return k;
}

/// Specialized copies of all matrices at each sample that avoids every pole.
std::vector<std::pair<Rational, std::vector<SparseMat<Rational>>>> usable_samples(const std::vector<SparseMat<RatFunc>>& ms,
                                                                                   const SpecPolicy& policy) {
  auto per = parallel_map<std::optional<std::vector<SparseMat<Rational>>>>(policy.samples.size(), [&](std::size_t k) {
    std::vector<SparseMat<Rational>> sp;
    for (const auto& m : ms) {
      auto s = try_specialize(m, policy.samples[k]);
      if (!s) return std::optional<std::vector<SparseMat<Rational>>>{};
      sp.push_back(std::move(*s));
    }
    return std::optional<std::vector<SparseMat<Rational>>>{std::move(sp)};
  });
  std::vector<std::pair<Rational, std::vector<SparseMat<Rational>>>> out;
  for (std::size_t k = 0; k < per.size(); ++k)
    if (per[k]) out.emplace_back(policy.samples[k], std::move(*per[k]));
  if (out.empty()) throw std::domain_error("every sample point hits a pole; supply other q0 values");
  return out;
}

}  // namespace

template <class F>
RankKernel<F> commutant_exact(const std::vector<SparseMat<F>>& gens, std::vector<std::pair<std::uint32_t, std::uint32_t>>* unknowns_out) {
  if (gens.empty()) throw std::invalid_argument("commutant needs at least one generator");
  const std::size_t n = gens.front().rows();
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("commutant generators must be square of equal size");

  // signature of each basis index under the diagonal generators
  std::vector<std::vector<F>> sig(n);
  std::vector<const SparseMat<F>*> dense_gens;
  for (const auto& g : gens) {
    if (is_diagonal(g))
      for (std::size_t i = 0; i < n; ++i) sig[i].push_back(g.get(i, i));
    else
      dense_gens.push_back(&g);
  }
  std::map<std::string, std::vector<std::uint32_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    std::string key;
    for (const auto& x : sig[i]) key += to_str(x) + ";";
    blocks[key].push_back(static_cast<std::uint32_t>(i));
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> unknowns;
  for (const auto& [s, members] : blocks)
    for (auto r : members)
      for (auto c : members) unknowns.emplace_back(r, c);
  std::sort(unknowns.begin(), unknowns.end());

  // (A g - g A)_{ij} = sum_k A_{ik} g_{kj} - g_{ik} A_{kj}; rows keyed by (generator, i, j)
  std::map<std::tuple<std::size_t, std::uint32_t, std::uint32_t>, SparseVec<F>> eqs;
  auto add = [&](std::size_t gi, std::uint32_t i, std::uint32_t j, std::uint32_t u, const F& v) {
    auto& row = eqs[{gi, i, j}];
    auto [it, fresh] = row.try_emplace(u, v);
    if (!fresh) {
      it->second += v;
      if (is_zero(it->second)) row.erase(it);
    }
  };
  // column lookup of each generator for the g_{ik} A_{kj} term
  for (std::size_t gi = 0; gi < dense_gens.size(); ++gi) {
    const auto& g = *dense_gens[gi];
    std::vector<std::vector<std::pair<std::uint32_t, F>>> by_col(n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [k, x] : g.row(i)) by_col[k].emplace_back(static_cast<std::uint32_t>(i), x);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      auto [r, c] = unknowns[u];
      for (const auto& [j, x] : g.row(c)) add(gi, r, j, static_cast<std::uint32_t>(u), x);
      for (const auto& [i, x] : by_col[r]) add(gi, i, c, static_cast<std::uint32_t>(u), -x);
    }
  }
  SparseMat<F> system(eqs.size(), unknowns.size());
  std::size_t row = 0;
  for (const auto& [key, eq] : eqs) {
    for (const auto& [u, v] : eq) system.set(row, u, v);
    ++row;
  }
  if (unknowns_out) *unknowns_out = unknowns;
  return rank_kernel_exact(system);
}

template RankKernel<RatFunc> commutant_exact(const std::vector<SparseMat<RatFunc>>&, std::vector<std::pair<std::uint32_t, std::uint32_t>>*);
template RankKernel<Rational> commutant_exact(const std::vector<SparseMat<Rational>>&, std::vector<std::pair<std::uint32_t, std::uint32_t>>*);

RankKernelResult rank_kernel(const SparseMat<RatFunc>& a, const SpecPolicy& policy) {
  RankKernelResult out;
  if (policy.use_symbolic(a.nnz())) {
    auto rk = rank_kernel_exact(a);
    out.rank = rk.rank;
    out.kernel = std::move(rk.kernel);
    return out;
  }
  auto samples = usable_samples({a}, policy);
  auto results = parallel_map<RankKernel<Rational>>(samples.size(), [&](std::size_t k) { return rank_kernel_exact(samples[k].second.front()); });
  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k)
    if (results[k].rank > results[best].rank) best = k;
  out.rank = results[best].rank;
  out.kernel_specialized = std::move(results[best].kernel);
  out.q0 = samples[best].first;
  out.certification = Certification::probabilistic;
  return out;
}

DimResult span_dim(const std::vector<SuperOp>& ops, const SpecPolicy& policy) {
  DimResult out;
  if (ops.empty()) return out;
  for (const auto& op : ops)
    if (op.size() != ops.front().size()) throw std::invalid_argument("span_dim operands differ in shape");
  auto ms = mats_of(ops);
  if (policy.use_symbolic(total_nnz(ops))) {
    out.dimension = span_dim_exact(ms);
    return out;
  }
  auto samples = usable_samples(ms, policy);
  auto dims = parallel_map<std::size_t>(samples.size(), [&](std::size_t k) { return span_dim_exact(samples[k].second); });
  std::size_t best = static_cast<std::size_t>(std::max_element(dims.begin(), dims.end()) - dims.begin());
  out.dimension = dims[best];
  out.q0 = samples[best].first;
  out.certification = Certification::probabilistic;
  return out;
}

CommutantResult commutant_basis(const std::vector<SuperOp>& gens, const SpecPolicy& policy) {
  CommutantResult out;
  auto ms = mats_of(gens);
  const std::size_t n = ms.empty() ? 0 : ms.front().rows();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> unknowns;
  if (policy.use_symbolic(total_nnz(gens))) {
    auto rk = commutant_exact(ms, &unknowns);
    out.unknowns = unknowns.size();
    out.dimension = rk.kernel.size();
    out.recheck_ok = true;
    for (const auto& v : rk.kernel) {
      SparseMat<RatFunc> a(n, n);
      for (const auto& [u, x] : v) a.set(unknowns[u].first, unknowns[u].second, x);
      for (const auto& g : ms)
        if (!(a * g == g * a)) out.recheck_ok = false;
      out.basis.push_back(std::move(a));
    }
    return out;
  }
  auto samples = usable_samples(ms, policy);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> unk(samples.size());
  auto results = parallel_map<RankKernel<Rational>>(samples.size(), [&](std::size_t k) { return commutant_exact(samples[k].second, &unk[k]); });
  // the commutant can only grow at special points, so the smallest kernel is the generic candidate
  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k)
    if (results[k].kernel.size() < results[best].kernel.size()) best = k;
  out.q0 = samples[best].first;
  out.unknowns = unk[best].size();
  out.dimension = results[best].kernel.size();
  out.certification = Certification::probabilistic;
  out.recheck_ok = true;
  for (const auto& v : results[best].kernel) {
    SparseMat<Rational> a(n, n);
    for (const auto& [u, x] : v) a.set(unk[best][u].first, unk[best][u].second, x);
    for (const auto& g : samples[best].second)
      if (!(a * g == g * a)) out.recheck_ok = false;
    out.basis_specialized.push_back(std::move(a));
  }
  return out;
}

DimResult generated_algebra_dim(const std::vector<SuperOp>& gens, const SpecPolicy& policy) {
  DimResult out;
  if (gens.empty()) return out;
  auto ms = mats_of(gens);
  if (policy.use_symbolic(total_nnz(gens))) {
    out.dimension = generated_algebra_dim_exact(ms);
    return out;
  }
  auto samples = usable_samples(ms, policy);
  auto dims = parallel_map<std::size_t>(samples.size(), [&](std::size_t k) { return generated_algebra_dim_exact(samples[k].second); });
  std::size_t best = static_cast<std::size_t>(std::max_element(dims.begin(), dims.end()) - dims.begin());
  out.dimension = dims[best];
  out.q0 = samples[best].first;
  out.certification = Certification::probabilistic;
  return out;
}

}  // namespace superdual
