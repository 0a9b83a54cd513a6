#include "doctest.h"
#include "superdual/linalg.hpp"
#include "superdual/parallel.hpp"
#include "superdual/uq_rep.hpp"

#include <cstdlib>
#include <random>

using namespace superdual;

namespace {

std::vector<SuperOp> gl_gens(const CartanDatum& cd, int d) {
  std::vector<SuperOp> gens{rho_d(GeneratorTag::Sigma(), d, cd)};
  for (int i = 1; i <= cd.nprime(); ++i) gens.push_back(rho_d(GeneratorTag::K(cd.eps(i)), d, cd));
  for (int i = 1; i <= cd.last_node(); ++i) {
    gens.push_back(rho_d(GeneratorTag::E(i), d, cd));
    gens.push_back(rho_d(GeneratorTag::F(i), d, cd));
  }
  return gens;
}

SparseMat<Rational> random_rational(std::mt19937& rng, std::size_t r, std::size_t c, int density) {
  std::uniform_int_distribution<int> v(-3, 3), keep(0, 9);
  SparseMat<Rational> a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) < density) a.set(i, j, Rational(v(rng)));
  return a;
}

}  // namespace

TEST_CASE("rank and kernel examples") {
  CartanDatum cd({1, 1});
  for (std::size_t k : {1u, 3u, 6u}) {
    auto rk = rank_kernel(SparseMat<RatFunc>::identity(k));
    CHECK(rk.rank == k);
    CHECK(rk.kernel.empty());
    CHECK(rk.certification == Certification::exact);
  }
  auto zero = rank_kernel(SparseMat<RatFunc>(3, 4));
  CHECK(zero.rank == 0);
  CHECK(zero.kernel.size() == 4);

  auto A = (build_Rhat(cd) - SuperOp::identity(cd.dim(), 2) * RatFunc::q()).mat();
  auto rk = rank_kernel(A);
  CHECK(rk.rank == 2);
  REQUIRE(rk.kernel.size() == 2);
  for (const auto& v : rk.kernel) CHECK(mat_vec(A, v).empty());
  // e1 (x) e1 lies in the q-eigenspace
  SparseVec<RatFunc> e11{{0u, RatFunc(1)}};
  CHECK(mat_vec(A, e11).empty());

  auto sp = rank_kernel(A, SpecPolicy::specialized({Rational(5, 3), Rational(7, 2)}));
  CHECK(sp.rank == 2);
  CHECK(sp.certification == Certification::probabilistic);
  REQUIRE(sp.q0.has_value());
  auto As = *try_specialize(A, *sp.q0);
  for (const auto& v : sp.kernel_specialized) CHECK(mat_vec(As, v).empty());
}

TEST_CASE("specialization skips poles") {
  SparseMat<RatFunc> a(1, 1);
  a.set(0, 0, RatFunc(1) / (RatFunc::q() - RatFunc(2)));
  auto r = rank_kernel(a, SpecPolicy::specialized({Rational(2), Rational(3)}));
  CHECK(r.rank == 1);
  CHECK(*r.q0 == Rational(3));
  CHECK_THROWS_AS(rank_kernel(a, SpecPolicy::specialized({Rational(2)})), std::domain_error);
  CHECK_THROWS(SpecPolicy::specialized({Rational(-1)}));
  CHECK_FALSE(try_specialize(a, Rational(2)).has_value());
}

TEST_CASE("exact rank agrees with a dense reference on random rational matrices") {
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    auto a = random_rational(rng, r, c, 1 + static_cast<int>(rng() % 9));
    // rank-deficient rows
    if (r > 2) {
      for (const auto& [j, x] : a.row(0)) a.add_to(r - 1, j, x * 2);
    }
    // dense reference elimination
    std::vector<std::vector<Rational>> m(r, std::vector<Rational>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m[i][j] = a.get(i, j);
    std::size_t rank = 0;
    for (std::size_t j = 0; j < c && rank < r; ++j) {
      std::size_t p = rank;
      while (p < r && m[p][j] == 0) ++p;
      if (p == r) continue;
      std::swap(m[p], m[rank]);
      for (std::size_t i = 0; i < r; ++i)
        if (i != rank && m[i][j] != 0) {
          Rational f = m[i][j] / m[rank][j];
          for (std::size_t k = 0; k < c; ++k) m[i][k] -= f * m[rank][k];
        }
      ++rank;
    }
    auto rk = rank_kernel_exact(a);
    CHECK(rk.rank == rank);
    CHECK(rk.rank + rk.kernel.size() == c);
    for (const auto& v : rk.kernel) CHECK(mat_vec(a, v).empty());
  }
}

TEST_CASE("span dimension") {
  CartanDatum cd({1, 1});
  auto Id = SuperOp::identity(cd.dim(), 2), Rh = build_Rhat(cd);
  CHECK(span_dim({Id, Rh}).dimension == 2);
  CHECK(span_dim({Rh}).dimension == 1);
  CHECK(span_dim({Rh, Rh * RatFunc(2)}).dimension == 1);
  CHECK(span_dim({Id, Rh, Rh * Rh}).dimension == 2);
  auto sp = span_dim({Id, Rh}, SpecPolicy::specialized({Rational(7, 2)}));
  CHECK(sp.dimension == 2);
  CHECK(sp.certification == Certification::probabilistic);
  CHECK_THROWS(span_dim({Id, SuperOp::identity(cd.dim(), 1)}));
}

TEST_CASE("commutant examples") {
  CartanDatum cd({1, 1});
  auto full = commutant_basis({SuperOp::identity(cd.dim(), 2)});
  CHECK(full.dimension == 16);
  CHECK(full.recheck_ok);

  auto c2 = commutant_basis(gl_gens(cd, 2));
  CHECK(c2.dimension == 2);
  CHECK(c2.recheck_ok);
  CHECK(c2.certification == Certification::exact);
  // identity and R-hat lie in the commutant
  std::vector<SuperOp> with_basis;
  for (const auto& b : c2.basis) with_basis.push_back(SuperOp::from_matrix(cd.dim(), 2, b));
  with_basis.push_back(SuperOp::identity(cd.dim(), 2));
  with_basis.push_back(build_Rhat(cd));
  CHECK(span_dim(with_basis).dimension == 2);

  auto c4 = commutant_basis(gl_gens(cd, 4));
  CHECK(c4.dimension == 20);
  CHECK(c4.recheck_ok);

  auto c4s = commutant_basis(gl_gens(cd, 4), SpecPolicy::specialized({Rational(5, 3), Rational(7, 2)}));
  CHECK(c4s.dimension == 20);
  CHECK(c4s.recheck_ok);
  CHECK(c4s.certification == Certification::probabilistic);
}

TEST_CASE("commutant agrees with an unrestricted system") {
  // without diagonal generators no unknowns are dropped
  CartanDatum cd({2, 1});
  std::vector<SparseMat<Rational>> gens;
  for (int i = 1; i <= cd.last_node(); ++i) {
    gens.push_back(*try_specialize(rho_d(GeneratorTag::E(i), 2, cd).mat(), Rational(3)));
    gens.push_back(*try_specialize(rho_d(GeneratorTag::F(i), 2, cd).mat(), Rational(3)));
  }
  auto all_gens = gens;
  for (int i = 1; i <= cd.nprime(); ++i) all_gens.push_back(*try_specialize(rho_d(GeneratorTag::K(cd.eps(i)), 2, cd).mat(), Rational(3)));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> u1, u2;
  auto open = commutant_exact(gens, &u1);
  auto restricted = commutant_exact(all_gens, &u2);
  CHECK(u1.size() == 81);
  CHECK(u2.size() < 81);
  // E and F alone already force weight preservation on V (x) V at gl(2|1)
  CHECK(open.kernel.size() == restricted.kernel.size());
}

TEST_CASE("generated algebra dimension") {
  CartanDatum cd({1, 1});
  CHECK(generated_algebra_dim({SuperOp::identity(cd.dim(), 1)}).dimension == 1);
  auto E12 = SuperOp::unit(cd.dim(), 1, 2), E21 = SuperOp::unit(cd.dim(), 2, 1);
  CHECK(generated_algebra_dim({SuperOp::identity(cd.dim(), 1), E12, E21}).dimension == 4);
  CHECK(generated_algebra_dim({SuperOp::identity(cd.dim(), 1), E12}).dimension == 2);
  CHECK(generated_algebra_dim({SuperOp::identity(cd.dim(), 2), build_Rhat(cd)}).dimension == 2);
  // monotone in the generator set
  auto gens = gl_gens(cd, 2);
  std::size_t prev = 0;
  std::vector<SuperOp> acc{SuperOp::identity(cd.dim(), 2)};
  for (const auto& g : gens) {
    acc.push_back(g);
    auto dim = generated_algebra_dim(acc).dimension;
    CHECK(dim >= prev);
    prev = dim;
  }
  auto sp = generated_algebra_dim({SuperOp::identity(cd.dim(), 1), E12, E21}, SpecPolicy::specialized({Rational(2)}));
  CHECK(sp.dimension == 4);
}

TEST_CASE("worker pool") {
  auto sq = parallel_map<int>(50, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(sq[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  CHECK(worker_count() >= 1);
  setenv("SUPERDUAL_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  unsetenv("SUPERDUAL_THREADS");
}
