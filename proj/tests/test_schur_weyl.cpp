#include "doctest.h"
#include "superdual/schur_weyl.hpp"

#include <random>

using namespace superdual;

namespace {

bool all_pass(const std::vector<CheckResult>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

const CheckResult& find(const std::vector<CheckResult>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::runtime_error("no check named " + name);
}

}  // namespace

TEST_CASE("partitions and hook sets") {
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(6).size() == 11);
  auto h = hook_partitions(1, 1, 4);
  CHECK(h == std::vector<Partition>{{4}, {3, 1}, {2, 1, 1}, {1, 1, 1, 1}});
  CHECK(hook_partitions(2, 1, 3) == partitions(3));
  CHECK(hook_partitions(1, 1, 1) == std::vector<Partition>{{1}});
  CHECK_THROWS(hook_partitions(0, 1, 2));
  // the hook set is all of Par(d) exactly below (m+1)(n+1)
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n)
      for (int d = 1; d <= 9; ++d) CHECK((hook_partitions(m, n, d).size() == partitions(d).size()) == (d < (m + 1) * (n + 1)));
}

TEST_CASE("standard tableaux") {
  CHECK(syt_count({2, 1}) == 2);
  CHECK(syt_count({3, 1}) == 3);
  CHECK(syt_count({5}) == 1);
  CHECK(syt_count({2, 2}) == 2);
  for (int d = 1; d <= 6; ++d) {
    std::size_t sq = 0, fact = 1;
    for (int k = 2; k <= d; ++k) fact *= static_cast<std::size_t>(k);
    for (const auto& p : partitions(d)) {
      CHECK(syt_count(p) == syt_count_enumerated(p));
      sq += syt_count(p) * syt_count(p);
    }
    CHECK(sq == fact);
  }
  CHECK(hook_square_sum(1, 1, 4) == 20);
  CHECK(partition_str({3, 1}) == "(3,1)");
}

TEST_CASE("double centralizer") {
  const std::tuple<int, int, int, std::size_t> cases[] = {{1, 1, 2, 2}, {1, 1, 3, 6}, {1, 1, 4, 20}, {2, 1, 2, 2}, {2, 1, 3, 6}};
  for (auto [m, n, d, expected] : cases) {
    auto dc = check_double_centralizer(m, n, d);
    CAPTURE(m);
    CAPTURE(n);
    CAPTURE(d);
    CHECK(dc.commutant_dim == expected);
    CHECK(dc.hecke_span_dim == expected);
    CHECK(dc.hook_sum == expected);
    CHECK(dc.check.pass);
  }
  CHECK(check_double_centralizer(1, 2, 2).check.pass);
}

TEST_CASE("highest weight census") {
  auto c1 = highest_weight_census(2, 1, 1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].weight == std::vector<int>{1, 0, 0});
  CHECK(c1[0].multiplicity == 1);
  auto total = [](const std::vector<WeightCount>& ws) {
    std::size_t s = 0;
    for (const auto& w : ws) s += w.multiplicity;
    return s;
  };
  CHECK(total(highest_weight_census(1, 1, 2)) == 2);
  CHECK(total(highest_weight_census(2, 1, 3)) == 4);
  for (auto [m, n, d] : {std::tuple{1, 1, 4}, std::tuple{1, 2, 3}, std::tuple{2, 1, 2}}) {
    std::size_t f = 0;
    for (const auto& p : hook_partitions(m, n, d)) f += syt_count(p);
    CHECK(total(highest_weight_census(m, n, d)) == f);
  }
}

TEST_CASE("evaluation reducibility") {
  const Rational q0(2);
  auto full = check_evaluation_reducibility(2, 1, {Rational(1), Rational(3)}, q0);
  CHECK(full.full_dimension == 81);
  CHECK(full.dimension == 81);
  CHECK(full.check.pass);
  for (auto c : {std::vector<Rational>{1, 4}, std::vector<Rational>{4, 1}}) {
    auto r = check_evaluation_reducibility(2, 1, c, q0);
    CHECK(r.coupled);
    CHECK(r.dimension < 81);
    CHECK(r.check.pass);
  }
  CHECK_THROWS(check_evaluation_reducibility(2, 1, {Rational(1), Rational(3), Rational(5)}, q0));
  CHECK_THROWS(check_evaluation_reducibility(2, 1, {Rational(1)}, q0));
}

TEST_CASE("functor on M_c") {
  CartanDatum cd({2, 1});
  // d = 1: both sides are the single-slot evaluation module at the inverted parameter
  auto img1 = functor_mc_image(cd, {Rational(5)});
  CHECK(img1.E0 == rho_d_affine(GeneratorTag::E0(), 1, {Rational(1, 5)}, cd));
  CHECK(img1.K0 == rho_d_affine(GeneratorTag::K0(), 1, {Rational(5)}, cd));

  for (auto [m, n] : {std::pair{2, 1}, std::pair{2, 3}}) {
    auto checks = check_functor_Mc(m, n, {Rational(1), Rational(3)});
    CHECK(find(checks, "functor-Mc K0 vs V(c)").pass);
    CHECK_FALSE(find(checks, "functor-Mc E0 vs V(c)").pass);
    CHECK_FALSE(find(checks, "functor-Mc F0 vs V(c)").pass);
    CHECK(find(checks, "functor-Mc E0 vs V(c)").witness.has_value());
    CHECK(find(checks, "functor-Mc E0 vs V(1/c)").pass);
    CHECK(find(checks, "functor-Mc F0 vs V(1/c)").pass);
    CHECK(find(checks, "functor-Mc K0 vs V(1/c)").pass);
    CHECK(find(checks, "functor-Mc balanced over H").pass);
  }
  // parameters fixed by inversion agree literally
  CHECK(all_pass(check_functor_Mc(2, 1, {Rational(1), Rational(-1)})));
}

TEST_CASE("reconstruction of the y-action") {
  for (auto [m, n] : {std::pair{2, 1}, std::pair{1, 2}}) {
    auto rec = reconstruct_y_mc(m, n, {Rational(1), Rational(3)});
    for (const auto& c : rec.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
    REQUIRE(rec.signs.size() == 2);
    CHECK(rec.signs[0] == 1);
    CHECK(rec.signs[1] == (m == 2 ? 1 : -1));
  }
  auto rec3 = reconstruct_y_mc(2, 3, {Rational(2), Rational(-1, 3), Rational(5)});
  CHECK(all_pass(rec3.checks));
  CHECK(rec3.y.size() == 3);
  CHECK_THROWS(reconstruct_y_mc(2, 1, {Rational(1), Rational(2), Rational(3)}));

  // a wrong F0 is detected
  CartanDatum cd({2, 1});
  auto img = functor_mc_image(cd, {Rational(1), Rational(3)});
  McModule M({Rational(1), Rational(3)});
  auto bad = reconstruct_y(cd, 2, img.E0, rho_d_affine(GeneratorTag::F0(), 2, {Rational(1), Rational(3)}, cd), &M);
  CHECK_FALSE(all_pass(bad.checks));
}

TEST_CASE("reducibility grid") {
  auto params = reducibility_grid_params(2, Rational(2), 20, 2024);
  REQUIRE(params.size() == 22);
  CHECK(params[20] == std::vector<Rational>{4, 1});
  CHECK(params[21] == std::vector<Rational>{1, 4});
  CHECK(reducibility_grid_params(2, Rational(2), 20, 2024) == params);
  auto grid = run_reducibility_grid(2, 1, 2, Rational(2));
  REQUIRE(grid.size() == 22);
  for (const auto& c : grid) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
  CHECK(grid[0].info["algebra_dim"] == 81);
  CHECK(grid[21].info["algebra_dim"] < 81);
  CHECK(reducibility_grid_params(3, Rational(2), 4, 1).size() == 4 + 6);
}
