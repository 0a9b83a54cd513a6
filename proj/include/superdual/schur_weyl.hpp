#pragma once

#include "superdual/affine_hecke.hpp"
#include "superdual/linalg.hpp"
#include "superdual/report.hpp"

#include <string>
#include <utility>
#include <vector>

namespace superdual {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

/// All partitions of d, in reverse lexicographic order ((d) first).
std::vector<Partition> partitions(int d);
/// Partitions of d with lambda_j <= n for every j > m.
std::vector<Partition> hook_partitions(int m, int n, int d);
/// Standard Young tableaux by the hook-length formula.
std::size_t syt_count(const Partition& lambda);
/// Same count by removing corners recursively.
std::size_t syt_count_enumerated(const Partition& lambda);
/// sum over the hook set of f_lambda^2
std::size_t hook_square_sum(int m, int n, int d);
std::string partition_str(const Partition& lambda);

/// sigma, K(eps_i) for all i, E_k and F_k on V^{(x)d}.
std::vector<SuperOp> gl_generators(const CartanDatum& cd, int d);
/// Identity, sigma, K(alpha_i) for all nodes, E_k, F_k, E0, F0 on V(c_1) (x) ... (x) V(c_d).
std::vector<SuperOp> affine_generators(const CartanDatum& cd, const std::vector<Rational>& c);

struct DoubleCentralizer {
  std::size_t commutant_dim = 0;
  std::size_t hecke_span_dim = 0;
  std::size_t hook_sum = 0;
  CheckResult check;
};

DoubleCentralizer check_double_centralizer(int m, int n, int d, const SpecPolicy& policy = {});

struct WeightCount {
  std::vector<int> weight;
  std::size_t multiplicity = 0;
};

/// Joint kernel of the E_k, bucketed by weight.
std::vector<WeightCount> highest_weight_census(int m, int n, int d);

struct Reducibility {
  std::size_t dimension = 0;
  std::size_t full_dimension = 0;
  bool full = false;
  /// Whether c_j = q0^2 c_k for some j != k.
  bool coupled = false;
  CheckResult check;
};

/// Generated-algebra test of V(c_1) (x) ... (x) V(c_d) at q = q0. Requires 2 <= d < n'.
Reducibility check_evaluation_reducibility(int m, int n, const std::vector<Rational>& c, const Rational& q0);

/// `generic` seeded random parameter vectors with no q0^2 coupling, plus every vector with
/// c_j = q0^2 c_k for one ordered pair (j, k) and otherwise generic entries.
std::vector<std::vector<Rational>> reducibility_grid_params(int d, const Rational& q0, std::size_t generic, unsigned seed);
std::vector<CheckResult> run_reducibility_grid(int m, int n, int d, const Rational& q0, std::size_t generic = 20, unsigned seed = 2024);

/// E0, F0, K0 on M_c (x)_H V^{(x)d}, transported to V^{(x)d} along m (x) v -> pi(m) v.
struct FunctorImage {
  SuperOp E0, F0, K0;
};
FunctorImage functor_mc_image(const CartanDatum& cd, const std::vector<Rational>& c);

/// Literal comparison against V(c_1) (x) ... (x) V(c_d), the inverted-parameter comparison,
/// and a check that the transported action does not depend on the chosen representative.
std::vector<CheckResult> check_functor_Mc(int m, int n, const std::vector<Rational>& c);

struct Reconstruction {
  /// Matrices of right multiplication by y_j and y_j^{-1} in the T_w basis.
  std::vector<SparseMat<RatFunc>> y, y_inv;
  /// Signs s_j with Y_jF v^(j) = s_j w^(j).
  std::vector<int> signs;
  std::vector<CheckResult> checks;
};

/// Recovers the y-action on the regular finite Hecke module M from affine E0/F0 matrices
/// on M (x)_H V^{(x)d} = V^{(x)d}. `reference` optionally supplies the expected M_c.
Reconstruction reconstruct_y(const CartanDatum& cd, int d, const SuperOp& E0, const SuperOp& F0, const McModule* reference = nullptr);

/// reconstruct_y on M_c with E0/F0 read off the functor image.
Reconstruction reconstruct_y_mc(int m, int n, const std::vector<Rational>& c);

}  // namespace superdual
