#include "doctest.h"
#include "superdual/affine_hecke.hpp"

#include <random>

using namespace superdual;

namespace {

RatFunc xi() { return q_minus_qinv(); }

HeckeElt nf(const std::string& s, int d) { return bernstein_nf(parse_hecke_word(s, d), d); }

HeckeElt yv(std::vector<int> mu, const Perm& w, const RatFunc& c = RatFunc(1)) {
  HeckeElt h(static_cast<int>(mu.size()));
  h.add_term(mu, w, c);
  return h;
}

HeckeWord random_word(std::mt19937& rng, int d, int len) {
  std::uniform_int_distribution<int> kind(0, 3), ti(1, d - 1), yj(1, d);
  HeckeWord w;
  for (int k = 0; k < len; ++k) {
    switch (kind(rng)) {
      case 0: w.push_back(HeckeAtom::T(ti(rng))); break;
      case 1: w.push_back(HeckeAtom::Tinv(ti(rng))); break;
      case 2: w.push_back(HeckeAtom::Y(yj(rng))); break;
      default: w.push_back(HeckeAtom::Yinv(yj(rng))); break;
    }
  }
  return w;
}

// 1 (x) R-hat written out as graded three-fold tensors of the matrix-unit terms
SuperOp sum_graded_3(const std::vector<TensorTerm>& terms, const CartanDatum& cd) {
  SuperOp out(cd.dim(), 3, 0);
  for (const auto& t : terms) out += graded_tensor({SuperOp::identity(cd.dim(), 1), t.a, t.b}) * t.coef;
  return out;
}

SparseMat<RatFunc> I_(std::size_t n) { return SparseMat<RatFunc>::identity(n); }

}  // namespace

TEST_CASE("permutations") {
  CHECK(reduced_word({2, 3, 1}).size() == 2);
  CHECK(perm_length({3, 2, 1}) == 3);
  CHECK(reduced_word({3, 2, 1}) == std::vector<int>{1, 2, 1});
  CHECK(all_perms(4).size() == 24);
  for (const auto& w : all_perms(4)) {
    Perm p = perm_identity(4);
    for (int i : reduced_word(w)) p = perm_compose(p, simple_reflection(i, 4));
    CHECK(p == w);
    CHECK(static_cast<int>(reduced_word(w).size()) == perm_length(w));
    CHECK(perm_compose(w, perm_inverse(w)) == perm_identity(4));
  }
}

TEST_CASE("finite Hecke products") {
  auto T1 = HeckeElt::Tw(simple_reflection(1, 3)), T2 = HeckeElt::Tw(simple_reflection(2, 3));
  CHECK(finite_hecke_mul(T1, T1) == HeckeElt::one(3) + T1 * xi());
  CHECK(finite_hecke_mul(T1, T2) == HeckeElt::Tw(perm_compose(simple_reflection(1, 3), simple_reflection(2, 3))));
  CHECK((T1 * T2 * T1 - T2 * T1 * T2).is_zero());
  CHECK_THROWS(finite_hecke_mul(T1, HeckeElt::atom(HeckeAtom::Y(1), 3)));
  auto Ti = HeckeElt::atom(HeckeAtom::Tinv(1), 3);
  CHECK(T1 * Ti == HeckeElt::one(3));
}

TEST_CASE("Bernstein rewriting examples") {
  Perm s1 = simple_reflection(1, 2);
  CHECK(nf("T1 y2", 2) == yv({1, 0}, s1) + yv({0, 1}, perm_identity(2), xi()));
  CHECK(nf("T1 y1", 2) == yv({0, 1}, s1) - yv({0, 1}, perm_identity(2), xi()));
  CHECK(nf("T1 y3", 3) == yv({0, 0, 1}, simple_reflection(1, 3)));
  // inverse rules
  CHECK(nf("T1 y2^-1", 2) == yv({-1, 0}, s1) - yv({-1, 0}, perm_identity(2), xi()));
  CHECK(nf("T1 y1^-1", 2) == yv({0, -1}, s1) + yv({-1, 0}, perm_identity(2), xi()));
  for (const char* w : {"T1 y1 y1^-1", "T1 y1^-1 y1", "T1 y2 y2^-1", "T1 y2^-1 y2"}) CHECK(nf(w, 2) == nf("T1", 2));
}

TEST_CASE("defining relations hold in normal form") {
  for (int d = 2; d <= 4; ++d) {
    for (int i = 1; i < d; ++i) {
      std::string T = "T" + std::to_string(i);
      std::string yi = "y" + std::to_string(i), yn = "y" + std::to_string(i + 1);
      CHECK(nf(T + " " + yi + " " + T, d) == nf(yn, d));
      CHECK(nf(T + " " + T, d) == nf("", d) + nf(T, d) * xi());
      for (int j = 1; j <= d; ++j)
        if (j != i && j != i + 1) CHECK(nf("y" + std::to_string(j) + " " + T, d) == nf(T + " y" + std::to_string(j), d));
      if (i + 1 < d) {
        std::string U = "T" + std::to_string(i + 1);
        CHECK(nf(T + " " + U + " " + T, d) == nf(U + " " + T + " " + U, d));
      }
      for (int k = i + 2; k < d; ++k) {
        std::string U = "T" + std::to_string(k);
        CHECK(nf(T + " " + U, d) == nf(U + " " + T, d));
      }
    }
    for (int j = 1; j <= d; ++j) {
      std::string y = "y" + std::to_string(j);
      CHECK(nf(y + " " + y + "^-1", d) == HeckeElt::one(d));
      for (int k = 1; k <= d; ++k) CHECK(nf(y + " y" + std::to_string(k), d) == nf("y" + std::to_string(k) + " " + y, d));
    }
  }
}

TEST_CASE("confluence on random words") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dd(2, 4), len(0, 3);
  for (int it = 0; it < 500; ++it) {
    int d = dd(rng);
    // total atom length at most 8
    auto a = random_word(rng, d, len(rng)), b = random_word(rng, d, len(rng)), c = random_word(rng, d, len(rng) % 3);
    HeckeWord all = a;
    all.insert(all.end(), b.begin(), b.end());
    all.insert(all.end(), c.begin(), c.end());
    auto A = bernstein_nf(a, d), B = bernstein_nf(b, d), C = bernstein_nf(c, d);
    auto lhs = (A * B) * C;
    REQUIRE(lhs == A * (B * C));
    REQUIRE(lhs == bernstein_nf(all, d));
    // right-to-left evaluation of the whole word
    HeckeElt r = HeckeElt::one(d);
    for (auto itr = all.rbegin(); itr != all.rend(); ++itr) r = HeckeElt::atom(*itr, d) * r;
    REQUIRE(lhs == r);
  }
}

TEST_CASE("ev_z") {
  Rational z(3, 2);
  CHECK(ev_z(nf("y1", 2), z) == HeckeElt::one(2) * RatFunc(z));
  CHECK(ev_z(nf("y2", 2), z) == (HeckeElt::one(2) + nf("T1", 2) * xi()) * RatFunc(z));
  CHECK(ev_z(nf("T1", 2), z) == nf("T1", 2));
  CHECK_THROWS(ev_z(nf("y1", 2), Rational(0)));
  for (int d = 2; d <= 4; ++d) {
    std::vector<HeckeElt> Y;
    for (int j = 1; j <= d; ++j) Y.push_back(ev_z(nf("y" + std::to_string(j), d), z));
    for (int j = 1; j <= d; ++j) {
      CHECK(Y[static_cast<std::size_t>(j - 1)].y_free());
      CHECK(Y[static_cast<std::size_t>(j - 1)] * ev_z(nf("y" + std::to_string(j) + "^-1", d), z) == HeckeElt::one(d));
      for (int k = 1; k <= d; ++k) CHECK(Y[static_cast<std::size_t>(j - 1)] * Y[static_cast<std::size_t>(k - 1)] == Y[static_cast<std::size_t>(k - 1)] * Y[static_cast<std::size_t>(j - 1)]);
    }
    for (int i = 1; i < d; ++i) {
      auto T = nf("T" + std::to_string(i), d);
      CHECK(T * Y[static_cast<std::size_t>(i - 1)] * T == Y[static_cast<std::size_t>(i)]);
    }
    // homomorphism on a sample product
    auto w = nf("T1 y2 y1^-1", d);
    CHECK(ev_z(w, z) == ev_z(nf("T1", d), z) * ev_z(nf("y2", d), z) * ev_z(nf("y1^-1", d), z));
  }
}

TEST_CASE("M_c right action") {
  McModule M({Rational(2), Rational(5)});
  auto one = M.unit_vector(perm_identity(2));
  auto v = M.right_action(one, HeckeAtom::Y(1));
  CHECK(v == McModule::Vec{RatFunc(2), RatFunc()});
  CHECK(M.right_action(one, HeckeAtom::Y(2)) == McModule::Vec{RatFunc(5), RatFunc()});
  auto t1 = M.unit_vector(simple_reflection(1, 2));
  auto w = M.right_action(t1, HeckeAtom::Y(1));
  CHECK(w[M.index_of(simple_reflection(1, 2))] == RatFunc(5));
  CHECK(w[M.index_of(perm_identity(2))] == -xi() * RatFunc(5));
  CHECK(w == mc_right_action(M, t1, HeckeAtom::Y(1)));
}

TEST_CASE("M_c satisfies the defining relations") {
  for (auto c : {std::vector<Rational>{2, 5}, std::vector<Rational>{1, 3, Rational(-2, 7)}}) {
    McModule M(c);
    const int d = M.d();
    const auto n = M.dim();
    auto W = [&](const std::string& s) { return M.word_matrix(parse_hecke_word(s, d)); };
    for (int i = 1; i < d; ++i) {
      std::string T = "T" + std::to_string(i);
      CHECK(W(T + " y" + std::to_string(i) + " " + T) == W("y" + std::to_string(i + 1)));
      CHECK(W(T + " " + T) == I_(n) + W(T) * xi());
      CHECK(W(T + " " + T + "^-1") == I_(n));
      if (i + 1 < d) {
        std::string U = "T" + std::to_string(i + 1);
        CHECK(W(T + " " + U + " " + T) == W(U + " " + T + " " + U));
      }
      for (int j = 1; j <= d; ++j)
        if (j != i && j != i + 1) CHECK(W("y" + std::to_string(j) + " " + T) == W(T + " y" + std::to_string(j)));
    }
    for (int j = 1; j <= d; ++j) {
      CHECK(W("y" + std::to_string(j) + " y" + std::to_string(j) + "^-1") == I_(n));
      for (int k = 1; k <= d; ++k) CHECK(W("y" + std::to_string(j) + " y" + std::to_string(k)) == W("y" + std::to_string(k) + " y" + std::to_string(j)));
    }
  }
}

TEST_CASE("pi_d") {
  CartanDatum cd({2, 1});
  auto Rh = build_Rhat(cd);
  CHECK(pi_d(1, 2, cd) == Rh);
  CHECK(pi_d(2, 3, cd) == sum_graded_3(rhat_terms(cd), cd));
  auto P = pi_d(1, 3, cd);
  CHECK(P * P == P * xi() + SuperOp::identity(cd.dim(), 3));
  CHECK_THROWS(pi_d(3, 3, cd));
  // pi extends ev_z
  Rational z(7, 3);
  const int d = 3;
  std::vector<SuperOp> Y;
  for (int j = 1; j <= d; ++j) Y.push_back(pi_element(ev_z(nf("y" + std::to_string(j), d), z), cd));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) CHECK(Y[static_cast<std::size_t>(j)] * Y[static_cast<std::size_t>(k)] == Y[static_cast<std::size_t>(k)] * Y[static_cast<std::size_t>(j)]);
  for (int i = 1; i < d; ++i) CHECK(pi_d(i, d, cd) * Y[static_cast<std::size_t>(i - 1)] * pi_d(i, d, cd) == Y[static_cast<std::size_t>(i)]);
}
