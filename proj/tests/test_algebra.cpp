#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "divlat/algebra.hpp"

using namespace divlat;
using Cplx = std::complex<double>;

namespace {

std::string data_dir() {
#ifdef DIVLAT_TEST_DATA_DIR
  return DIVLAT_TEST_DATA_DIR;
#else
  return "data";
#endif
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

CyclicAlgebra golden() {
  return load_algebra(data_dir() + "/golden_algebra.json");
}

KElem kel(const CyclicAlgebra& A, std::initializer_list<long> cs) {
  KElem v = k_zero(A);
  size_t i = 0;
  for (long c : cs) v[i++] = c;
  return v;
}

AlgElem random_element(const CyclicAlgebra& A, std::mt19937& rng) {
  std::uniform_int_distribution<long> coord(-3, 3);
  AlgElem a = alg_zero(A);
  for (auto& x : a)
    for (auto& c : x)
      for (auto& q : c) q = coord(rng);
  return a;
}

// the cubic field of discriminant 81 as a degree-3 cyclic algebra over Q
std::string cubic_over_q_json(const std::string& gamma) {
  return std::string("{\n"
                     "  \"center\": {\"label\": \"Q\", \"degree\": 1, "
                     "\"signature\": [1, 0], \"disc\": \"1\", \"min_poly\": "
                     "[0, 1]},\n"
                     "  \"ext_poly_over_center\": [[1], [-3], [0], [1]],\n"
                     "  \"sigma_image\": [[-2], [0], [1]],\n"
                     "  \"gamma\": [") +
         gamma +
         "],\n"
         "  \"n\": 3\n"
         "}\n";
}

std::string quartic_center_json() {
  return "{\n"
         "  \"center\": {\"label\": \"d117a\", \"degree\": 4, \"signature\": "
         "[0, 2], \"disc\": \"117\", \"min_poly\": [1, -1, -1, 1, 1]},\n"
         "  \"ext_poly_over_center\": [[-1, 0, 0, 0], [1, 0, 0, 0]],\n"
         "  \"sigma_root_index\": 0,\n"
         "  \"gamma\": [1, 0, 0, 0],\n"
         "  \"n\": 1\n"
         "}\n";
}

} // namespace

TEST_CASE("golden algebra loads and validates") {
  const CyclicAlgebra A = golden();
  CHECK(A.n == 2);
  CHECK(A.dK() == 2);
  CHECK(A.dim() == 8);
  CHECK(A.division_asserted);
  CHECK(A.center.label == "Q(i)");
  CHECK(A.gamma == kel(A, {0, 1}));
  // sigma theta = 1 - theta for t^2 - t - 1
  const EElem expected{kel(A, {1, 0}), kel(A, {-1, 0})};
  CHECK(A.sigma_image == expected);
}

TEST_CASE("extension arithmetic and the Galois action") {
  const CyclicAlgebra A = golden();
  // theta^2 = theta + 1
  EElem theta = e_zero(A);
  theta[1] = k_one(A);
  const EElem theta_sq = e_mul(A, theta, theta);
  CHECK(theta_sq == EElem{kel(A, {1, 0}), kel(A, {1, 0})});

  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    EElem x = e_zero(A), y = e_zero(A);
    std::uniform_int_distribution<long> coord(-4, 4);
    for (auto& c : x)
      for (auto& q : c) q = coord(rng);
    for (auto& c : y)
      for (auto& q : c) q = coord(rng);
    // sigma is a field automorphism of order n fixing K
    CHECK(e_sigma(A, e_mul(A, x, y)) ==
          e_mul(A, e_sigma(A, x), e_sigma(A, y)));
    CHECK(e_sigma(A, e_add(A, x, y)) ==
          e_add(A, e_sigma(A, x), e_sigma(A, y)));
    CHECK(e_sigma(A, e_sigma(A, x)) == x);
    CHECK(e_sigma(A, x, 2) == x);
  }
  const KElem c = kel(A, {2, -3});
  CHECK(e_sigma(A, e_from_k(A, c)) == e_from_k(A, c));
}

TEST_CASE("left regular representation") {
  const CyclicAlgebra A = golden();
  const EMatrix id = left_regular_matrix(A, alg_one(A));
  CHECK(id[0][0] == e_one(A));
  CHECK(id[1][1] == e_one(A));
  CHECK(id[0][1] == e_zero(A));
  CHECK(id[1][0] == e_zero(A));

  const EMatrix mu = left_regular_matrix(A, alg_u(A));
  CHECK(mu[0][0] == e_zero(A));
  CHECK(mu[0][1] == e_from_k(A, A.gamma));
  CHECK(mu[1][0] == e_one(A));
  CHECK(mu[1][1] == e_zero(A));
  // det psi(u) = -gamma
  const EElem det =
      e_sub(A, e_mul(A, mu[0][0], mu[1][1]), e_mul(A, mu[0][1], mu[1][0]));
  CHECK(det == e_from_k(A, kel(A, {0, -1})));
}

TEST_CASE("representation is a ring homomorphism") {
  const CyclicAlgebra A = golden();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const AlgElem a = random_element(A, rng);
    const AlgElem b = random_element(A, rng);
    const EMatrix ma = left_regular_matrix(A, a);
    const EMatrix mb = left_regular_matrix(A, b);
    CHECK(left_regular_matrix(A, alg_add(A, a, b)) == e_mat_add(A, ma, mb));
    CHECK(left_regular_matrix(A, alg_mul(A, a, b)) == e_mat_mul(A, ma, mb));
  }
}

TEST_CASE("degree 3 algebra over the rationals") {
  const CyclicAlgebra A =
      load_algebra(write_temp("cubic81.json", cubic_over_q_json("2")));
  CHECK(A.n == 3);
  CHECK(A.dK() == 1);
  CHECK(A.dim() == 9);

  // u^3 = gamma
  const AlgElem u = alg_u(A);
  AlgElem g = alg_zero(A);
  g[0] = e_from_k(A, A.gamma);
  CHECK(alg_mul(A, u, alg_mul(A, u, u)) == g);

  std::mt19937 rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    const AlgElem a = random_element(A, rng);
    const AlgElem b = random_element(A, rng);
    const AlgElem c = random_element(A, rng);
    CHECK(alg_mul(A, alg_mul(A, a, b), c) == alg_mul(A, a, alg_mul(A, b, c)));
    CHECK(left_regular_matrix(A, alg_mul(A, a, b)) ==
          e_mat_mul(A, left_regular_matrix(A, a),
                    left_regular_matrix(A, b)));
  }

  CHECK(natural_order(A).size() == 9);

  const EmbeddingSet set = make_embeddings(A);
  CHECK(set.reg1.size() == 1);
  CHECK(set.reg2.empty());
  CHECK(std::abs(set.reg1[0].s) < 1e-12);
  // smallest root of t^3 - 3t + 1
  CHECK(set.reg1[0].t.real() ==
        doctest::Approx(2.0 * std::cos(8.0 * M_PI / 9.0)).epsilon(1e-12));

  const OrderLattice lat = build_lattice_reg1(A, natural_order(A), set);
  CHECK(lat.n == 3);
  CHECK(lat.T == 3);
  CHECK(lat.k == 9);
  CHECK_THROWS_WITH_AS(build_lattice_reg2(A, natural_order(A), set),
                       doctest::Contains("totally complex"),
                       std::invalid_argument);
}

TEST_CASE("natural order closure") {
  const CyclicAlgebra A = golden();
  const std::vector<AlgElem> basis = natural_order(A);
  CHECK(basis.size() == 8);
  CHECK(basis[0] == alg_one(A));

  std::string half_gamma =
      "{\n"
      "  \"center\": {\"label\": \"Q(i)\", \"degree\": 2, \"signature\": "
      "[0, 1], \"disc\": \"-4\", \"min_poly\": [1, 0, 1]},\n"
      "  \"ext_poly_over_center\": [[-1, 0], [-1, 0], [1, 0]],\n"
      "  \"sigma_root_index\": 1,\n"
      "  \"gamma\": [\"1/2\", 0],\n"
      "  \"n\": 2\n"
      "}\n";
  const CyclicAlgebra H =
      load_algebra(write_temp("half_gamma.json", half_gamma));
  CHECK_THROWS_WITH_AS(natural_order(H), doctest::Contains("integral gamma"),
                       std::invalid_argument);

  std::string half_disc =
      "{\n"
      "  \"center\": {\"label\": \"Q(i)\", \"degree\": 2, \"signature\": "
      "[0, 1], \"disc\": \"-4\", \"min_poly\": [1, 0, 1]},\n"
      "  \"ext_poly_over_center\": [[\"-1/2\", 0], [-1, 0], [1, 0]],\n"
      "  \"sigma_root_index\": 1,\n"
      "  \"gamma\": [0, 1],\n"
      "  \"n\": 2\n"
      "}\n";
  const CyclicAlgebra D =
      load_algebra(write_temp("half_disc.json", half_disc));
  CHECK_THROWS_WITH_AS(natural_order(D), doctest::Contains("not closed"),
                       std::invalid_argument);
}

TEST_CASE("algebra spec validation errors") {
  const std::string center =
      "\"center\": {\"label\": \"Q(i)\", \"degree\": 2, \"signature\": "
      "[0, 1], \"disc\": \"-4\", \"min_poly\": [1, 0, 1]},\n";

  CHECK_THROWS_WITH_AS(
      load_algebra(write_temp(
          "no_sigma.json",
          "{\n" + center +
              "  \"ext_poly_over_center\": [[-2, 0], [0, 0], [0, 0], "
              "[1, 0]],\n  \"gamma\": [0, 1],\n  \"n\": 3\n}\n")),
      doctest::Contains("sigma_image"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      load_algebra(write_temp(
          "identity_sigma.json",
          "{\n" + center +
              "  \"ext_poly_over_center\": [[-1, 0], [-1, 0], [1, 0]],\n"
              "  \"sigma_root_index\": 0,\n  \"gamma\": [0, 1],\n"
              "  \"n\": 2\n}\n")),
      doctest::Contains("order"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      load_algebra(write_temp(
          "zero_gamma.json",
          "{\n" + center +
              "  \"ext_poly_over_center\": [[-1, 0], [-1, 0], [1, 0]],\n"
              "  \"sigma_root_index\": 1,\n  \"gamma\": [0, 0],\n"
              "  \"n\": 2\n}\n")),
      doctest::Contains("gamma"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      load_algebra(write_temp(
          "not_monic.json",
          "{\n" + center +
              "  \"ext_poly_over_center\": [[-1, 0], [-1, 0], [2, 0]],\n"
              "  \"sigma_root_index\": 1,\n  \"gamma\": [0, 1],\n"
              "  \"n\": 2\n}\n")),
      doctest::Contains("monic"), std::runtime_error);

  CHECK_THROWS_WITH_AS(
      load_algebra(write_temp(
          "bad_image.json",
          "{\n" + center +
              "  \"ext_poly_over_center\": [[-1, 0], [-1, 0], [1, 0]],\n"
              "  \"sigma_image\": [[2, 0], [0, 0]],\n  \"gamma\": [0, 1],\n"
              "  \"n\": 2\n}\n")),
      doctest::Contains("root"), std::runtime_error);

  CHECK_THROWS_AS(load_algebra("/nonexistent/algebra.json"),
                  std::runtime_error);
}

TEST_CASE("embedding choices") {
  const CyclicAlgebra A = golden();
  const EmbeddingSet set = make_embeddings(A);
  REQUIRE(set.reg1.size() == 2);
  REQUIRE(set.reg2.size() == 1);
  CHECK(std::abs(set.reg1[0].s - Cplx(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(set.reg1[1].s - Cplx(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(set.reg1[1].t - std::conj(set.reg1[0].t)) < 1e-12);
  CHECK(std::abs(set.reg2[0].s - set.reg1[0].s) < 1e-15);

  // smallest real root of t^2 - t - 1 picked deterministically
  const double golden_conj = (1.0 - std::sqrt(5.0)) / 2.0;
  CHECK(set.reg2[0].t.real() == doctest::Approx(golden_conj).epsilon(1e-12));
  CHECK(std::abs(set.reg2[0].t.imag()) < 1e-12);

  const EmbeddingSet swapped = make_embeddings(A, 1);
  CHECK(std::abs(swapped.reg2[0].s - Cplx(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(swapped.reg1[0].s - set.reg1[0].s) < 1e-15);

  const KElem i_elem = kel(A, {0, 1});
  CHECK(std::abs(embed_k(A, set.reg1[0], i_elem) - Cplx(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(embed_k(A, set.reg1[1], i_elem) - Cplx(0.0, -1.0)) < 1e-12);
}

TEST_CASE("order lattices of the golden algebra") {
  const CyclicAlgebra A = golden();
  const std::vector<AlgElem> order = natural_order(A);
  const EmbeddingSet set = make_embeddings(A);

  const OrderLattice reg2 = build_lattice_reg2(A, order, set);
  CHECK(reg2.n == 2);
  CHECK(reg2.T == 2);
  CHECK(reg2.k == 8);
  CHECK(reg2.vol == doctest::Approx(25.0).epsilon(1e-8));
  CHECK(reg2.gram.determinant() == doctest::Approx(625.0).epsilon(1e-6));

  const OrderLattice reg1 = build_lattice_reg1(A, order, set);
  CHECK(reg1.n == 2);
  CHECK(reg1.T == 4);
  CHECK(reg1.k == 8);
  CHECK(reg1.vol == doctest::Approx(400.0).epsilon(1e-8));
  // the doubled Gram halves nothing: vol1^2 = 2^{d n^2} vol2^2
  CHECK(reg1.vol * reg1.vol ==
        doctest::Approx(std::pow(2.0, 8) * reg2.vol * reg2.vol)
            .epsilon(1e-8));

  // psi(1) embeds to the identity block and attains |det| = 1
  Eigen::VectorXi e0 = Eigen::VectorXi::Zero(8);
  e0[0] = 1;
  const Eigen::MatrixXcd X = assemble_point(reg2, e0);
  CHECK(std::abs(X.determinant()) == doctest::Approx(1.0).epsilon(1e-10));

  const MinDetResult md = min_det(reg2, 3.0, DetMode::Multiblock);
  CHECK(md.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(assemble_point(reg2, md.witness).determinant()) ==
        doctest::Approx(md.value).epsilon(1e-9));
  CHECK(normalized_min_det(reg2, 3.0) ==
        doctest::Approx(0.4472135954999579).epsilon(1e-9));
  CHECK(normalized_min_det(reg1, 3.0) ==
        doctest::Approx(0.05).epsilon(1e-9));

  // conjugating the representative changes generators, not the geometry
  const OrderLattice swapped =
      build_lattice_reg2(A, order, make_embeddings(A, 1));
  CHECK((swapped.gram - reg2.gram).norm() < 1e-10);
  CHECK(swapped.vol == doctest::Approx(reg2.vol).epsilon(1e-10));
  double max_entry_diff = 0.0;
  for (int i = 0; i < reg2.k; ++i)
    max_entry_diff = std::max(
        max_entry_diff,
        (swapped.generators[i] - reg2.generators[i]).cwiseAbs().maxCoeff());
  CHECK(max_entry_diff > 1e-6);

  const OrderLattice mb = multiblock_diag(reg1);
  CHECK(mb.n == 4);
  CHECK((mb.gram - reg1.gram).norm() == 0.0);
  CHECK(min_det(mb, 3.0, DetMode::OneShot).value ==
        doctest::Approx(min_det(reg1, 3.0, DetMode::Multiblock).value)
            .epsilon(1e-9));

  EmbeddingSet corrupt = set;
  corrupt.reg1[0].s += 0.1;
  CHECK_THROWS_WITH_AS(build_lattice_reg1(A, order, corrupt),
                       doctest::Contains("embedding restriction"),
                       std::invalid_argument);

  EmbeddingSet unclosed = set;
  unclosed.reg1[1] = unclosed.reg1[0];
  CHECK_THROWS_WITH_AS(build_lattice_reg1(A, order, unclosed),
                       doctest::Contains("conjugation"),
                       std::invalid_argument);

  EmbeddingSet short_set = set;
  short_set.reg1.pop_back();
  CHECK_THROWS_AS(build_lattice_reg1(A, order, short_set),
                  std::invalid_argument);

  std::vector<AlgElem> short_order = order;
  short_order.pop_back();
  CHECK_THROWS_AS(build_lattice_reg1(A, short_order, set),
                  std::invalid_argument);
}

TEST_CASE("number field case recovers the Minkowski lattices") {
  const CyclicAlgebra A = load_algebra(data_dir() + "/qi_algebra.json");
  CHECK(A.n == 1);
  CHECK(A.dim() == 2);
  const std::vector<AlgElem> order = natural_order(A);
  const EmbeddingSet set = make_embeddings(A);

  const OrderLattice reg1 = build_lattice_reg1(A, order, set);
  CHECK(reg1.n == 1);
  CHECK(reg1.T == 2);
  CHECK(reg1.gram(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(reg1.gram(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(reg1.gram(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(reg1.vol == doctest::Approx(2.0).epsilon(1e-12));

  const OrderLattice reg2 = build_lattice_reg2(A, order, set);
  CHECK(reg2.T == 1);
  CHECK(reg2.gram(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reg2.gram(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reg2.vol == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reg1.vol * reg1.vol ==
        doctest::Approx(std::pow(2.0, 2) * reg2.vol * reg2.vol)
            .epsilon(1e-12));

  CHECK(normalized_min_det(reg1, 2.5) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(normalized_min_det(reg2, 1.5) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quartic center embeddings") {
  const CyclicAlgebra A =
      load_algebra(write_temp("q117_field.json", quartic_center_json()));
  CHECK(A.n == 1);
  CHECK(A.dim() == 4);
  const std::vector<AlgElem> order = natural_order(A);
  const EmbeddingSet set = make_embeddings(A);
  REQUIRE(set.reg1.size() == 4);
  REQUIRE(set.reg2.size() == 2);

  const OrderLattice reg1 = build_lattice_reg1(A, order, set);
  const OrderLattice reg2 = build_lattice_reg2(A, order, set);
  CHECK(reg1.T == 4);
  CHECK(reg2.T == 2);
  CHECK(reg1.vol * reg1.vol ==
        doctest::Approx(std::pow(2.0, 4) * reg2.vol * reg2.vol)
            .epsilon(1e-8));
  // vol^2 = |d_K| over all embeddings, |d_K| / 2^d over representatives
  CHECK(reg1.vol * reg1.vol == doctest::Approx(117.0).epsilon(1e-8));
  CHECK(reg2.vol * reg2.vol == doctest::Approx(117.0 / 16.0).epsilon(1e-8));
  // so the unit attains 2^{d/4} / |d_K|^{1/4}
  CHECK(normalized_min_det(reg2, 2.0) ==
        doctest::Approx(2.0 / std::pow(117.0, 0.25)).epsilon(1e-9));

  EmbeddingSet bad = set;
  bad.reg2[1] = Embedding{std::conj(set.reg2[0].s), std::conj(set.reg2[0].t)};
  CHECK_THROWS_WITH_AS(build_lattice_reg2(A, order, bad),
                       doctest::Contains("conjugate pair"),
                       std::invalid_argument);
}
