#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "divlat/bigint.hpp"
#include "divlat/lattice.hpp"
#include "divlat/numfields.hpp"

namespace divlat {

// Exact arithmetic: a center element is a rational coordinate vector against
// the power basis of K, an extension element a length-n vector of those
// against the power basis of E over K, and an algebra element a length-n
// vector of extension elements against 1, u, ..., u^{n-1}.
using KElem = std::vector<BigRat>;
using EElem = std::vector<KElem>;
using AlgElem = std::vector<EElem>;
using EMatrix = std::vector<std::vector<EElem>>;

// Cyclic algebra (E/K, sigma, gamma): E = K[t]/(g) with Galois group
// generated by sigma, u t u^{-1} = sigma(t), u^n = gamma.
struct CyclicAlgebra {
  FieldRecord center;
  std::vector<KElem> ext_poly; // g, monic of degree n, low to high
  EElem sigma_image;           // sigma(theta) for the class of t
  KElem gamma;
  int n = 1;
  bool division_asserted = false;

  std::vector<std::vector<EElem>> sigma_theta_pows; // [j][i] = sigma^j(theta)^i

  int dK() const { return center.degree; }
  int dim() const { return center.degree * n * n; }
};

CyclicAlgebra load_algebra(const std::string& path);

KElem k_zero(const CyclicAlgebra& A);
KElem k_one(const CyclicAlgebra& A);
bool k_is_integral(const KElem& x);

EElem e_zero(const CyclicAlgebra& A);
EElem e_one(const CyclicAlgebra& A);
EElem e_from_k(const CyclicAlgebra& A, const KElem& x);
EElem e_add(const CyclicAlgebra& A, const EElem& x, const EElem& y);
EElem e_sub(const CyclicAlgebra& A, const EElem& x, const EElem& y);
EElem e_mul(const CyclicAlgebra& A, const EElem& x, const EElem& y);
EElem e_scale(const CyclicAlgebra& A, const KElem& c, const EElem& x);
EElem e_sigma(const CyclicAlgebra& A, const EElem& x, int power = 1);

AlgElem alg_zero(const CyclicAlgebra& A);
AlgElem alg_one(const CyclicAlgebra& A);
AlgElem alg_u(const CyclicAlgebra& A);
AlgElem alg_add(const CyclicAlgebra& A, const AlgElem& a, const AlgElem& b);
AlgElem alg_mul(const CyclicAlgebra& A, const AlgElem& a, const AlgElem& b);

// The left regular representation of a = sum u^i x_i on the basis u^j: an
// n x n matrix over E with gamma twisting the above-diagonal wrap-around.
EMatrix left_regular_matrix(const CyclicAlgebra& A, const AlgElem& a);
EMatrix e_mat_add(const CyclicAlgebra& A, const EMatrix& M, const EMatrix& N);
EMatrix e_mat_mul(const CyclicAlgebra& A, const EMatrix& M, const EMatrix& N);

// Basis u^j theta^l s^m of the order O_K[theta][u]; multiplicative closure
// is verified exactly and requires an integral gamma.
std::vector<AlgElem> natural_order(const CyclicAlgebra& A);

// Complex embedding of E given by images of the center generator s and the
// extension generator t.
struct Embedding {
  std::complex<double> s, t;
};

struct EmbeddingSet {
  std::vector<Embedding> reg1; // all d embeddings, conjugate pairs adjacent
  std::vector<Embedding> reg2; // one per conjugate pair (totally complex K)
};

// Deterministic embedding choice; bit p of swap_mask replaces pair p's
// reg2 representative by its conjugate.
EmbeddingSet make_embeddings(const CyclicAlgebra& A, unsigned swap_mask = 0);

std::complex<double> embed_k(const CyclicAlgebra& A, const Embedding& emb,
                             const KElem& x);
std::complex<double> embed_e(const CyclicAlgebra& A, const Embedding& emb,
                             const EElem& x);

// Lattice of horizontally concatenated alpha_i(psi(b)) blocks over all d
// embeddings of K.
OrderLattice build_lattice_reg1(const CyclicAlgebra& A,
                                const std::vector<AlgElem>& order,
                                const EmbeddingSet& set);

// Same with one embedding per conjugate pair; K must be totally complex.
OrderLattice build_lattice_reg2(const CyclicAlgebra& A,
                                const std::vector<AlgElem>& order,
                                const EmbeddingSet& set);

} // namespace divlat
