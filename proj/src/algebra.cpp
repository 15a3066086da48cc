#include "divlat/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace divlat {

namespace {

using Json = nlohmann::json;
using Cplx = std::complex<double>;

BigRat parse_rational(const Json& j) {
  if (j.is_number_integer()) return BigRat(j.get<std::int64_t>());
  if (j.is_string()) return BigRat(j.get<std::string>());
  throw std::runtime_error(
      "rational coefficients must be integers or 'a/b' strings");
}

KElem parse_k_elem(const Json& j, int dk, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dk)
    throw std::runtime_error(what + " must be an array of " +
                             std::to_string(dk) + " center coordinates");
  KElem out;
  out.reserve(dk);
  for (const auto& c : j) out.push_back(parse_rational(c));
  return out;
}

bool k_is_zero(const KElem& x) {
  return std::all_of(x.begin(), x.end(),
                     [](const BigRat& q) { return q == 0; });
}

KElem k_add(const KElem& x, const KElem& y) {
  KElem out(x);
  for (size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  return out;
}

KElem k_sub(const KElem& x, const KElem& y) {
  KElem out(x);
  for (size_t i = 0; i < out.size(); ++i) out[i] -= y[i];
  return out;
}

KElem k_neg(const KElem& x) {
  KElem out(x);
  for (auto& q : out) q = -q;
  return out;
}

KElem k_mul(const CyclicAlgebra& A, const KElem& x, const KElem& y) {
  const int d = A.dK();
  std::vector<BigRat> prod(2 * d - 1, BigRat(0));
  for (int i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < d; ++j) prod[i + j] += x[i] * y[j];
  }
  for (int t = 2 * d - 2; t >= d; --t) {
    if (prod[t] == 0) continue;
    const BigRat c = prod[t];
    prod[t] = 0;
    for (int l = 0; l < d; ++l)
      prod[t - d + l] -= c * BigRat(A.center.min_poly[l]);
  }
  return KElem(prod.begin(), prod.begin() + d);
}

bool e_is_zero(const EElem& x) {
  return std::all_of(x.begin(), x.end(), k_is_zero);
}

// theta as an element of E (reduced, so for n = 1 it lies in K)
EElem e_theta(const CyclicAlgebra& A) {
  EElem out(A.n, k_zero(A));
  if (A.n == 1)
    out[0] = k_neg(A.ext_poly[0]);
  else
    out[1] = k_one(A);
  return out;
}

// Horner evaluation of an E element's theta-coordinates at another point
EElem e_subst(const CyclicAlgebra& A, const EElem& x, const EElem& z) {
  EElem acc = e_zero(A);
  for (int i = A.n; i-- > 0;)
    acc = e_add(A, e_mul(A, acc, z), e_from_k(A, x[i]));
  return acc;
}

// g evaluated at an E point, exactly
EElem eval_ext_poly(const CyclicAlgebra& A, const EElem& z) {
  EElem acc = e_zero(A);
  for (int l = A.n; l >= 0; --l)
    acc = e_add(A, e_mul(A, acc, z), e_from_k(A, A.ext_poly[l]));
  return acc;
}

void precompute_sigma(CyclicAlgebra& A) {
  const EElem theta = e_theta(A);
  std::vector<EElem> sigma_theta(A.n);
  sigma_theta[0] = theta;
  for (int j = 1; j < A.n; ++j)
    sigma_theta[j] = e_subst(A, sigma_theta[j - 1], A.sigma_image);

  // order check: sigma^n(theta) = theta and no earlier return
  EElem cycle = A.n == 1 ? A.sigma_image
                         : e_subst(A, sigma_theta[A.n - 1], A.sigma_image);
  if (!(cycle == theta))
    throw std::runtime_error("sigma does not have order n: sigma^n moves the "
                             "extension generator");
  for (int j = 1; j < A.n; ++j)
    if (sigma_theta[j] == theta)
      throw std::runtime_error("sigma has order " + std::to_string(j) +
                               ", expected " + std::to_string(A.n));

  A.sigma_theta_pows.assign(A.n, {});
  for (int j = 0; j < A.n; ++j) {
    auto& pows = A.sigma_theta_pows[j];
    pows.resize(A.n);
    pows[0] = e_one(A);
    for (int i = 1; i < A.n; ++i)
      pows[i] = e_mul(A, pows[i - 1], sigma_theta[j]);
  }
}

// roots of a complex polynomial via the companion matrix, Newton-polished
std::vector<Cplx> poly_roots(const std::vector<Cplx>& coeffs) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on a companion matrix");
  std::vector<Cplx> roots(es.eigenvalues().data(),
                          es.eigenvalues().data() + deg);
  for (auto& z : roots) {
    for (int it = 0; it < 60; ++it) {
      Cplx f = 0.0, fp = 0.0;
      for (int i = deg; i >= 0; --i) {
        fp = fp * z + f;
        f = f * z + coeffs[i];
      }
      if (std::abs(fp) == 0.0) break;
      const Cplx dz = f / fp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Cplx& a, const Cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<Cplx> center_poly_complex(const CyclicAlgebra& A) {
  std::vector<Cplx> h;
  h.reserve(A.center.min_poly.size());
  for (const BigInt& c : A.center.min_poly)
    h.emplace_back(c.convert_to<double>(), 0.0);
  return h;
}

// extension polynomial with K-coefficients embedded at s
std::vector<Cplx> ext_poly_at(const CyclicAlgebra& A, Cplx s) {
  std::vector<Cplx> g(A.n + 1);
  for (int l = 0; l <= A.n; ++l) {
    Cplx acc = 0.0;
    for (int m = A.dK(); m-- > 0;)
      acc = acc * s + Cplx(A.ext_poly[l][m].convert_to<double>(), 0.0);
    g[l] = acc;
  }
  return g;
}

double poly_scale(const std::vector<Cplx>& coeffs, Cplx z) {
  double scale = 0.0, zp = 1.0;
  const double az = std::max(1.0, std::abs(z));
  for (const Cplx& c : coeffs) {
    scale += std::abs(c) * zp;
    zp *= az;
  }
  return std::max(scale, 1.0);
}

Cplx eval_cpoly(const std::vector<Cplx>& coeffs, Cplx z) {
  Cplx acc = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

void check_embedding_valid(const CyclicAlgebra& A, const Embedding& emb) {
  const auto h = center_poly_complex(A);
  if (std::abs(eval_cpoly(h, emb.s)) > 1e-10 * poly_scale(h, emb.s))
    throw std::invalid_argument(
        "embedding restriction check failed: s is not a center root");
  const auto g = ext_poly_at(A, emb.s);
  if (std::abs(eval_cpoly(g, emb.t)) > 1e-10 * poly_scale(g, emb.t))
    throw std::invalid_argument(
        "embedding restriction check failed: t is not an extension root");
}

OrderLattice emit_lattice(const CyclicAlgebra& A,
                          const std::vector<AlgElem>& order,
                          const std::vector<Embedding>& embs) {
  if (static_cast<int>(order.size()) != A.dim())
    throw std::invalid_argument("order basis must have d n^2 elements");
  const int n = A.n;
  const int blocks = static_cast<int>(embs.size());
  std::vector<Eigen::MatrixXcd> gens;
  gens.reserve(order.size());
  for (const AlgElem& b : order) {
    const EMatrix M = left_regular_matrix(A, b);
    Eigen::MatrixXcd G(n, n * blocks);
    for (int e = 0; e < blocks; ++e)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          G(i, e * n + j) = embed_e(A, embs[e], M[i][j]);
    gens.push_back(std::move(G));
  }
  return make_lattice(std::move(gens));
}

bool near(Cplx a, Cplx b) { return std::abs(a - b) <= 1e-9; }

} // namespace

KElem k_zero(const CyclicAlgebra& A) { return KElem(A.dK(), BigRat(0)); }

KElem k_one(const CyclicAlgebra& A) {
  KElem out(A.dK(), BigRat(0));
  out[0] = 1;
  return out;
}

bool k_is_integral(const KElem& x) {
  return std::all_of(x.begin(), x.end(), [](const BigRat& q) {
    return boost::multiprecision::denominator(q) == 1;
  });
}

EElem e_zero(const CyclicAlgebra& A) { return EElem(A.n, k_zero(A)); }

EElem e_one(const CyclicAlgebra& A) {
  EElem out = e_zero(A);
  out[0] = k_one(A);
  return out;
}

EElem e_from_k(const CyclicAlgebra& A, const KElem& x) {
  EElem out = e_zero(A);
  out[0] = x;
  return out;
}

EElem e_add(const CyclicAlgebra& A, const EElem& x, const EElem& y) {
  EElem out(x);
  for (int i = 0; i < A.n; ++i) out[i] = k_add(out[i], y[i]);
  return out;
}

EElem e_sub(const CyclicAlgebra& A, const EElem& x, const EElem& y) {
  EElem out(x);
  for (int i = 0; i < A.n; ++i) out[i] = k_sub(out[i], y[i]);
  return out;
}

EElem e_scale(const CyclicAlgebra& A, const KElem& c, const EElem& x) {
  EElem out(x);
  for (int i = 0; i < A.n; ++i) out[i] = k_mul(A, c, out[i]);
  return out;
}

EElem e_mul(const CyclicAlgebra& A, const EElem& x, const EElem& y) {
  const int n = A.n;
  std::vector<KElem> prod(2 * n - 1, k_zero(A));
  for (int i = 0; i < n; ++i) {
    if (k_is_zero(x[i])) continue;
    for (int j = 0; j < n; ++j)
      prod[i + j] = k_add(prod[i + j], k_mul(A, x[i], y[j]));
  }
  for (int t = 2 * n - 2; t >= n; --t) {
    if (k_is_zero(prod[t])) continue;
    const KElem c = prod[t];
    prod[t] = k_zero(A);
    for (int l = 0; l < n; ++l)
      prod[t - n + l] = k_sub(prod[t - n + l], k_mul(A, c, A.ext_poly[l]));
  }
  return EElem(prod.begin(), prod.begin() + n);
}

EElem e_sigma(const CyclicAlgebra& A, const EElem& x, int power) {
  const int j = ((power % A.n) + A.n) % A.n;
  if (j == 0) return x;
  EElem out = e_zero(A);
  for (int i = 0; i < A.n; ++i) {
    if (k_is_zero(x[i])) continue;
    out = e_add(A, out, e_scale(A, x[i], A.sigma_theta_pows[j][i]));
  }
  return out;
}

AlgElem alg_zero(const CyclicAlgebra& A) { return AlgElem(A.n, e_zero(A)); }

AlgElem alg_one(const CyclicAlgebra& A) {
  AlgElem out = alg_zero(A);
  out[0] = e_one(A);
  return out;
}

AlgElem alg_u(const CyclicAlgebra& A) {
  AlgElem out = alg_zero(A);
  if (A.n == 1)
    out[0] = e_from_k(A, A.gamma); // u = gamma when u^1 = gamma
  else
    out[1] = e_one(A);
  return out;
}

AlgElem alg_add(const CyclicAlgebra& A, const AlgElem& a, const AlgElem& b) {
  AlgElem out(a);
  for (int i = 0; i < A.n; ++i) out[i] = e_add(A, out[i], b[i]);
  return out;
}

AlgElem alg_mul(const CyclicAlgebra& A, const AlgElem& a, const AlgElem& b) {
  AlgElem out = alg_zero(A);
  for (int i = 0; i < A.n; ++i) {
    if (e_is_zero(a[i])) continue;
    for (int j = 0; j < A.n; ++j) {
      if (e_is_zero(b[j])) continue;
      EElem term = e_mul(A, e_sigma(A, a[i], j), b[j]);
      const int k = i + j;
      if (k >= A.n) term = e_scale(A, A.gamma, term);
      out[k % A.n] = e_add(A, out[k % A.n], term);
    }
  }
  return out;
}

EMatrix left_regular_matrix(const CyclicAlgebra& A, const AlgElem& a) {
  const int n = A.n;
  EMatrix M(n, std::vector<EElem>(n, e_zero(A)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      EElem v = e_sigma(A, a[(i - j + n) % n], j);
      if (i < j) v = e_scale(A, A.gamma, v);
      M[i][j] = v;
    }
  return M;
}

EMatrix e_mat_add(const CyclicAlgebra& A, const EMatrix& M, const EMatrix& N) {
  EMatrix out(M);
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < out[i].size(); ++j)
      out[i][j] = e_add(A, out[i][j], N[i][j]);
  return out;
}

EMatrix e_mat_mul(const CyclicAlgebra& A, const EMatrix& M, const EMatrix& N) {
  const size_t n = M.size();
  EMatrix out(n, std::vector<EElem>(n, e_zero(A)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t l = 0; l < n; ++l)
        out[i][j] =
            e_add(A, out[i][j], e_mul(A, M[i][l], N[l][j]));
  return out;
}

std::vector<AlgElem> natural_order(const CyclicAlgebra& A) {
  if (!k_is_integral(A.gamma))
    throw std::invalid_argument("natural order requires an integral gamma");
  std::vector<AlgElem> basis;
  basis.reserve(A.dim());
  const EElem theta = e_theta(A);
  std::vector<EElem> theta_pow(A.n);
  theta_pow[0] = e_one(A);
  for (int l = 1; l < A.n; ++l)
    theta_pow[l] = e_mul(A, theta_pow[l - 1], theta);
  for (int j = 0; j < A.n; ++j)
    for (int l = 0; l < A.n; ++l)
      for (int m = 0; m < A.dK(); ++m) {
        AlgElem b = alg_zero(A);
        KElem s_pow = k_zero(A);
        s_pow[m] = 1;
        b[j] = e_scale(A, s_pow, theta_pow[l]);
        basis.push_back(std::move(b));
      }

  for (size_t p = 0; p < basis.size(); ++p)
    for (size_t q = 0; q < basis.size(); ++q) {
      const AlgElem prod = alg_mul(A, basis[p], basis[q]);
      for (const EElem& x : prod)
        for (const KElem& c : x)
          if (!k_is_integral(c))
            throw std::invalid_argument(
                "order not closed under multiplication: basis product " +
                std::to_string(p) + " * " + std::to_string(q) +
                " has a non-integral coordinate");
    }
  return basis;
}

CyclicAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algebra spec: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
  }

  CyclicAlgebra A;
  try {
    A.center = parse_field_record_json(j.at("center").dump());
    A.n = j.at("n").get<int>();
    if (A.n < 1) throw std::runtime_error("n must be >= 1");
    A.division_asserted = j.value("division_asserted", false);
    const int dk = A.center.degree;

    const Json& gj = j.at("ext_poly_over_center");
    if (!gj.is_array() || static_cast<int>(gj.size()) != A.n + 1)
      throw std::runtime_error(
          "ext_poly_over_center must list n + 1 coefficients");
    for (const auto& c : gj)
      A.ext_poly.push_back(parse_k_elem(c, dk, "extension coefficient"));
    if (!(A.ext_poly.back() == k_one(A)))
      throw std::runtime_error("extension polynomial must be monic");

    A.gamma = parse_k_elem(j.at("gamma"), dk, "gamma");
    if (k_is_zero(A.gamma)) throw std::runtime_error("gamma must be nonzero");

    const int root_index = j.value("sigma_root_index", 0);
    if (j.contains("sigma_image")) {
      const Json& sj = j.at("sigma_image");
      if (!sj.is_array() || static_cast<int>(sj.size()) != A.n)
        throw std::runtime_error("sigma_image must list n coefficients");
      for (const auto& c : sj)
        A.sigma_image.push_back(parse_k_elem(c, dk, "sigma_image entry"));
    } else if (A.n == 1) {
      if (root_index != 0)
        throw std::runtime_error("sigma_root_index out of range for n = 1");
      A.sigma_image = e_theta(A);
    } else if (A.n == 2) {
      if (root_index < 0 || root_index > 1)
        throw std::runtime_error("sigma_root_index out of range for n = 2");
      if (root_index == 0)
        A.sigma_image = e_theta(A);
      else
        A.sigma_image =
            e_sub(A, e_from_k(A, k_neg(A.ext_poly[1])), e_theta(A));
    } else {
      throw std::runtime_error(
          "degree > 2 extensions need an explicit sigma_image");
    }

    if (!e_is_zero(eval_ext_poly(A, A.sigma_image)))
      throw std::runtime_error(
          "sigma image is not a root of the extension polynomial");
    precompute_sigma(A);
  } catch (const Json::exception& e) {
    throw std::runtime_error("algebra spec " + path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error("algebra spec " + path + ": " + e.what());
  }
  return A;
}

EmbeddingSet make_embeddings(const CyclicAlgebra& A, unsigned swap_mask) {
  const auto roots = poly_roots(center_poly_complex(A));
  std::vector<Cplx> reals, reps;
  for (Cplx z : roots) {
    if (std::fabs(z.imag()) <= 1e-9 * (1.0 + std::abs(z)))
      reals.emplace_back(z.real(), 0.0);
    else if (z.imag() > 0.0)
      reps.push_back(z);
  }
  if (static_cast<int>(reals.size()) != A.center.r1 ||
      static_cast<int>(reps.size()) != A.center.r2)
    throw std::runtime_error(
        "center root signature does not match the field record");

  EmbeddingSet set;
  for (size_t p = 0; p < reps.size(); ++p) {
    const Cplx s = reps[p];
    const Cplx t = poly_roots(ext_poly_at(A, s)).at(0);
    const Embedding e1{s, t};
    const Embedding e2{std::conj(s), std::conj(t)};
    set.reg1.push_back(e1);
    set.reg1.push_back(e2);
    set.reg2.push_back((swap_mask >> p) & 1u ? e2 : e1);
  }
  for (const Cplx s : reals) {
    const Cplx t = poly_roots(ext_poly_at(A, s)).at(0);
    set.reg1.push_back({s, t});
  }
  return set;
}

std::complex<double> embed_k(const CyclicAlgebra& A, const Embedding& emb,
                             const KElem& x) {
  Cplx acc = 0.0;
  for (int m = A.dK(); m-- > 0;)
    acc = acc * emb.s + Cplx(x[m].convert_to<double>(), 0.0);
  return acc;
}

std::complex<double> embed_e(const CyclicAlgebra& A, const Embedding& emb,
                             const EElem& x) {
  Cplx acc = 0.0;
  for (int l = A.n; l-- > 0;) acc = acc * emb.t + embed_k(A, emb, x[l]);
  return acc;
}

OrderLattice build_lattice_reg1(const CyclicAlgebra& A,
                                const std::vector<AlgElem>& order,
                                const EmbeddingSet& set) {
  if (static_cast<int>(set.reg1.size()) != A.dK())
    throw std::invalid_argument(
        "reg1 embedding set must cover all center embeddings");
  for (const Embedding& emb : set.reg1) check_embedding_valid(A, emb);
  for (const Embedding& emb : set.reg1) {
    if (std::fabs(emb.s.imag()) <= 1e-9) continue;
    const bool paired =
        std::any_of(set.reg1.begin(), set.reg1.end(), [&](const Embedding& o) {
          return near(o.s, std::conj(emb.s)) && near(o.t, std::conj(emb.t));
        });
    if (!paired)
      throw std::invalid_argument(
          "reg1 embedding set must be closed under conjugation");
  }
  return emit_lattice(A, order, set.reg1);
}

OrderLattice build_lattice_reg2(const CyclicAlgebra& A,
                                const std::vector<AlgElem>& order,
                                const EmbeddingSet& set) {
  if (A.center.r1 != 0)
    throw std::invalid_argument("reg2 requires a totally complex center");
  if (static_cast<int>(set.reg2.size()) != A.dK() / 2)
    throw std::invalid_argument(
        "reg2 embedding set must pick one embedding per conjugate pair");
  for (const Embedding& emb : set.reg2) check_embedding_valid(A, emb);
  for (size_t i = 0; i < set.reg2.size(); ++i)
    for (size_t j = i + 1; j < set.reg2.size(); ++j)
      if (near(set.reg2[i].s, std::conj(set.reg2[j].s)) &&
          near(set.reg2[i].t, std::conj(set.reg2[j].t)))
        throw std::invalid_argument(
            "reg2 embedding set contains a conjugate pair");
  return emit_lattice(A, order, set.reg2);
}

} // namespace divlat
