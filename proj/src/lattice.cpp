#include "divlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace divlat {

namespace {

void check_shapes(const std::vector<Eigen::MatrixXcd>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generator matrices");
  for (const auto& g : gens)
    if (g.rows() != gens[0].rows() || g.cols() != gens[0].cols())
      throw std::invalid_argument("generator matrices differ in shape");
}

// x with x[i..] fixed and accumulated quadratic form `used`; U is the upper
// Cholesky factor of the Gram matrix, so ||X||^2 = ||U x||^2.
void descend(const Eigen::MatrixXd& U, double bound, int i, double used,
             Eigen::VectorXi& x, std::vector<Eigen::VectorXi>& out) {
  const int k = static_cast<int>(U.rows());
  double si = 0.0;
  for (int j = i + 1; j < k; ++j) si += U(i, j) * x[j];
  const double budget = bound - used;
  if (budget < 0.0) return;
  const double rad = std::sqrt(budget);
  const int lo = static_cast<int>(std::ceil((-rad - si) / U(i, i) - 1e-9));
  const int hi = static_cast<int>(std::floor((rad - si) / U(i, i) + 1e-9));
  for (int v = lo; v <= hi; ++v) {
    x[i] = v;
    const double term = U(i, i) * v + si;
    const double q = used + term * term;
    if (q > bound) continue;
    if (i == 0) {
      if (!x.isZero()) out.push_back(x);
    } else {
      descend(U, bound, i - 1, q, x, out);
    }
  }
  x[i] = 0;
}

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

double quad_form(const OrderLattice& lat, const Eigen::VectorXi& x) {
  const Eigen::VectorXd xd = x.cast<double>();
  return xd.dot(lat.gram * xd);
}

double block_abs_det(const Eigen::MatrixXcd& X, int n) {
  const int m = static_cast<int>(X.cols()) / n;
  double v = 1.0;
  for (int b = 0; b < m; ++b)
    v *= std::abs(Eigen::MatrixXcd(X.middleCols(b * n, n)).determinant());
  return v;
}

} // namespace

std::pair<Eigen::MatrixXd, double> gram_and_volume(
    const std::vector<Eigen::MatrixXcd>& gens) {
  check_shapes(gens);
  const int k = static_cast<int>(gens.size());
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v =
          (gens[i].array() * gens[j].array().conjugate()).sum().real();
      g(i, j) = v;
      g(j, i) = v;
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const double emin = es.eigenvalues()(0);
  const double emax = es.eigenvalues()(k - 1);
  if (!(emax > 0.0) || emin <= 1e-8 * emax)
    throw std::invalid_argument("rank-deficient generator set");

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  const double vol = std::sqrt(ldlt.vectorD().prod());

  // orthogonalization cross-check on the flattened real coordinates
  const int cols = static_cast<int>(gens[0].size());
  Eigen::MatrixXd flat(2 * cols, k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXcd v =
        Eigen::Map<const Eigen::VectorXcd>(gens[i].data(), cols);
    flat.col(i) << v.real(), v.imag();
  }
  const Eigen::MatrixXd r =
      flat.householderQr().matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const double vol_qr = r.diagonal().array().abs().prod();
  if (std::fabs(vol - vol_qr) > 1e-10 * std::max(vol, 1e-300))
    throw std::runtime_error("volume cross-check failed: " +
                             std::to_string(vol) + " vs " +
                             std::to_string(vol_qr));
  return {g, vol};
}

OrderLattice make_lattice(std::vector<Eigen::MatrixXcd> generators) {
  check_shapes(generators);
  OrderLattice lat;
  lat.n = static_cast<int>(generators[0].rows());
  lat.T = static_cast<int>(generators[0].cols());
  lat.k = static_cast<int>(generators.size());
  auto gv = gram_and_volume(generators);
  lat.gram = std::move(gv.first);
  lat.vol = gv.second;
  lat.generators = std::move(generators);
  return lat;
}

std::vector<Eigen::VectorXi> enumerate_ball(const OrderLattice& lat,
                                            double R) {
  if (!(R > 0.0)) throw std::invalid_argument("enumerate_ball requires R > 0");
  const int k = lat.k;
  const Eigen::LLT<Eigen::MatrixXd> llt(lat.gram);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("Gram matrix not positive definite");
  const Eigen::MatrixXd U = llt.matrixL().transpose();
  const double bound = R * R * (1.0 + 1e-12) + 1e-12;
  const double rad = std::sqrt(bound);
  const int top = k - 1;
  const int lo = static_cast<int>(std::ceil(-rad / U(top, top) - 1e-9));
  const int hi = static_cast<int>(std::floor(rad / U(top, top) + 1e-9));

  auto run_range = [&](int a, int b) {
    std::vector<Eigen::VectorXi> out;
    Eigen::VectorXi x = Eigen::VectorXi::Zero(k);
    for (int v = a; v <= b; ++v) {
      x[top] = v;
      const double term = U(top, top) * v;
      const double q = term * term;
      if (q > bound) continue;
      if (top == 0) {
        if (v != 0) out.push_back(x);
      } else {
        descend(U, bound, top - 1, q, x, out);
      }
    }
    return out;
  };

  const int total = hi - lo + 1;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (total < 8 || hw < 2) return run_range(lo, hi);

  const int nchunks = std::min(total, static_cast<int>(4 * hw));
  std::vector<std::future<std::vector<Eigen::VectorXi>>> futs;
  for (int c = 0; c < nchunks; ++c) {
    const int a = lo + static_cast<int>(static_cast<long>(total) * c / nchunks);
    const int b =
        lo + static_cast<int>(static_cast<long>(total) * (c + 1) / nchunks) - 1;
    if (a > b) continue;
    futs.push_back(std::async(std::launch::async, run_range, a, b));
  }
  std::vector<Eigen::VectorXi> out;
  for (auto& f : futs) {
    auto part = f.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Eigen::MatrixXcd assemble_point(const OrderLattice& lat,
                                const Eigen::VectorXi& coords) {
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(lat.n, lat.T);
  for (int i = 0; i < lat.k; ++i)
    if (coords[i] != 0) X += static_cast<double>(coords[i]) * lat.generators[i];
  return X;
}

OrderLattice multiblock_diag(const OrderLattice& lat) {
  if (lat.n <= 0 || lat.T % lat.n != 0)
    throw std::invalid_argument("multiblock_diag requires square blocks");
  const int m = lat.T / lat.n;
  OrderLattice out;
  out.n = lat.T;
  out.T = lat.T;
  out.k = lat.k;
  out.gram = lat.gram;
  out.vol = lat.vol;
  out.generators.reserve(lat.generators.size());
  for (const auto& g : lat.generators) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(lat.T, lat.T);
    for (int b = 0; b < m; ++b)
      D.block(b * lat.n, b * lat.n, lat.n, lat.n) =
          g.middleCols(b * lat.n, lat.n);
    out.generators.push_back(std::move(D));
  }
  return out;
}

MinDetResult min_det(const OrderLattice& lat, double R, DetMode mode) {
  if (mode == DetMode::Multiblock && lat.T % lat.n != 0)
    throw std::invalid_argument("Multiblock mode requires square blocks");
  const auto pts = enumerate_ball(lat, R);
  if (pts.empty())
    throw std::runtime_error("min_det: no nonzero lattice point within R = " +
                             std::to_string(R));
  MinDetResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& x : pts) {
    const Eigen::MatrixXcd X = assemble_point(lat, x);
    double v;
    if (mode == DetMode::OneShot) {
      v = std::sqrt(std::abs((X * X.adjoint()).determinant()));
    } else {
      v = block_abs_det(X, lat.n);
    }
    if (v < best.value || (v == best.value && lex_less(x, best.witness)))
      best = {v, x};
  }
  return best;
}

double normalized_min_det(const OrderLattice& lat, double R) {
  const MinDetResult md = min_det(lat, R, DetMode::Multiblock);
  return md.value /
         std::pow(lat.vol, static_cast<double>(lat.T) / lat.k);
}

ShapedCode shape_and_theta(const OrderLattice& lat, double R, int T) {
  if (T < 1) throw std::invalid_argument("block length T must be >= 1");
  ShapedCode code;
  code.points = enumerate_ball(lat, R);
  if (code.points.empty())
    throw std::runtime_error("shape_and_theta: empty code at R = " +
                             std::to_string(R));
  code.lattice = lat;
  code.radius = R;
  code.T = T;
  double energy = 0.0;
  for (const auto& x : code.points) energy += quad_form(lat, x);
  code.theta = std::sqrt(T * static_cast<double>(code.points.size()) / energy);
  return code;
}

double pep_union_bound(const ShapedCode& code, const PepParams& p,
                       PepForm form) {
  if (!(p.rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (p.n_r < 1 || p.n < 1) throw std::invalid_argument("bad antenna counts");
  if (p.c < 0.0) throw std::invalid_argument("c must be >= 0");
  const OrderLattice& lat = code.lattice;
  if (p.n != lat.n)
    throw std::invalid_argument("transmit antenna count differs from the "
                                "lattice block row count");
  if (lat.T % lat.n != 0)
    throw std::invalid_argument("pep bounds require square blocks");
  const int N = lat.T; // size of the diag-assembled square matrix
  const double th2 = code.theta * code.theta;
  const double nr = p.n_r;

  if (form == PepForm::MinDet) {
    const auto diffs = enumerate_ball(lat, 2.0 * code.radius);
    return static_cast<double>(diffs.size()) * std::pow(4.0 * p.n, N * nr) /
           (std::pow(p.c, 2.0 * nr) * std::pow(th2, N * nr) *
            std::pow(p.rho, N * nr));
  }

  const auto diffs = enumerate_ball(lat, 2.0 * code.radius);
  const int m = lat.T / lat.n;
  double sum = 0.0;
  const double coef = p.rho * th2 / (4.0 * p.n);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(lat.n, lat.n);
  for (const auto& x : diffs) {
    const Eigen::MatrixXcd D = assemble_point(lat, x);
    if (form == PepForm::Exact) {
      double prod = 1.0;
      for (int b = 0; b < m; ++b) {
        const Eigen::MatrixXcd B = D.middleCols(b * lat.n, lat.n);
        prod *= (eye + coef * B * B.adjoint()).determinant().real();
      }
      sum += 1.0 / std::pow(prod, nr);
    } else {
      const double absdet = block_abs_det(D, lat.n);
      if (absdet < 1e-9 * std::pow(std::max(D.norm(), 1.0), N))
        throw std::runtime_error(
            "singular difference matrix in the high-SNR sum");
      sum += 1.0 / std::pow(absdet, 2.0 * nr);
    }
  }
  if (form == PepForm::HighSnr)
    sum *= std::pow(4.0 * p.n / (p.rho * th2), N * nr);
  return sum;
}

ScalingFit spherical_scaling_check(const OrderLattice& lat,
                                   const std::vector<double>& radii) {
  if (radii.size() < 4)
    throw std::invalid_argument("scaling check needs at least 4 radii");
  const auto [mn, mx] = std::minmax_element(radii.begin(), radii.end());
  if (!(*mn > 0.0) || *mx < 4.0 * *mn)
    throw std::invalid_argument("radii must span at least a factor of 4");
  std::vector<double> lx, lcount, lenergy;
  for (const double r : radii) {
    const auto pts = enumerate_ball(lat, r);
    double energy = 0.0;
    for (const auto& x : pts) energy += quad_form(lat, x);
    if (pts.empty() || energy <= 0.0)
      throw std::invalid_argument("degenerate fit: empty ball at R = " +
                                  std::to_string(r));
    lx.push_back(std::log(r));
    lcount.push_back(std::log(static_cast<double>(pts.size())));
    lenergy.push_back(std::log(energy));
  }
  const auto slope = [&](const std::vector<double>& y) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += y[i];
    }
    const double mxx = sx / n, myy = sy / n;
    double num = 0, den = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      num += (lx[i] - mxx) * (y[i] - myy);
      den += (lx[i] - mxx) * (lx[i] - mxx);
    }
    if (den <= 0.0) throw std::invalid_argument("degenerate fit: equal radii");
    return num / den;
  };
  return {slope(lcount), slope(lenergy)};
}

} // namespace divlat
