#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace divlat {

// Lattice of complex n x T generator matrices under <X, Y> = Re tr(X Y^*).
struct OrderLattice {
  std::vector<Eigen::MatrixXcd> generators;
  Eigen::MatrixXd gram;
  double vol = 0.0;
  int n = 0, T = 0, k = 0;
};

// Gram matrix and volume (sqrt det), the latter cross-checked against an
// orthogonalization-based computation; throws when rank-deficient.
std::pair<Eigen::MatrixXd, double> gram_and_volume(
    const std::vector<Eigen::MatrixXcd>& generators);

OrderLattice make_lattice(std::vector<Eigen::MatrixXcd> generators);

// Integer coordinate vectors of the nonzero points with ||X||_F <= R, in
// deterministic lexicographic-by-level order.
std::vector<Eigen::VectorXi> enumerate_ball(const OrderLattice& lat, double R);

Eigen::MatrixXcd assemble_point(const OrderLattice& lat,
                                const Eigen::VectorXi& coords);

// Square block-diagonal lattice diag(X_1, ..., X_m) from n x nm generators;
// the Frobenius Gram is unchanged.
OrderLattice multiblock_diag(const OrderLattice& lat);

enum class DetMode { OneShot, Multiblock };

struct MinDetResult {
  double value = 0.0;
  Eigen::VectorXi witness;
};

// Minimum of sqrt|det(X X^*)| (OneShot) or of the block-diagonal |det|
// (Multiblock) over the nonzero ball; throws when the ball is empty.
MinDetResult min_det(const OrderLattice& lat, double R, DetMode mode);

// delta estimate: Multiblock min_det over the R-ball divided by vol^{T/k}.
double normalized_min_det(const OrderLattice& lat, double R);

struct ShapedCode {
  OrderLattice lattice;
  std::vector<Eigen::VectorXi> points;
  double radius = 0.0;
  double theta = 0.0; // energy normalization: theta^2 mean ||X||^2 = T
  int T = 0;
};

ShapedCode shape_and_theta(const OrderLattice& lat, double R, int T);

struct PepParams {
  double rho = 1.0; // SNR
  int n_r = 1;      // receive antennas
  int n = 1;        // transmit antennas
  double c = 1.0;   // minimum determinant
};

enum class PepForm { Exact, HighSnr, MinDet };

// Union bound over the difference ball of radius 2R around the shaped code.
double pep_union_bound(const ShapedCode& code, const PepParams& params,
                       PepForm form);

struct ScalingFit {
  double count_slope = 0.0;
  double energy_slope = 0.0;
};

// log-log regression of ball point count and energy sum against the radius.
ScalingFit spherical_scaling_check(const OrderLattice& lat,
                                   const std::vector<double>& radii);

} // namespace divlat
