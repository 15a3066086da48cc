#pragma once

namespace divlat {

// Shared numeric knobs for series truncation and adaptive quadrature.
struct QuadratureConfig {
  double rel_tol = 1e-10;    // target relative error for integrals
  double upper_cut = 60.0;   // integrand support cutoff (< 1e-24 beyond)
  double series_tol = 1e-12; // geometric tail cutoff for infinite series
};

// Signature (r1, r2) of a degree-d number field. d is carried explicitly:
// the Poitou integral is linear in the pair (r1, d), and identities such
// as I_{2,4} = 2*I_{1,2} involve parameter combinations that no actual
// field realizes.
struct SignatureField {
  int r1 = 0;
  int r2 = 0;
  int d = 1;
  SignatureField(int r1_, int r2_) : r1(r1_), r2(r2_), d(r1_ + 2 * r2_) {}
  static SignatureField from_r1_d(int r1_, int d_) {
    SignatureField s(r1_, (d_ - r1_) / 2);
    s.d = d_;
    return s;
  }
};

struct OdlyzkoConstant {
  int r1;
  int d;
  double y_opt;     // maximizing kernel parameter
  double value_log; // log of the discriminant-bound constant
};

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kPi = 3.14159265358979323846;
// gamma + log(4*pi)
inline constexpr double kGammaLog4Pi = 3.10823991187082365;

// Weighted sinc-difference kernel f(x) = (3 x^-3 (sin x - x cos x))^2,
// with a Taylor switch near zero to dodge cancellation.
double f_kernel(double x);

// 1 - f(x), computed by series for small x where the subtraction cancels.
double one_minus_f(double x);

// Truncated kernel: h = f on [0, 4], zero beyond.
double h_kernel(double x);

// C_h(x, y) = 4 * sum_{j>=1} log(x)/(1+x^j) * h(j sqrt(y) log x).
// The sum is finite: h kills every term once j sqrt(y) log x > 4.
double c_h(double x, double y);

// C_f(x, y): same series with f in place of h; summed until the geometric
// tail bound 4 log(x) x^-j / (1 - 1/x) drops below cfg.series_tol.
double c_f(double x, double y, const QuadratureConfig& cfg = {});

// I_{r1,d}(y) = int_0^inf [ d (1-f(x sqrt y))/sinh x
//                         + r1 (1-f(x sqrt y))/cosh(x/2) ] dx
double poitou_I(const SignatureField& sig, double y,
                const QuadratureConfig& cfg = {});

// log of the Odlyzko-Poitou base factor:
//   r1 + d(gamma + log 4 pi) - 12 pi / (5 sqrt y) - I_{r1,d}(y)
double base_term_log(const SignatureField& sig, double y,
                     const QuadratureConfig& cfg = {});

// Maximize base_term_log over y in [1e-4, 50] (log grid + golden section).
// Errors if the maximum sits on the search boundary.
OdlyzkoConstant odlyzko_constant(const SignatureField& sig,
                                 const QuadratureConfig& cfg = {});

// Large-degree per-degree limit exp(r1/d + gamma + log 4 pi), i.e. the
// 60.8^(r1/d) * 22.3^(2 r2/d) rule of thumb.
double asymptotic_per_degree(const SignatureField& sig);

} // namespace divlat
