#include "divlat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace divlat {

double f_kernel(double x) {
  x = std::fabs(x);
  if (x < 1e-2) {
    // 3 x^-3 (sin x - x cos x) = 1 - x^2/10 + x^4/280 - ...
    const double x2 = x * x;
    const double s = 1.0 + x2 * (-1.0 / 10 + x2 * (1.0 / 280 +
                     x2 * (-1.0 / 15120 + x2 * (1.0 / 1330560 +
                     x2 * (-1.0 / 172972800)))));
    return s * s;
  }
  const double t = 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
  return t * t;
}

double one_minus_f(double x) {
  x = std::fabs(x);
  if (x < 0.2) {
    // series for 1 - f; relative error < 8e-12 at x = 0.2
    const double u = x * x;
    return u * (1.0 / 5 + u * (-3.0 / 175 + u * (4.0 / 4725 +
           u * (-2.0 / 72765))));
  }
  return 1.0 - f_kernel(x);
}

double h_kernel(double x) {
  x = std::fabs(x);
  return x <= 4.0 ? f_kernel(x) : 0.0;
}

double c_h(double x, double y) {
  if (!(x > 1.0)) throw std::invalid_argument("c_h: requires x > 1");
  if (!(y > 0.0)) throw std::invalid_argument("c_h: requires y > 0");
  const double lx = std::log(x);
  const double u = std::sqrt(y) * lx;
  if (u > 4.0) return 0.0;
  const int jmax = static_cast<int>(4.0 / u);
  double sum = 0.0;
  double xj = 1.0;
  for (int j = 1; j <= jmax; ++j) {
    xj *= x;
    sum += lx / (1.0 + xj) * h_kernel(j * u);
  }
  return 4.0 * sum;
}

double c_f(double x, double y, const QuadratureConfig& cfg) {
  if (!(x > 1.0)) throw std::invalid_argument("c_f: requires x > 1");
  if (!(y > 0.0)) throw std::invalid_argument("c_f: requires y > 0");
  const double lx = std::log(x);
  const double u = std::sqrt(y) * lx;
  const double geo = 1.0 - 1.0 / x;
  double sum = 0.0;
  double xj = 1.0;
  for (int j = 1; j < 100000; ++j) {
    xj *= x;
    sum += lx / (1.0 + xj) * f_kernel(j * u);
    if (4.0 * lx / (xj * geo) < cfg.series_tol) break;
  }
  return 4.0 * sum;
}

namespace {

// Gauss-Kronrod 7-15 abscissae and weights (positive half).
// Odd indices are the embedded 7-point Gauss nodes; index 7 is the center.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773286336,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double fsum = f(c - dx) + f(c + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return {a, b, resk * h, std::fabs(resk - resg) * h};
}

template <class F>
double adaptive_quadrature(const F& f, double a, double b, double rel_tol,
                           const char* what) {
  constexpr int kMaxPanels = 4000;
  std::priority_queue<Panel> heap;
  Panel whole = gk15(f, a, b);
  double total = whole.value;
  double err = whole.error;
  heap.push(whole);
  int panels = 1;
  while (err > rel_tol * std::max(std::fabs(total), 1e-300)) {
    if (panels >= kMaxPanels) {
      std::ostringstream msg;
      msg << what << ": quadrature failed to converge: " << panels
          << " panels, value " << total << ", error " << err
          << ", rel_tol " << rel_tol;
      throw std::runtime_error(msg.str());
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  return total;
}

} // namespace

double poitou_I(const SignatureField& sig, double y,
                const QuadratureConfig& cfg) {
  if (!(y > 0.0)) throw std::invalid_argument("poitou_I: requires y > 0");
  const double sy = std::sqrt(y);
  const double d = sig.d;
  const double r1 = sig.r1;
  auto integrand = [&](double x) {
    const double omf = one_minus_f(x * sy);
    return d * omf / std::sinh(x) + r1 * omf / std::cosh(0.5 * x);
  };
  return adaptive_quadrature(integrand, 0.0, cfg.upper_cut, cfg.rel_tol,
                             "poitou_I");
}

double base_term_log(const SignatureField& sig, double y,
                     const QuadratureConfig& cfg) {
  const double d = sig.d;
  return sig.r1 + d * kGammaLog4Pi - 12.0 * kPi / (5.0 * std::sqrt(y)) -
         poitou_I(sig, y, cfg);
}

OdlyzkoConstant odlyzko_constant(const SignatureField& sig,
                                 const QuadratureConfig& cfg) {
  constexpr double kYMin = 1e-4, kYMax = 50.0;
  constexpr int kGrid = 200;
  const double la = std::log(kYMin), lb = std::log(kYMax);
  std::vector<double> ys(kGrid), vals(kGrid);
  int best = 0;
  for (int i = 0; i < kGrid; ++i) {
    ys[i] = std::exp(la + (lb - la) * i / (kGrid - 1));
    vals[i] = base_term_log(sig, ys[i], cfg);
    if (vals[i] > vals[best]) best = i;
  }
  if (best == 0 || best == kGrid - 1) {
    std::ostringstream msg;
    msg << "odlyzko_constant: maximum at search boundary y = " << ys[best]
        << " for signature (" << sig.r1 << ", " << sig.r2 << ")";
    throw std::runtime_error(msg.str());
  }
  // golden-section refinement on the bracketing interval
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = ys[best - 1], hi = ys[best + 1];
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = base_term_log(sig, x1, cfg), f2 = base_term_log(sig, x2, cfg);
  while (hi - lo > 1e-10 * (1.0 + hi)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = base_term_log(sig, x2, cfg);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = base_term_log(sig, x1, cfg);
    }
  }
  const double y_opt = 0.5 * (lo + hi);
  return {sig.r1, sig.d, y_opt, base_term_log(sig, y_opt, cfg)};
}

double asymptotic_per_degree(const SignatureField& sig) {
  const double d = sig.d;
  return std::exp(sig.r1 / d + kGammaLog4Pi);
}

} // namespace divlat
