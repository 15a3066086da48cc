#include "divlat/primesearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace divlat {

namespace {

constexpr std::int64_t kCase1Limit = 22898;  // 214^2 / 2
constexpr std::int64_t kCase2P1Limit = 47;
constexpr std::int64_t kCase2P2Limit = 992129;

double case3_product_limit() { return std::pow(11.0, 57.0 / 14.0); }

bool valid_y0(double y0) {
  return std::fabs(y0 - 0.1) < 1e-12 || std::fabs(y0 - 2.0) < 1e-12;
}

void validate(CaseKind kind, int n, double y0) {
  if (n < 2) throw std::invalid_argument("objective requires n >= 2");
  if (!valid_y0(y0))
    throw std::invalid_argument("y0 must be 0.1 or 2");
  if (kind != CaseKind::Unramified && (n % 2 != 0 || (n / 2) % 2 != 1))
    throw std::invalid_argument(
        "ramified real places require n = 2m with m odd");
}

// Per-coordinate pieces of the (separable) log objectives.
double part1(CaseKind kind, int n, double y0, std::int64_t p) {
  const double lp = std::log(static_cast<double>(p));
  const double ch = c_h(static_cast<double>(p), y0);
  switch (kind) {
    case CaseKind::Unramified: return (1.0 - 1.0 / n) * lp + ch;
    case CaseKind::OneRealPlace: return (1.0 - 1.0 / n) * lp + ch;
    case CaseKind::ManyRealPlaces:
      return (0.25 - 0.5 / n) * lp + ch;
  }
  throw std::logic_error("unreachable");
}

double part2(CaseKind kind, int n, double y0, std::int64_t p) {
  const double lp = std::log(static_cast<double>(p));
  const double ch = c_h(static_cast<double>(p), y0);
  switch (kind) {
    case CaseKind::Unramified: return (1.0 - 1.0 / n) * lp + ch;
    case CaseKind::OneRealPlace: return (0.25 - 0.5 / n) * lp + ch;
    case CaseKind::ManyRealPlaces:
      return (0.25 - 0.5 / n) * lp + ch;
  }
  throw std::logic_error("unreachable");
}

RegionWitness make_witness(CaseKind kind) {
  // The auxiliary function g behind each region is the large-n limit of the
  // case objective, always evaluated at y = 0.1.
  switch (kind) {
    case CaseKind::Unramified: {
      const double v = 4.0 * std::exp(2.0 * c_h(2.0, 0.1));
      return {"g1(2,2)", v, 214.0};
    }
    case CaseKind::OneRealPlace: {
      const double v = 2.0 * std::pow(41.0, 0.25) *
                       std::exp(c_h(2.0, 0.1) + c_h(41.0, 0.1));
      return {"g2(2,41)", v, 49.0};
    }
    case CaseKind::ManyRealPlaces: {
      const double v =
          std::pow(37.0 * 37.0, 0.25) * std::exp(2.0 * c_h(37.0, 0.1));
      return {"g3(37,37)", v, 11.0};
    }
  }
  throw std::logic_error("unreachable");
}

} // namespace

std::vector<std::int64_t> prime_powers_upto(std::int64_t limit) {
  if (limit < 2) throw std::invalid_argument("prime_powers_upto: limit >= 2");
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t q = p * p; q <= limit; q += p)
      composite[static_cast<std::size_t>(q)] = true;
    for (std::int64_t pk = p; pk <= limit; pk *= p) {
      out.push_back(pk);
      if (pk > limit / p) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime_power(std::int64_t x) {
  if (x < 2) return false;
  for (std::int64_t p = 2; p * p <= x; ++p) {
    if (x % p != 0) continue;
    while (x % p == 0) x /= p;
    return x == 1;
  }
  return true; // x itself is prime
}

double objective(CaseKind kind, int n, double y0, std::int64_t p1,
                 std::int64_t p2) {
  validate(kind, n, y0);
  if (!is_prime_power(p1) || !is_prime_power(p2))
    throw std::invalid_argument("objective arguments must be prime powers");
  return part1(kind, n, y0, p1) + part2(kind, n, y0, p2);
}

CertifiedRegion certify_region(CaseKind kind, int n, double y0) {
  validate(kind, n, y0);
  CertifiedRegion region;
  region.kind = kind;
  region.witnesses.push_back(make_witness(kind));
  for (const auto& w : region.witnesses) {
    if (!(w.value < w.threshold))
      throw std::runtime_error("region witness " + w.name +
                               " failed: " + std::to_string(w.value) +
                               " !< " + std::to_string(w.threshold));
  }
  switch (kind) {
    case CaseKind::Unramified:
      region.p1_limit = kCase1Limit;
      region.p2_limit = kCase1Limit;
      break;
    case CaseKind::OneRealPlace:
      region.p1_limit = kCase2P1Limit;
      region.p2_limit = kCase2P2Limit;
      break;
    case CaseKind::ManyRealPlaces:
      region.product_limit = case3_product_limit();
      region.p1_limit = static_cast<std::int64_t>(region.product_limit / 2.0);
      break;
  }
  return region;
}

MinimizerResult minimize_case(CaseKind kind, int n, double y0) {
  const CertifiedRegion region = certify_region(kind, n, y0);
  if (kind == CaseKind::ManyRealPlaces && n == 2)
    throw std::invalid_argument(
        "case-3 objective is constant in both variables at n = 2; "
        "no meaningful minimizer (the bound degenerates to the plain "
        "Odlyzko bound)");

  MinimizerResult res;
  res.kind = kind;
  res.n = n;
  res.y0 = y0;

  const double inf = std::numeric_limits<double>::infinity();

  if (kind == CaseKind::Unramified) {
    const auto pps = prime_powers_upto(region.p1_limit);
    std::vector<double> g(pps.size());
    for (std::size_t i = 0; i < pps.size(); ++i)
      g[i] = part1(kind, n, y0, pps[i]);
    double best = inf;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < pps.size(); ++i) {
      for (std::size_t j = i; j < pps.size(); ++j) {
        const double v = g[i] + g[j];
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    res.pair = {pps[bi], pps[bj], best};
    return res;
  }

  if (kind == CaseKind::OneRealPlace) {
    const auto p1s = prime_powers_upto(region.p1_limit);
    double best1 = inf;
    std::int64_t bp1 = 0;
    for (std::int64_t p : p1s) {
      const double v = part1(kind, n, y0, p);
      if (v < best1) {
        best1 = v;
        bp1 = p;
      }
    }
    // Ascending p2 scan; past the point where c_h vanishes the objective is
    // nondecreasing in p2, so one zero-contribution candidate suffices.
    const auto p2s = prime_powers_upto(region.p2_limit);
    double best2 = inf;
    std::int64_t bp2 = 0;
    for (std::int64_t p : p2s) {
      const double v = part2(kind, n, y0, p);
      if (v < best2) {
        best2 = v;
        bp2 = p;
      }
      if (c_h(static_cast<double>(p), y0) == 0.0) break;
    }
    res.pair = {bp1, bp2, best1 + best2};
    return res;
  }

  // Product-capped symmetric region.
  const auto pps = prime_powers_upto(region.p1_limit);
  std::vector<double> g(pps.size());
  for (std::size_t i = 0; i < pps.size(); ++i)
    g[i] = part1(kind, n, y0, pps[i]);
  double best = inf;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < pps.size(); ++i) {
    if (static_cast<double>(pps[i]) * static_cast<double>(pps[i]) >=
        region.product_limit)
      break;
    for (std::size_t j = i; j < pps.size(); ++j) {
      if (static_cast<double>(pps[i]) * static_cast<double>(pps[j]) >=
          region.product_limit)
        break;
      const double v = g[i] + g[j];
      if (v < best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  res.pair = {pps[bi], pps[bj], best};
  return res;
}

} // namespace divlat
