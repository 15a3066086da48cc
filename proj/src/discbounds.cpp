#include "divlat/discbounds.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace divlat {

namespace {

void validate_signature(const AlgebraSignature& sig) {
  if (sig.r1 < 0 || sig.r2 < 0 || sig.d() < 1)
    throw std::invalid_argument("invalid center signature");
  if (sig.omega < 0 || sig.omega > sig.r1)
    throw std::invalid_argument("omega must satisfy 0 <= omega <= r1");
  if (sig.n < 2) throw std::invalid_argument("algebra degree n must be >= 2");
}

// log of the norm part N(P1)^a N(P2)^b of the matching theorem.
double norm_part_log(CaseKind kind, int n, const PrimePowerPair& pair) {
  const double l1 = std::log(static_cast<double>(pair.p1));
  const double l2 = std::log(static_cast<double>(pair.p2));
  const double m = n / 2.0;
  switch (kind) {
    case CaseKind::Unramified:
      return static_cast<double>(n) * (n - 1) * (l1 + l2);
    case CaseKind::OneRealPlace:
      return static_cast<double>(n) * (n - 1) * l1 + m * (m - 1) * l2;
    case CaseKind::ManyRealPlaces:
      return m * (m - 1) * (l1 + l2);
  }
  throw std::logic_error("unreachable");
}

BoundResult assemble(const AlgebraSignature& sig, CaseKind kind,
                     BoundSource source, const PrimePowerPair& pair,
                     double y0, double y, double base_log) {
  BoundResult res;
  res.kind = kind;
  res.source = source;
  res.pair = pair;
  res.y = y;
  res.y0 = y0;
  res.n = sig.n;
  res.d = sig.d();
  const double n2 = static_cast<double>(sig.n) * sig.n;
  const double ch = c_h(static_cast<double>(pair.p1), y0) +
                    c_h(static_cast<double>(pair.p2), y0);
  res.bound_log = norm_part_log(kind, sig.n, pair) + n2 * ch + n2 * base_log;
  res.per_degree_root = std::exp(res.bound_log / (n2 * sig.d()));
  return res;
}

std::map<BigInt, int> factor_small(BigInt v) {
  std::map<BigInt, int> out;
  for (BigInt p = 2; p * p <= v && p < 1000000; ++p) {
    while (v % p == 0) {
      ++out[p];
      v /= p;
    }
  }
  if (v > 1) ++out[v];
  return out;
}

} // namespace

CaseKind classify(const AlgebraSignature& sig) {
  validate_signature(sig);
  if (sig.omega == 0) return CaseKind::Unramified;
  const bool n_ok = sig.n % 2 == 0 && (sig.n / 2) % 2 == 1;
  if (!n_ok)
    throw std::invalid_argument(
        "ramified real places require n = 2m with m odd");
  if (sig.r1 == 1) return CaseKind::OneRealPlace;
  if (sig.n == 2)
    throw std::invalid_argument(
        "several ramified real places with n = 2 fall outside the bound "
        "cases; the discriminant bound there is the plain Odlyzko bound");
  return CaseKind::ManyRealPlaces;
}

BoundResult theorem_bound(const AlgebraSignature& sig, double y0, double y,
                          const QuadratureConfig& cfg) {
  const CaseKind kind = classify(sig);
  if (!(y > 0.0) || y > y0)
    throw std::invalid_argument("theorem_bound requires 0 < y <= y0");
  const MinimizerResult mr = minimize_case(kind, sig.n, y0);
  const double base =
      base_term_log(SignatureField(sig.r1, sig.r2), y, cfg);
  return assemble(sig, kind, BoundSource::Theorem, mr.pair, y0, y, base);
}

BoundResult corollary_bound(const AlgebraSignature& sig, double y0,
                            const QuadratureConfig& cfg) {
  const CaseKind kind = classify(sig);
  const OdlyzkoConstant oc =
      odlyzko_constant(SignatureField(sig.r1, sig.r2), cfg);
  if (!(oc.y_opt < y0))
    throw std::invalid_argument(
        "corollary inapplicable at this degree (optimal y " +
        std::to_string(oc.y_opt) + " >= y0 " + std::to_string(y0) +
        "); use theorem_bound with explicit y");
  const MinimizerResult mr = minimize_case(kind, sig.n, y0);
  return assemble(sig, kind, BoundSource::Corollary, mr.pair, y0, oc.y_opt,
                  oc.value_log);
}

BoundResult naive_bound(int d, int n, const QuadratureConfig& cfg) {
  if (d < 2 || d % 2 != 0)
    throw std::invalid_argument("naive_bound requires even d >= 2");
  if (n < 2) throw std::invalid_argument("naive_bound requires n >= 2");
  const OdlyzkoConstant oc = odlyzko_constant(SignatureField(0, d / 2), cfg);
  BoundResult res;
  res.kind = CaseKind::Unramified;
  res.source = BoundSource::Naive;
  res.pair = {2, 2, 0.0};
  res.y = oc.y_opt;
  res.y0 = 0.0;
  res.n = n;
  res.d = d;
  const double n2 = static_cast<double>(n) * n;
  res.bound_log =
      static_cast<double>(n) * (n - 1) * std::log(4.0) + n2 * oc.value_log;
  res.per_degree_root = std::exp(res.bound_log / (n2 * d));
  return res;
}

ExactDisc center_fixed_min_disc(const FieldRecord& field, int n) {
  if (field.r1 != 0)
    throw std::invalid_argument(
        "center_fixed_min_disc requires a totally complex center");
  if (n < 2) throw std::invalid_argument("center_fixed_min_disc: n >= 2");
  const PrimeNormList norms = smallest_prime_norms(field, 2);
  const BigInt n1(norms.norms[0]), n2(norms.norms[1]);

  ExactDisc out;
  out.value = 1;
  BigInt np = n1 * n2;
  for (int i = 0; i < n * (n - 1); ++i) out.value *= np;
  const BigInt absdisc = boost::multiprecision::abs(field.disc);
  for (int i = 0; i < n * n; ++i) out.value *= absdisc;

  std::map<BigInt, int> factors;
  for (const auto& [p, e] : factor_small(np)) factors[p] += e * n * (n - 1);
  for (const auto& [p, e] : factor_small(absdisc)) factors[p] += e * n * n;
  for (const auto& [p, e] : factors) out.factorization.emplace_back(p, e);
  return out;
}

double mindet_upper_bound(double disc_log, int d, int n, Construction c) {
  if (d < 1 || n < 1) throw std::invalid_argument("bad degree");
  switch (c) {
    case Construction::Reg1:
      return -disc_log / (2.0 * n);
    case Construction::Reg2:
      return (d * static_cast<double>(n) * n * std::log(2.0) - disc_log) /
             (4.0 * n);
  }
  throw std::logic_error("unreachable");
}

double delta_bound_formula(int d, double C_log) {
  if (d < 2 || d % 2 != 0)
    throw std::invalid_argument("delta_bound_formula requires even d >= 2");
  const double seven_part = std::log(7.0) + 2.0 * c_h(7.0, 2.0);
  return (d / 2.0) * std::log(2.0) - (seven_part + C_log) / 2.0;
}

} // namespace divlat
