#pragma once

#include <cstdint>

#include "divlat/bigint.hpp"
#include "divlat/kernels.hpp"
#include "divlat/numfields.hpp"
#include "divlat/primesearch.hpp"

namespace divlat {

// Ramification data of a degree-n division algebra over a center of
// signature (r1, r2): omega real places of the center ramify.
struct AlgebraSignature {
  int omega = 0;
  int r1 = 0;
  int r2 = 0;
  int n = 1;
  int d() const { return r1 + 2 * r2; }
};

enum class BoundSource { Theorem, Corollary, Naive };

struct BoundResult {
  double bound_log = 0.0;       // log lower bound on the algebra discriminant
  CaseKind kind = CaseKind::Unramified;
  BoundSource source = BoundSource::Theorem;
  PrimePowerPair pair;          // prime-power pair realizing the bound
  double y = 0.0, y0 = 0.0;
  int n = 0, d = 0;
  double per_degree_root = 0.0; // exp(bound_log / (n^2 d))
};

enum class Construction { Reg1, Reg2 };

// Which theorem case a signature falls under; throws when none applies.
CaseKind classify(const AlgebraSignature& sig);

// Discriminant lower bound with the base term evaluated at an explicit
// y <= y0; the prime-power pair is the certified case minimizer.
BoundResult theorem_bound(const AlgebraSignature& sig, double y0, double y,
                          const QuadratureConfig& cfg = QuadratureConfig{});

// Same bound with the base term replaced by the Odlyzko-style constant at
// its optimal y; requires y_opt < y0.
BoundResult corollary_bound(const AlgebraSignature& sig, double y0,
                            const QuadratureConfig& cfg = QuadratureConfig{});

// Field-discriminant-only bound: every prime-power norm >= 2.
BoundResult naive_bound(int d, int n,
                        const QuadratureConfig& cfg = QuadratureConfig{});

// Exact smallest discriminant of a degree-n division algebra with the given
// totally complex center, from its two smallest prime-ideal norms.
ExactDisc center_fixed_min_disc(const FieldRecord& field, int n);

// log of the normalized-minimum-determinant upper bound induced by a log
// lower bound on the algebra discriminant.
double mindet_upper_bound(double disc_log, int d, int n, Construction c);

// log of the closed-form delta bound for totally complex degree-d centers,
// using the degree-d Odlyzko-style constant (log value C_log).
double delta_bound_formula(int d, double C_log);

} // namespace divlat
