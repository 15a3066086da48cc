#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divlat/kernels.hpp"

namespace divlat {

// The three ramification patterns the discriminant bounds distinguish:
// no ramified real place of the center, exactly one, or at least two.
enum class CaseKind { Unramified = 1, OneRealPlace = 2, ManyRealPlaces = 3 };

struct PrimePowerPair {
  std::int64_t p1 = 0;
  std::int64_t p2 = 0;
  double value_log = 0.0; // log of the case objective at (p1, p2)
};

struct MinimizerResult {
  CaseKind kind;
  int n = 0;
  double y0 = 0.0;
  PrimePowerPair pair;
};

// A pruning inequality re-checked before every exhaustive search.
struct RegionWitness {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
};

struct CertifiedRegion {
  CaseKind kind;
  std::int64_t p1_limit = 0;  // inclusive
  std::int64_t p2_limit = 0;  // inclusive; 0 when the cap is on the product
  double product_limit = 0.0; // cases with a p1*p2 cap; 0 otherwise
  std::vector<RegionWitness> witnesses;
};

// All p^k <= limit with p prime and k >= 1, ascending.
std::vector<std::int64_t> prime_powers_upto(std::int64_t limit);

bool is_prime_power(std::int64_t x);

// log f_n(p1, p2) for the given case, built from c_h at parameter y0.
double objective(CaseKind kind, int n, double y0, std::int64_t p1,
                 std::int64_t p2);

// Recomputes the auxiliary-function inequalities that certify the finite
// search regions; throws if one fails numerically.
CertifiedRegion certify_region(CaseKind kind, int n, double y0);

// Exhaustive minimization of the case objective over the certified region.
// Ties resolve to the lexicographically smallest pair; for the symmetric
// cases the result is normalized to p1 <= p2.
MinimizerResult minimize_case(CaseKind kind, int n, double y0);

} // namespace divlat
