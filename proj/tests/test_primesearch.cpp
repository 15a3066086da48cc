#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "divlat/primesearch.hpp"

using namespace divlat;

namespace {

bool close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(b), 1.0);
}

// Brute force over pairs of prime powers <= cap, honoring each case's
// region shape, used to cross-check the production search.
PrimePowerPair brute(CaseKind kind, int n, double y0, std::int64_t cap) {
  const auto pps = prime_powers_upto(cap);
  PrimePowerPair best{0, 0, 1e300};
  for (auto p1 : pps) {
    for (auto p2 : pps) {
      if (kind != CaseKind::OneRealPlace && p2 < p1) continue;
      const double v = objective(kind, n, y0, p1, p2);
      if (v < best.value_log) best = {p1, p2, v};
    }
  }
  return best;
}

} // namespace

TEST_CASE("prime power enumeration") {
  CHECK(prime_powers_upto(10) ==
        std::vector<std::int64_t>{2, 3, 4, 5, 7, 8, 9});
  const auto v = prime_powers_upto(64);
  CHECK(std::find(v.begin(), v.end(), 64) != v.end());
  CHECK(std::find(v.begin(), v.end(), 6) == v.end());
  CHECK(prime_powers_upto(22898).size() == 2623);
  CHECK(prime_powers_upto(992129).size() == 78170);
  CHECK(is_prime_power(311533));
  CHECK_FALSE(is_prime_power(311532));
  CHECK_FALSE(is_prime_power(1));
}

TEST_CASE("objective values at tabled minimizers") {
  CHECK(close(objective(CaseKind::Unramified, 2, 0.1, 13, 13),
              3.92068373084, 1e-10));
  CHECK(close(objective(CaseKind::Unramified, 7, 2.0, 2, 2),
              3.28438928814, 1e-10));
  CHECK(close(objective(CaseKind::OneRealPlace, 6, 0.1, 3, 64),
              3.43456769334, 1e-10));
  CHECK(close(objective(CaseKind::ManyRealPlaces, 6, 2.0, 11, 11),
              0.886678056881, 1e-10));
  CHECK(close(objective(CaseKind::ManyRealPlaces, 14, 0.1, 47, 47),
              2.12776848813, 1e-10));
}

TEST_CASE("objective symmetry and validation") {
  CHECK(objective(CaseKind::Unramified, 3, 0.1, 5, 11) ==
        objective(CaseKind::Unramified, 3, 0.1, 11, 5));
  CHECK(objective(CaseKind::ManyRealPlaces, 6, 2.0, 4, 9) ==
        objective(CaseKind::ManyRealPlaces, 6, 2.0, 9, 4));
  CHECK(objective(CaseKind::OneRealPlace, 6, 0.1, 2, 3) !=
        objective(CaseKind::OneRealPlace, 6, 0.1, 3, 2));
  CHECK_THROWS_AS(objective(CaseKind::Unramified, 1, 0.1, 2, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(objective(CaseKind::OneRealPlace, 4, 0.1, 2, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(objective(CaseKind::ManyRealPlaces, 8, 0.1, 2, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(objective(CaseKind::Unramified, 2, 0.3, 2, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(objective(CaseKind::Unramified, 2, 0.1, 6, 2),
                  std::invalid_argument);
}

TEST_CASE("certified region witnesses") {
  const auto r1 = certify_region(CaseKind::Unramified, 2, 0.1);
  REQUIRE(r1.witnesses.size() == 1);
  CHECK(close(r1.witnesses[0].value, 213.803521137873143, 1e-10));
  CHECK(r1.witnesses[0].threshold == 214.0);
  CHECK(r1.p1_limit == 22898);

  const auto r2 = certify_region(CaseKind::OneRealPlace, 2, 2.0);
  CHECK(close(r2.witnesses[0].value, 48.4471938726468774, 1e-10));
  CHECK(r2.witnesses[0].threshold == 49.0);
  CHECK(r2.p1_limit == 47);
  CHECK(r2.p2_limit == 992129);

  const auto r3 = certify_region(CaseKind::ManyRealPlaces, 6, 0.1);
  CHECK(close(r3.witnesses[0].value, 10.9682208261677143, 1e-10));
  CHECK(r3.witnesses[0].threshold == 11.0);
  CHECK(close(r3.product_limit, 17376.24504209596, 1e-12));
}

TEST_CASE("minimizers: no ramified real place") {
  struct Row {
    int n;
    double y0;
    std::int64_t p1, p2;
    double value;
  };
  const Row rows[] = {
      {2, 0.1, 13, 13, 3.92068373084},  {3, 0.1, 7, 7, 4.65004234986},
      {4, 0.1, 4, 4, 4.91885589304},    {5, 0.1, 3, 3, 5.04896375454},
      {6, 0.1, 3, 3, 5.12220457378},    {7, 0.1, 2, 2, 5.16701541617},
      {50, 0.1, 2, 2, 5.33733158054},   {1000, 0.1, 2, 2, 5.3636711734},
      {2, 2.0, 7, 7, 2.29100922996},    {3, 2.0, 4, 4, 2.83573113335},
      {4, 2.0, 3, 3, 3.066249072},      {5, 2.0, 3, 3, 3.17611030087},
      {6, 2.0, 3, 3, 3.24935112011},    {7, 2.0, 2, 2, 3.28438928814},
      {50, 2.0, 2, 2, 3.45470545251},   {1000, 2.0, 2, 2, 3.48104504537},
  };
  for (const auto& r : rows) {
    const auto m = minimize_case(CaseKind::Unramified, r.n, r.y0);
    CHECK_MESSAGE(m.pair.p1 == r.p1, "n = ", r.n, " y0 = ", r.y0);
    CHECK_MESSAGE(m.pair.p2 == r.p2, "n = ", r.n, " y0 = ", r.y0);
    CHECK(close(m.pair.value_log, r.value, 1e-10));
    CHECK(m.pair.p1 <= m.pair.p2);
  }
}

TEST_CASE("minimizers: one ramified real place") {
  struct Row {
    int n;
    double y0;
    std::int64_t p1, p2;
    double value;
  };
  const Row rows[] = {
      {2, 0.1, 13, 311533, 1.96034186542}, {6, 0.1, 3, 64, 3.43456769334},
      {10, 0.1, 2, 53, 3.62164311273},     {14, 0.1, 2, 47, 3.69690246505},
      {18, 0.1, 2, 43, 3.73832924844},     {22, 0.1, 2, 43, 3.76432669529},
      {26, 0.1, 2, 43, 3.78232492773},     {30, 0.1, 2, 41, 3.79547664486},
      {2, 2.0, 7, 17, 1.14550461498},      {6, 2.0, 3, 11, 2.0680145885},
      {10, 2.0, 2, 11, 2.19516982268},     {14, 2.0, 2, 9, 2.24916219659},
      {18, 2.0, 2, 9, 2.27760282309},      {22, 2.0, 2, 9, 2.29570140359},
      {30, 2.0, 2, 9, 2.31741970018},
  };
  for (const auto& r : rows) {
    const auto m = minimize_case(CaseKind::OneRealPlace, r.n, r.y0);
    CHECK_MESSAGE(m.pair.p1 == r.p1, "n = ", r.n, " y0 = ", r.y0);
    CHECK_MESSAGE(m.pair.p2 == r.p2, "n = ", r.n, " y0 = ", r.y0);
    CHECK(close(m.pair.value_log, r.value, 1e-10));
  }
}

TEST_CASE("minimizers: several ramified real places") {
  struct Row {
    int n;
    double y0;
    std::int64_t p1, p2;
    double value;
  };
  const Row rows[] = {
      {6, 0.1, 64, 64, 1.7469308129},    {10, 0.1, 53, 53, 2.01685819381},
      {14, 0.1, 47, 47, 2.12776848813},  {18, 0.1, 43, 43, 2.18861738251},
      {22, 0.1, 43, 43, 2.22660930287},  {26, 0.1, 43, 43, 2.25291140158},
      {30, 0.1, 41, 41, 2.27210563399},  {62, 0.1, 41, 41, 2.33599504589},
      {110, 0.1, 41, 41, 2.36213162349}, {114, 0.1, 41, 41, 2.36331617598},
      {118, 0.1, 37, 37, 2.36440107647}, {6, 2.0, 11, 11, 0.886678056881},
      {10, 2.0, 11, 11, 1.04653774173},  {14, 2.0, 9, 9, 1.11491407925},
      {18, 2.0, 9, 9, 1.14979065984},    {22, 2.0, 9, 9, 1.17198484749},
  };
  for (const auto& r : rows) {
    const auto m = minimize_case(CaseKind::ManyRealPlaces, r.n, r.y0);
    CHECK_MESSAGE(m.pair.p1 == r.p1, "n = ", r.n, " y0 = ", r.y0);
    CHECK_MESSAGE(m.pair.p2 == r.p2, "n = ", r.n, " y0 = ", r.y0);
    CHECK(close(m.pair.value_log, r.value, 1e-10));
    CHECK(m.pair.p1 <= m.pair.p2);
  }
}

TEST_CASE("degenerate case-3 n=2 rejected") {
  CHECK_THROWS_AS(minimize_case(CaseKind::ManyRealPlaces, 2, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(minimize_case(CaseKind::ManyRealPlaces, 2, 2.0),
                  std::invalid_argument);
}

TEST_CASE("search agrees with small brute force") {
  struct Probe {
    CaseKind kind;
    int n;
    double y0;
  };
  const Probe probes[] = {
      {CaseKind::Unramified, 2, 0.1},     {CaseKind::Unramified, 5, 2.0},
      {CaseKind::OneRealPlace, 6, 2.0},   {CaseKind::OneRealPlace, 10, 0.1},
      {CaseKind::ManyRealPlaces, 6, 2.0}, {CaseKind::ManyRealPlaces, 18, 0.1},
  };
  for (const auto& pr : probes) {
    const auto m = minimize_case(pr.kind, pr.n, pr.y0);
    const auto b = brute(pr.kind, pr.n, pr.y0, 1000);
    CHECK(m.pair.p1 == b.p1);
    CHECK(m.pair.p2 == b.p2);
    CHECK(close(m.pair.value_log, b.value_log, 1e-12));
  }
}
