#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divlat/bigint.hpp"

namespace divlat {

struct FieldRecord {
  std::string label;
  int degree = 0;
  int r1 = 0, r2 = 0;
  BigInt disc;                            // signed field discriminant
  std::vector<BigInt> min_poly;           // monic, coefficients low-to-high
  std::vector<std::int64_t> prime_norms;  // optional, ascending, may be empty
};

struct FieldTable {
  std::vector<FieldRecord> fields;
  // All fields with |disc| <= complete_upto are present; 0 when unknown.
  BigInt complete_upto{0};
};

struct PrimeNormList {
  std::vector<std::int64_t> norms; // ascending, one entry per prime ideal
  std::int64_t complete_upto = 0;  // every ideal norm <= this value is listed
  bool from_record = false;        // true when taken from the input record
};

struct CenterCandidate {
  FieldRecord field;
  std::int64_t norm1 = 0, norm2 = 0; // two smallest prime-ideal norms
  ExactDisc min_disc;                // smallest algebra discriminant over it
};

struct CenterSearchResult {
  int n = 0;
  std::vector<CenterCandidate> ranking; // ascending by min_disc
  // A field could beat the winner only if |disc| < cutoff; when the table is
  // complete past the cutoff the winner is provably optimal.
  double cutoff = 0.0;
  bool provably_complete = false;
};

// Parse and validate a field-table JSON file (either a bare record array or
// an object {"complete_upto": B, "fields": [...]}).
FieldTable load_fields(const std::string& path);

// Parse and validate a single field record from JSON object text.
FieldRecord parse_field_record_json(const std::string& json_text);

// Exact discriminant of a monic integer polynomial.
BigInt poly_disc(const std::vector<BigInt>& poly);

// Distinct irreducible factors of a monic integer polynomial modulo p,
// as (degree, multiplicity) pairs ordered by degree.
std::vector<std::pair<int, int>> factor_shape_mod_p(
    const std::vector<BigInt>& poly, std::int64_t p);

// The how_many smallest prime-ideal norms of the field. Record-supplied
// norms take precedence; otherwise norms are certified by factoring the
// minimal polynomial modulo every prime up to the point where the smallest
// how_many norms cannot change, skipping no index divisor.
PrimeNormList smallest_prime_norms(const FieldRecord& field, int how_many,
                                   std::int64_t search_bound = 1000);

// Rank totally complex same-degree fields by the smallest discriminant of a
// degree-n division algebra with that center.
CenterSearchResult optimal_center_search(const std::vector<FieldRecord>& fields,
                                         int n);
CenterSearchResult optimal_center_search(const FieldTable& table, int n);

} // namespace divlat
