#include "divlat/numfields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "divlat/discbounds.hpp"

namespace divlat {

namespace {

using Json = nlohmann::json;

[[noreturn]] void record_error(const std::string& label,
                               const std::string& what) {
  throw std::runtime_error("field record '" + label + "': " + what);
}

BigInt parse_bigint(const Json& j, const std::string& label,
                    const std::string& key) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  record_error(label, key + " must be an integer or decimal string");
}

FieldRecord parse_record(const Json& j) {
  FieldRecord rec;
  rec.label = j.value("label", std::string("?"));
  if (!j.contains("degree") || !j.contains("signature") ||
      !j.contains("disc") || !j.contains("min_poly"))
    record_error(rec.label, "missing one of degree/signature/disc/min_poly");
  rec.degree = j.at("degree").get<int>();
  const auto& sig = j.at("signature");
  if (!sig.is_array() || sig.size() != 2)
    record_error(rec.label, "signature must be [r1, r2]");
  rec.r1 = sig[0].get<int>();
  rec.r2 = sig[1].get<int>();
  rec.disc = parse_bigint(j.at("disc"), rec.label, "disc");
  for (const auto& c : j.at("min_poly"))
    rec.min_poly.push_back(parse_bigint(c, rec.label, "min_poly"));
  if (j.contains("prime_norms"))
    for (const auto& nv : j.at("prime_norms"))
      rec.prime_norms.push_back(nv.get<std::int64_t>());

  if (rec.degree < 1) record_error(rec.label, "degree must be >= 1");
  if (rec.r1 < 0 || rec.r2 < 0 || rec.r1 + 2 * rec.r2 != rec.degree)
    record_error(rec.label, "signature inconsistent with degree");
  if (static_cast<int>(rec.min_poly.size()) != rec.degree + 1)
    record_error(rec.label, "min_poly degree does not match degree");
  if (rec.min_poly.back() != 1) record_error(rec.label, "min_poly not monic");
  if (rec.disc == 0) record_error(rec.label, "disc must be nonzero");
  const bool want_negative = rec.r2 % 2 == 1;
  if (want_negative != (rec.disc < 0))
    record_error(rec.label, "disc sign violates (-1)^r2 rule");
  if (!std::is_sorted(rec.prime_norms.begin(), rec.prime_norms.end()))
    record_error(rec.label, "prime_norms must be ascending");
  return rec;
}

// --- arithmetic in F_p[x]; coefficients in [0, p), low-to-high, no
// trailing zeros (zero polynomial = empty vector) ---

using Poly = std::vector<std::int64_t>;

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    const std::int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  return t < 0 ? t + p : t;
}

Poly pmul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return trim(std::move(c));
}

// Remainder of a modulo b (b nonzero).
Poly pmod(Poly a, const Poly& b, std::int64_t p) {
  const std::int64_t lcinv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::int64_t q = a.back() * lcinv % p;
    if (q != 0) {
      const std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[off + i] = ((a[off + i] - q * b[i]) % p + p) % p;
    }
    a.pop_back();
    a = trim(std::move(a));
    if (a.size() < b.size()) break;
  }
  return a;
}

Poly pquot(Poly a, const Poly& b, std::int64_t p) {
  if (a.size() < b.size()) return {};
  const std::int64_t lcinv = inv_mod(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::int64_t c = a[k + b.size() - 1] * lcinv % p;
    q[k] = c;
    if (c != 0)
      for (std::size_t i = 0; i < b.size(); ++i)
        a[k + i] = ((a[k + i] - c * b[i]) % p + p) % p;
  }
  return trim(std::move(q));
}

Poly monic(Poly f, std::int64_t p) {
  if (f.empty() || f.back() == 1) return f;
  const std::int64_t s = inv_mod(f.back(), p);
  for (auto& c : f) c = c * s % p;
  return f;
}

Poly pgcd(Poly a, Poly b, std::int64_t p) {
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a), p);
}

Poly pderiv(const Poly& f, std::int64_t p) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i)
    d.push_back(static_cast<std::int64_t>(i) % p * f[i] % p);
  return trim(std::move(d));
}

Poly ppow_mod(Poly base, std::int64_t e, const Poly& mod, std::int64_t p) {
  Poly r{1};
  base = pmod(std::move(base), mod, p);
  while (e > 0) {
    if (e & 1) r = pmod(pmul(r, base, p), mod, p);
    base = pmod(pmul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

// f with derivative 0 satisfies f(x) = g(x^p); over F_p the root map on
// coefficients is the identity.
Poly pth_root(const Poly& f, std::int64_t p) {
  Poly g;
  for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(p))
    g.push_back(f[i]);
  return trim(std::move(g));
}

// Distinct-degree factorization of a squarefree monic polynomial: pairs
// (degree, count of irreducible factors of that degree).
std::vector<std::pair<int, int>> ddf(Poly f, std::int64_t p) {
  std::vector<std::pair<int, int>> out;
  Poly h{0, 1}; // x
  int d = 0;
  while (static_cast<int>(f.size()) - 1 >= 2 * (d + 1)) {
    ++d;
    h = ppow_mod(std::move(h), p, f, p);
    Poly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = ((hx[1] - 1) % p + p) % p;
    hx = trim(std::move(hx));
    Poly g = pgcd(f, hx, p);
    if (g.size() > 1) {
      out.emplace_back(d, static_cast<int>((g.size() - 1) / d));
      f = pquot(std::move(f), g, p);
      if (f.size() > 1) h = pmod(std::move(h), f, p);
    }
  }
  if (f.size() > 1)
    out.emplace_back(static_cast<int>(f.size() - 1), 1);
  return out;
}

// Squarefree decomposition in characteristic p: list of (squarefree part,
// multiplicity).
std::vector<std::pair<Poly, int>> squarefree_decomp(Poly f, std::int64_t p) {
  std::vector<std::pair<Poly, int>> out;
  int e = 1;
  f = monic(std::move(f), p);
  while (f.size() > 1) {
    Poly df = pderiv(f, p);
    if (df.empty()) {
      f = pth_root(f, p);
      e *= static_cast<int>(p);
      continue;
    }
    Poly g = pgcd(f, df, p);
    Poly w = pquot(f, g, p);
    int i = 1;
    while (w.size() > 1) {
      Poly y = pgcd(w, g, p);
      Poly z = pquot(w, y, p);
      if (z.size() > 1) out.emplace_back(monic(std::move(z), p), i * e);
      w = std::move(y);
      g = pquot(g, w, p);
      ++i;
    }
    f = std::move(g);
  }
  return out;
}

bool is_prime_int(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

} // namespace

FieldTable load_fields(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field table: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
  }
  FieldTable table;
  const Json* records = nullptr;
  if (j.is_array()) {
    records = &j;
  } else if (j.is_object() && j.contains("fields")) {
    records = &j.at("fields");
    if (j.contains("complete_upto"))
      table.complete_upto =
          parse_bigint(j.at("complete_upto"), "<table>", "complete_upto");
  } else {
    throw std::runtime_error(path +
                             ": expected a record array or {fields: [...]}");
  }
  for (const auto& r : *records) table.fields.push_back(parse_record(r));
  return table;
}

FieldRecord parse_field_record_json(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("invalid field record JSON: ") +
                             e.what());
  }
  return parse_record(j);
}

BigInt poly_disc(const std::vector<BigInt>& poly) {
  const int n = static_cast<int>(poly.size()) - 1;
  if (n < 1) throw std::invalid_argument("poly_disc: degree must be >= 1");
  if (poly.back() != 1)
    throw std::invalid_argument("poly_disc: polynomial must be monic");
  // derivative
  std::vector<BigInt> der(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) der[static_cast<std::size_t>(i - 1)] = i * poly[static_cast<std::size_t>(i)];
  const int m = n - 1;

  // Sylvester matrix of (poly, der), size (n + m)
  const int size = n + m;
  std::vector<std::vector<BigInt>> a(
      static_cast<std::size_t>(size),
      std::vector<BigInt>(static_cast<std::size_t>(size), BigInt(0)));
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k)
      a[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] =
          poly[static_cast<std::size_t>(n - k)];
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k)
      a[static_cast<std::size_t>(m + row)][static_cast<std::size_t>(row + k)] =
          der[static_cast<std::size_t>(m - k)];

  // Bareiss fraction-free elimination
  BigInt prev(1);
  int sign = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r)
        if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return BigInt(0);
      std::swap(a[static_cast<std::size_t>(k)],
                a[static_cast<std::size_t>(swap_row)]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        BigInt num = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                         a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                     a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                         a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = num / prev;
      }
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = 0;
    }
    prev = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
  }
  BigInt res = sign * a[static_cast<std::size_t>(size - 1)]
                       [static_cast<std::size_t>(size - 1)];
  // disc = (-1)^{n(n-1)/2} Res(f, f') / lc(f), and lc = 1
  if ((n * (n - 1) / 2) % 2 == 1) res = -res;
  return res;
}

std::vector<std::pair<int, int>> factor_shape_mod_p(
    const std::vector<BigInt>& poly, std::int64_t p) {
  if (p < 2 || !is_prime_int(p))
    throw std::invalid_argument("factor_shape_mod_p: p must be prime");
  Poly f;
  for (const auto& c : poly) {
    BigInt r = c % p;
    if (r < 0) r += p;
    f.push_back(r.convert_to<std::int64_t>());
  }
  f = trim(std::move(f));
  if (f.size() != poly.size())
    throw std::invalid_argument("factor_shape_mod_p: leading coeff vanishes");

  std::vector<std::pair<int, int>> shape;
  for (auto& [g, mult] : squarefree_decomp(f, p)) {
    for (auto [deg, count] : ddf(g, p))
      for (int i = 0; i < count; ++i) shape.emplace_back(deg, mult);
  }
  std::sort(shape.begin(), shape.end());
  long total = 0;
  for (auto [deg, mult] : shape) total += static_cast<long>(deg) * mult;
  if (total != static_cast<long>(poly.size()) - 1)
    throw std::logic_error("factor_shape_mod_p: degrees do not sum up");
  return shape;
}

PrimeNormList smallest_prime_norms(const FieldRecord& field, int how_many,
                                   std::int64_t search_bound) {
  if (how_many < 1)
    throw std::invalid_argument("smallest_prime_norms: how_many >= 1");
  if (static_cast<int>(field.prime_norms.size()) >= how_many) {
    PrimeNormList out;
    out.norms.assign(field.prime_norms.begin(),
                     field.prime_norms.begin() + how_many);
    out.complete_upto = out.norms.back();
    out.from_record = true;
    return out;
  }

  const BigInt dpoly = poly_disc(field.min_poly);
  if (dpoly == 0)
    record_error(field.label, "min_poly is not squarefree");
  if (dpoly % field.disc != 0)
    record_error(field.label, "field disc does not divide poly disc");
  const BigInt index_sq = dpoly / field.disc;
  if (index_sq < 0 || boost::multiprecision::sqrt(index_sq) *
                              boost::multiprecision::sqrt(index_sq) !=
                          index_sq)
    record_error(field.label, "poly disc / field disc is not a square");

  std::vector<std::int64_t> norms;
  std::vector<std::int64_t> blocking;
  constexpr std::int64_t kHardCap = 2000000;
  std::int64_t bound = std::max<std::int64_t>(search_bound, 2);
  std::int64_t p = 1;
  while (true) {
    ++p;
    if (p > bound) {
      // Not certified yet. Once an index-divisor prime has been skipped,
      // every further prime only yields norms above it, so if fewer than
      // how_many norms sit strictly below the smallest skipped prime the
      // list can never be certified. Otherwise widen the scan.
      if (!blocking.empty()) {
        const auto below = std::count_if(
            norms.begin(), norms.end(),
            [&](std::int64_t nv) { return nv < blocking.front(); });
        if (below < how_many) break;
      }
      if (bound >= kHardCap) break;
      bound = std::min<std::int64_t>(kHardCap, bound * 4);
    }
    if (!is_prime_int(p)) continue;
    if (index_sq % (BigInt(p) * p) == 0) {
      blocking.push_back(p);
      continue;
    }
    for (auto [deg, mult] : factor_shape_mod_p(field.min_poly, p)) {
      (void)mult; // one ideal per distinct factor, whatever the ramification
      if (deg * std::log(static_cast<double>(p)) > 42.0) continue;
      std::int64_t norm = 1;
      for (int i = 0; i < deg; ++i) norm *= p;
      norms.push_back(norm);
    }
    std::sort(norms.begin(), norms.end());
    if (static_cast<int>(norms.size()) >= how_many) {
      const std::int64_t kth = norms[static_cast<std::size_t>(how_many - 1)];
      const std::int64_t min_block =
          blocking.empty() ? std::numeric_limits<std::int64_t>::max()
                           : blocking.front();
      if (kth <= p && kth < min_block) {
        PrimeNormList out;
        out.norms.assign(norms.begin(), norms.begin() + how_many);
        out.complete_upto = kth;
        out.from_record = false;
        return out;
      }
    }
  }
  std::ostringstream msg;
  msg << "cannot certify " << how_many << " smallest norms for '"
      << field.label << "'";
  if (!blocking.empty()) {
    msg << "; index divisor prime(s) block factorization:";
    for (auto b : blocking) msg << ' ' << b;
  }
  throw std::runtime_error(msg.str());
}

CenterSearchResult optimal_center_search(const std::vector<FieldRecord>& fields,
                                         int n) {
  FieldTable t;
  t.fields = fields;
  return optimal_center_search(t, n);
}

CenterSearchResult optimal_center_search(const FieldTable& table, int n) {
  if (table.fields.empty())
    throw std::invalid_argument("optimal_center_search: no fields given");
  if (n < 2) throw std::invalid_argument("optimal_center_search: n >= 2");
  const int degree = table.fields.front().degree;
  for (const auto& f : table.fields) {
    if (f.r1 != 0)
      record_error(f.label, "center search requires totally complex fields");
    if (f.degree != degree)
      record_error(f.label, "center search requires a single degree");
  }

  CenterSearchResult res;
  res.n = n;
  for (const auto& f : table.fields) {
    CenterCandidate cand;
    cand.field = f;
    const auto norms = smallest_prime_norms(f, 2);
    cand.norm1 = norms.norms[0];
    cand.norm2 = norms.norms[1];
    cand.min_disc = center_fixed_min_disc(f, n);
    res.ranking.push_back(std::move(cand));
  }
  std::sort(res.ranking.begin(), res.ranking.end(),
            [](const CenterCandidate& a, const CenterCandidate& b) {
              if (a.min_disc.value != b.min_disc.value)
                return a.min_disc.value < b.min_disc.value;
              const BigInt da = boost::multiprecision::abs(a.field.disc);
              const BigInt db = boost::multiprecision::abs(b.field.disc);
              if (da != db) return da < db;
              return a.field.label < b.field.label;
            });

  const BigInt& best = res.ranking.front().min_disc.value;
  res.cutoff = std::exp(log_bigint(best) / (static_cast<double>(n) * n));
  if (table.complete_upto > 0) {
    BigInt cap(1);
    for (int i = 0; i < n * n; ++i) cap *= table.complete_upto;
    res.provably_complete = best <= cap;
  }
  return res;
}

} // namespace divlat
