#include "nonnorm/construct.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace nonnorm {

namespace detail {
extern const std::string_view kReferenceTablesCsv;
}

using arith::u64;

namespace {

bool certifies(const RouteResult& r) { return std::holds_alternative<FactorCertificate>(r); }

// Prime powers M <= bound for which the factor q^k has a certificate inside ℚ(ζ_M). Higher powers of a
// prime that already qualifies are left out: they certify exactly when the prime does and never lower an lcm.
std::vector<u64> factor_candidates(const BaseField& base, u64 q, unsigned k, u64 bound,
                                   const std::vector<u64>& primes) {
  const u64 qk = arith::ipow(q, k);
  std::vector<u64> out;
  for (u64 p : primes) {
    if (p > bound) break;
    if (p == 2 || p == base.ramified_prime || (p - 1) % qk != 0) continue;
    if (certifies(certify_route_B(q, k, p, base)) || certifies(certify_route_A(q, k, p, base))) out.push_back(p);
  }
  auto try_route_A = [&](unsigned e) {
    const u64 M = arith::ipow(q, e);
    if (M <= bound && certifies(certify_route_A(q, k, M, base))) out.push_back(M);
  };
  // The degree-q^k subfield of ℚ(ζ_{q^e}) sits in ℚ(ζ_{q^(k+1)}).
  if (q != 2 && q != base.ramified_prime && qk <= bound / q) try_route_A(k + 1);
  if (q == 2 && base.kind == Ring::eisenstein && qk <= bound / 4) try_route_A(k + 2);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<u64> smallest_lcm(const std::vector<std::vector<u64>>& candidates, u64 bound) {
  u64 best = bound + 1;
  std::function<void(std::size_t, u64)> dfs = [&](std::size_t i, u64 current) {
    if (i == candidates.size()) {
      best = std::min(best, current);
      return;
    }
    for (u64 M : candidates[i]) {
      if (M >= best) break;
      const u64 g = std::gcd(current, M);
      if (current / g > (best - 1) / M) continue;
      const u64 l = current / g * M;
      if (l < best) dfs(i + 1, l);
    }
  };
  dfs(0, 1);
  if (best > bound) return std::nullopt;
  return best;
}

u64 field_conductor(const FactorCertificate& cert) {
  const u64 p = arith::prime_power_base(cert.M);
  if (cert.route == Route::B) return p;
  if (p == 2) return arith::ipow(2, cert.k + 2);
  if (cert.q != p) return p;
  return arith::ipow(p, cert.k + 1);
}

std::vector<FactorField> build_factor_fields(const std::vector<FactorCertificate>& certificates) {
  std::map<u64, FactorField> by_prime;
  for (std::size_t i = 0; i < certificates.size(); ++i) {
    const auto& cert = certificates[i];
    const u64 p = arith::prime_power_base(cert.M);
    auto [it, inserted] = by_prime.try_emplace(p);
    FactorField& f = it->second;
    if (inserted) {
      f.prime = p;
      f.degree = 1;
      f.conductor = 1;
    }
    f.conductor = std::max(f.conductor, field_conductor(cert));
    f.degree *= cert.degree();
    f.certificates.push_back(i);
  }
  std::vector<FactorField> out;
  for (auto& [p, f] : by_prime) {
    const u64 C = f.conductor;
    if (p == 2) {
      f.generator = 3;
      f.exponents = {1, C - 1};
    } else {
      const u64 phi = arith::euler_phi(C);
      if (phi % f.degree != 0) throw ConsistencyError("factor degree does not divide phi(conductor)");
      f.generator = arith::primitive_root(C);
      const u64 h = arith::mod_pow(f.generator, f.degree, C);
      u64 x = 1;
      for (u64 i = 0; i < phi / f.degree; ++i) {
        f.exponents.push_back(x);
        x = arith::mul_mod(x, h, C);
      }
      std::sort(f.exponents.begin(), f.exponents.end());
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string factor_text(u64 q, unsigned k) {
  return k == 1 ? std::to_string(q) : std::to_string(q) + "^" + std::to_string(k);
}

bool overlaps(Ring base, u64 m) { return base == Ring::gaussian ? m % 4 == 0 : m % 3 == 0; }

}  // namespace

u64 search_limit_from_env() {
  const char* raw = std::getenv("NONNORM_SEARCH_LIMIT");
  if (raw == nullptr || *raw == '\0') return kDefaultSearchLimit;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return kDefaultSearchLimit;
  return v;
}

ExtensionPlan plan_extension(Ring base, u64 n, u64 m) {
  if (n == 1) {
    // Any admissible m works; m = 1 is the trivial extension.
    if (m != 1) verify_entry(BaseField::of(base), n, m);
    ExtensionPlan plan;
    plan.base = base;
    plan.m = m;
    return plan;
  }
  EntryReport report = verify_entry(BaseField::of(base), n, m);
  if (!report.certified) {
    std::string what = "(n=" + std::to_string(n) + ", m=" + std::to_string(m) + ") is not certified";
    if (!report.reasons.empty()) what += ": " + report.reasons.front();
    throw UncertifiedError(what, std::move(report));
  }
  ExtensionPlan plan;
  plan.base = base;
  plan.n = n;
  plan.m = m;
  plan.certificates = report.certificates;
  plan.factor_fields = build_factor_fields(plan.certificates);
  return plan;
}

ExtensionPlan find_modulus(Ring base, u64 n, u64 limit) {
  if (n == 0) throw std::invalid_argument("find_modulus: n must be positive");
  if (n == 1) return plan_extension(base, 1, 1);
  if (limit < 3) throw std::invalid_argument("find_modulus: limit must be at least 3");
  const BaseField field = BaseField::of(base);
  const auto n_factors = arith::factorize(n);
  const auto primes = arith::primes_up_to(limit);
  std::vector<std::string> trace;

  for (u64 bound = std::min<u64>(64, limit);; bound = std::min(bound * 4, limit)) {
    std::vector<std::vector<u64>> candidates;
    bool empty_factor = false;
    for (const auto& [q, k] : n_factors) {
      candidates.push_back(factor_candidates(field, q, k, bound, primes));
      if (candidates.back().empty()) {
        trace.push_back("bound " + std::to_string(bound) + ": no prime power certifies the factor " +
                        factor_text(q, k));
        empty_factor = true;
      }
    }
    if (!empty_factor) {
      std::sort(candidates.begin(), candidates.end(),
                [](const auto& a, const auto& b) { return a.size() < b.size(); });
      if (auto best = smallest_lcm(candidates, bound)) {
        trace.push_back("bound " + std::to_string(bound) + ": smallest certified modulus " + std::to_string(*best));
        ExtensionPlan plan = plan_extension(base, n, *best);
        plan.search_trace = std::move(trace);
        return plan;
      }
      trace.push_back("bound " + std::to_string(bound) + ": every product of certifying prime powers exceeds the bound");
    }
    if (bound >= limit) break;
  }
  throw SearchExhausted("no certified modulus <= " + std::to_string(limit) + " for n = " + std::to_string(n) +
                            " over " + std::string(to_string(base)),
                        std::move(trace));
}

std::optional<u64> scan_modulus(Ring base, u64 n, u64 limit) {
  if (n == 0) throw std::invalid_argument("scan_modulus: n must be positive");
  if (n == 1) return 1;
  const BaseField field = BaseField::of(base);
  for (u64 m = 3; m <= limit; ++m) {
    if (overlaps(base, m)) continue;
    if (verify_entry(field, n, m).certified) return m;
  }
  return std::nullopt;
}

ReferenceTable ReferenceTable::parse_csv(std::string_view text) {
  ReferenceTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "base,n,modulus") throw std::invalid_argument("reference table: expected header base,n,modulus");
      header_seen = true;
      continue;
    }
    std::istringstream fields(line);
    std::string base, n, m;
    if (!std::getline(fields, base, ',') || !std::getline(fields, n, ',') || !std::getline(fields, m)) {
      throw std::invalid_argument("reference table: malformed line " + std::to_string(line_no));
    }
    try {
      std::size_t used_n = 0, used_m = 0;
      const u64 nv = std::stoull(n, &used_n);
      const u64 mv = std::stoull(m, &used_m);
      if (used_n != n.size() || used_m != m.size()) throw std::invalid_argument("trailing characters");
      table.entries_[{parse_ring(base), nv}] = mv;
    } catch (const std::exception& e) {
      throw std::invalid_argument("reference table: line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header_seen) throw std::invalid_argument("reference table: empty input");
  return table;
}

ReferenceTable ReferenceTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open reference table " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

const ReferenceTable& ReferenceTable::bundled() {
  static const ReferenceTable table = parse_csv(detail::kReferenceTablesCsv);
  return table;
}

std::optional<u64> ReferenceTable::lookup(Ring base, u64 n) const {
  auto it = entries_.find({base, n});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<u64, u64>> ReferenceTable::rows(Ring base) const {
  std::vector<std::pair<u64, u64>> out;
  for (const auto& [key, m] : entries_) {
    if (key.first == base) out.emplace_back(key.second, m);
  }
  return out;
}

std::string_view to_string(Conformance c) {
  switch (c) {
    case Conformance::match:
      return "match";
    case Conformance::smaller_valid:
      return "smaller-valid";
    case Conformance::mismatch:
      return "mismatch";
    case Conformance::unlisted:
      return "unlisted";
    case Conformance::error:
      return "error";
  }
  return "error";
}

std::string route_summary(const std::vector<FactorCertificate>& certificates) {
  std::string out;
  for (const auto& c : certificates) {
    if (!out.empty()) out += ';';
    out += factor_text(c.q, c.k) + ':' + std::string(to_string(c.route)) + '@' + std::to_string(c.M);
  }
  return out;
}

std::vector<TableRow> generate_table(Ring base, u64 n_from, u64 n_to, const ReferenceTable* reference, u64 limit) {
  if (n_from < 2 || n_from > n_to || n_to > 200) {
    throw std::invalid_argument("generate_table: need 2 <= from <= to <= 200");
  }
  std::vector<TableRow> rows;
  for (u64 n = n_from; n <= n_to; ++n) {
    TableRow row;
    row.n = n;
    if (reference != nullptr) row.reference = reference->lookup(base, n);
    try {
      const ExtensionPlan plan = find_modulus(base, n, limit);
      row.m = plan.m;
      row.routes = route_summary(plan.certificates);
      if (!row.reference) {
        row.conformance = Conformance::unlisted;
      } else if (row.m == *row.reference) {
        row.conformance = Conformance::match;
      } else if (row.m < *row.reference) {
        row.conformance = Conformance::smaller_valid;
      } else {
        row.conformance = Conformance::mismatch;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
      row.conformance = Conformance::error;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::string out = "n,modulus,routes,conformance\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + (r.m == 0 ? std::string() : std::to_string(r.m)) + ',' + r.routes + ',' +
           std::string(to_string(r.conformance)) + '\n';
  }
  return out;
}

}  // namespace nonnorm
