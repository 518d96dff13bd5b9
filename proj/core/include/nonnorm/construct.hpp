#pragma once

// Modulus search and construction plans: for each degree n find the smallest m such that the degree-n
// cyclic subextension of ℚ(ζ_m, base)/base is certified, and describe that subextension by periods.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonnorm/verify.hpp"

namespace nonnorm {

/// One cyclic field ℚ(ζ_C)^H inside the plan. Certificates that share a prime are merged into one field.
struct FactorField {
  arith::u64 prime = 0;
  arith::u64 conductor = 0;             ///< C
  arith::u64 degree = 0;                ///< [(ℤ/C)* : H]
  arith::u64 generator = 0;             ///< c with c·H generating (ℤ/C)*/H
  std::vector<arith::u64> exponents;    ///< H itself, ascending; the period is Σ_{h∈H} ζ_C^h
  std::vector<std::size_t> certificates;  ///< indices into ExtensionPlan::certificates
};

struct ExtensionPlan {
  Ring base = Ring::gaussian;
  arith::u64 n = 1;
  arith::u64 m = 1;
  std::vector<FactorCertificate> certificates;
  std::vector<FactorField> factor_fields;
  std::vector<std::string> search_trace;
};

class SearchExhausted : public std::runtime_error {
 public:
  SearchExhausted(const std::string& what, std::vector<std::string> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  std::vector<std::string> trace_;
};

class UncertifiedError : public std::invalid_argument {
 public:
  UncertifiedError(const std::string& what, EntryReport report)
      : std::invalid_argument(what), report_(std::move(report)) {}
  const EntryReport& report() const { return report_; }

 private:
  EntryReport report_;
};

inline constexpr arith::u64 kDefaultSearchLimit = 1'000'000;

/// NONNORM_SEARCH_LIMIT when set to a positive integer, kDefaultSearchLimit otherwise.
arith::u64 search_limit_from_env();

/// Smallest certified m <= limit. n = 1 yields the trivial plan with m = 1.
/// Candidates are lcms of certifying prime powers, one per prime-power factor of n.
ExtensionPlan find_modulus(Ring base, arith::u64 n, arith::u64 limit = kDefaultSearchLimit);

/// Reference implementation: tries m = 3, 4, ... in order through verify_entry.
std::optional<arith::u64> scan_modulus(Ring base, arith::u64 n, arith::u64 limit);

/// Verification of a fixed (n, m) plus period parameters. Throws UncertifiedError when (n, m) fails.
ExtensionPlan plan_extension(Ring base, arith::u64 n, arith::u64 m);

/// Moduli listed per (base, n), read from CSV with header `base,n,modulus`.
class ReferenceTable {
 public:
  static ReferenceTable parse_csv(std::string_view text);
  static ReferenceTable load(const std::string& path);
  /// The copy compiled into the library.
  static const ReferenceTable& bundled();

  std::optional<arith::u64> lookup(Ring base, arith::u64 n) const;
  std::vector<std::pair<arith::u64, arith::u64>> rows(Ring base) const;  ///< (n, m) ascending by n
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::pair<Ring, arith::u64>, arith::u64> entries_;
};

enum class Conformance { match, smaller_valid, mismatch, unlisted, error };

std::string_view to_string(Conformance c);

struct TableRow {
  arith::u64 n = 0;
  arith::u64 m = 0;  ///< 0 when the search failed
  std::string routes;
  std::optional<arith::u64> reference;
  Conformance conformance = Conformance::unlisted;
  std::string error;
};

/// Compact description of the certificates, e.g. "2^3:B@17;3:B@7".
std::string route_summary(const std::vector<FactorCertificate>& certificates);

/// One row per n in [n_from, n_to] (2 <= n_from <= n_to <= 200). Search errors mark the row and
/// generation continues.
std::vector<TableRow> generate_table(Ring base, arith::u64 n_from, arith::u64 n_to,
                                     const ReferenceTable* reference = nullptr,
                                     arith::u64 limit = kDefaultSearchLimit);

/// CSV with columns n,modulus,routes,conformance.
std::string table_csv(const std::vector<TableRow>& rows);

}  // namespace nonnorm
