#pragma once

// Non-norm certification of γ = 1+i over ℚ(i) and γ = √−3 over ℚ(ζ₃) for cyclic subextensions of
// ℚ(ζ_m, base)/base. The degree n is split into prime-power factors q^k, and each factor is certified
// on its own, either by the inert-prime route (A) or by the residue-symbol route (B).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nonnorm/arith.hpp"
#include "nonnorm/quadring.hpp"

namespace nonnorm {

struct BaseField {
  Ring kind = Ring::gaussian;
  QuadInt gamma;
  arith::u64 ramified_prime = 2;  ///< ℓ_γ = norm(γ)
  std::string gamma_label;

  static BaseField gaussian();
  static BaseField eisenstein();
  static BaseField of(Ring ring);
};

enum class Route { A, B };

std::string_view to_string(Route route);

/// A subgroup H of (ℤ/M)* of index q^k with cyclic quotient.
///
/// For odd M the unit group is cyclic, so H is the unique subgroup of that index and the quotient map is
/// x -> x^(φ(M)/q^k). For M = 2^e the subgroup is {x ≡ ±1 mod 2^(k+2)}, whose fixed field is the real
/// subfield of ℚ(ζ_{2^(k+2)}).
struct QuotientSubgroup {
  enum class Kind { cyclic, two_adic_real };

  Kind kind = Kind::cyclic;
  arith::u64 modulus = 0;
  arith::u64 index = 1;               ///< q^k
  arith::u64 order = 1;               ///< |H|
  std::vector<arith::u64> generators;  ///< generators of H modulo M

  bool contains_minus_one() const;
  bool contains(arith::u64 x) const;
  /// Order of x·H in (ℤ/M)*/H.
  arith::u64 coset_order(arith::u64 x) const;
  /// Elements of H in ascending order. Throws BudgetError when |H| > limit.
  std::vector<arith::u64> elements(arith::u64 limit = 100'000) const;
};

struct RouteAWitness {
  QuotientSubgroup subgroup;
  arith::u64 coset_order = 0;  ///< order of ℓ_γ·H, equal to q^k on success
};

struct RouteBWitness {
  enum class Test { rational, residue_field };

  arith::u64 p = 0;
  unsigned residue_degree = 1;
  Embedding embedding = Embedding::first;
  Test test = Test::rational;
  FieldElement residue;    ///< ℓ_γ mod p (rational test) or reduce(γ) (residue-field test)
  FieldElement power;      ///< residue^((|K|-1)/gcd(q, |K|-1)); never 1 on success
};

struct FactorCertificate {
  arith::u64 q = 0;
  unsigned k = 0;
  arith::u64 M = 0;
  Route route = Route::B;
  std::variant<RouteAWitness, RouteBWitness> witness;

  arith::u64 degree() const { return arith::ipow(q, k); }
};

/// Why one (factor, M, route) attempt failed.
struct CandidateFailure {
  enum class Kind { no_subextension, not_disjoint, ramified, residue_test, coset_order };

  arith::u64 q = 0;
  unsigned k = 0;
  arith::u64 M = 0;
  Route route = Route::B;
  Kind kind = Kind::residue_test;
  std::string reason;
};

/// Either a certificate or the reason the attempt failed.
using RouteResult = std::variant<FactorCertificate, CandidateFailure>;

struct EntryReport {
  Ring base = Ring::gaussian;
  arith::u64 n = 0;
  arith::u64 m = 0;
  bool certified = false;
  std::vector<FactorCertificate> certificates;
  std::vector<CandidateFailure> failures;     ///< every rejected attempt, in scan order
  std::vector<std::string> reasons;          ///< one line per uncertified factor (empty when certified)
  std::vector<arith::u64> unused_primes;     ///< prime divisors of m that no certificate uses
};

/// True iff q² does not divide ℓ^(q-1) - 1, i.e. q is not a base-ℓ Wieferich prime.
bool check_prop1(arith::u64 q, const BaseField& base);

/// Inert-prime route for the factor q^k inside ℚ(ζ_M) with M a prime power.
RouteResult certify_route_A(arith::u64 q, unsigned k, arith::u64 M, const BaseField& base);

/// Residue-symbol route for the factor q^k inside ℚ(ζ_p) with p an odd prime.
RouteResult certify_route_B(arith::u64 q, unsigned k, arith::u64 p, const BaseField& base);

/// Certifies γ as a non-norm element of the degree-n cyclic subextension of ℚ(ζ_m, base)/base.
/// Throws std::invalid_argument for n = 0 or m < 3, BaseOverlapError when m meets the base field's conductor.
EntryReport verify_entry(const BaseField& base, arith::u64 n, arith::u64 m);

/// Recomputes every stored witness from scratch. Throws ConsistencyError on any disagreement.
void revalidate(const EntryReport& report);

}  // namespace nonnorm
