#include "nonnorm/verify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nonnorm {

using arith::u64;

namespace {

std::string power_name(u64 q) {
  switch (q) {
    case 2:
      return "quadratic";
    case 3:
      return "cubic";
    default:
      return std::to_string(q) + "-th power";
  }
}

std::string factor_label(u64 q, unsigned k) {
  return k == 1 ? std::to_string(q) : std::to_string(q) + "^" + std::to_string(k);
}

CandidateFailure failure(u64 q, unsigned k, u64 M, Route route, CandidateFailure::Kind kind, std::string reason) {
  return CandidateFailure{q, k, M, route, kind, std::move(reason)};
}

void require_prime(u64 q, const char* what) {
  if (!arith::is_prime(q)) throw std::invalid_argument(std::string(what) + ": " + std::to_string(q) + " is not prime");
}

QuotientSubgroup make_subgroup(u64 M, u64 p, unsigned e, u64 qk) {
  QuotientSubgroup h;
  h.modulus = M;
  h.index = qk;
  if (p == 2) {
    h.kind = QuotientSubgroup::Kind::two_adic_real;
    h.order = arith::ipow(2, e - 1) / qk;
    h.generators = {M - 1};
    const u64 g = arith::mod_pow(3, qk, M);
    if (g != 1) h.generators.push_back(g);
  } else {
    h.kind = QuotientSubgroup::Kind::cyclic;
    h.order = arith::euler_phi(M) / qk;
    h.generators = {arith::mod_pow(arith::primitive_root(M), qk, M)};
  }
  return h;
}

FieldElement rational_power(u64 ell, u64 q, u64 p) {
  return {arith::mod_pow(ell, (p - 1) / std::gcd(q, p - 1), p), 0};
}

FieldElement field_power(const FieldElement& alpha, u64 q, const ResidueField& field) {
  const arith::u128 group_order = field.size() - 1;
  const u64 g = std::gcd(q, static_cast<u64>(group_order % q));
  return field.pow(alpha, group_order / g);
}

}  // namespace

BaseField BaseField::gaussian() {
  BaseField f{Ring::gaussian, one_plus_i(), 2, "1+i"};
  if (static_cast<u64>(f.gamma.norm()) != f.ramified_prime) throw ConsistencyError("norm(1+i) != 2");
  return f;
}

BaseField BaseField::eisenstein() {
  BaseField f{Ring::eisenstein, sqrt_minus3(), 3, "sqrt(-3)"};
  if (static_cast<u64>(f.gamma.norm()) != f.ramified_prime) throw ConsistencyError("norm(sqrt(-3)) != 3");
  return f;
}

BaseField BaseField::of(Ring ring) { return ring == Ring::gaussian ? gaussian() : eisenstein(); }

std::string_view to_string(Route route) { return route == Route::A ? "A" : "B"; }

bool QuotientSubgroup::contains_minus_one() const { return contains(modulus - 1); }

bool QuotientSubgroup::contains(u64 x) const {
  x %= modulus;
  if (std::gcd(x, modulus) != 1) return false;
  if (kind == Kind::cyclic) return arith::mod_pow(x, order, modulus) == 1;
  const u64 level = 4 * index;
  const u64 r = x % level;
  return r == 1 || r == level - 1;
}

u64 QuotientSubgroup::coset_order(u64 x) const {
  x %= modulus;
  if (std::gcd(x, modulus) != 1) throw std::invalid_argument("coset_order: not a unit modulo " + std::to_string(modulus));
  if (kind == Kind::cyclic) return arith::multiplicative_order(arith::mod_pow(x, order, modulus), modulus);
  // The quotient is a 2-group, so the coset order is the first 2^j with x^(2^j) in H.
  u64 r = 1;
  while (!contains(x)) {
    x = arith::mul_mod(x, x, modulus);
    r *= 2;
  }
  return r;
}

std::vector<u64> QuotientSubgroup::elements(u64 limit) const {
  if (order > limit) throw BudgetError("subgroup of order " + std::to_string(order) + " exceeds enumeration limit");
  std::vector<u64> out;
  if (kind == Kind::cyclic) {
    u64 x = 1;
    for (u64 i = 0; i < order; ++i) {
      out.push_back(x);
      x = arith::mul_mod(x, generators.front(), modulus);
    }
  } else {
    for (u64 x = 1; x < modulus; x += 2) {
      if (contains(x)) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool check_prop1(u64 q, const BaseField& base) {
  require_prime(q, "check_prop1");
  if (q == 2) throw std::invalid_argument("check_prop1: q must be odd");
  if (q == base.ramified_prime) throw std::invalid_argument("check_prop1: q equals the ramified prime");
  return arith::mod_pow(base.ramified_prime, q - 1, q * q) != 1;
}

RouteResult certify_route_A(u64 q, unsigned k, u64 M, const BaseField& base) {
  using Kind = CandidateFailure::Kind;
  require_prime(q, "certify_route_A");
  if (k == 0) throw std::invalid_argument("certify_route_A: k must be positive");
  const u64 p = arith::prime_power_base(M);
  if (p == 0) throw std::invalid_argument("certify_route_A: " + std::to_string(M) + " is not a prime power");
  const unsigned e = arith::factorize(M).front().exponent;
  const u64 qk = arith::ipow(q, k);
  const u64 ell = base.ramified_prime;
  const std::string label = factor_label(q, k);

  if (p == ell) {
    return failure(q, k, M, Route::A, Kind::not_disjoint,
                   std::to_string(M) + " is a power of the ramified prime " + std::to_string(ell));
  }
  if (arith::carmichael_lambda(M) % qk != 0) {
    return failure(q, k, M, Route::A, Kind::no_subextension,
                   label + " does not divide lambda(" + std::to_string(M) + ")");
  }
  if (p == 2) {
    // Only the real subfields of ℚ(ζ_{2^e}) are disjoint from the base; they have degree 2^j with j <= e - 2.
    if (base.kind != Ring::eisenstein || q != 2 || k + 2 > e) {
      return failure(q, k, M, Route::A, Kind::not_disjoint,
                     "Q(zeta_" + std::to_string(M) + ") has no real cyclic subfield of degree " + label);
    }
  }
  RouteAWitness w{make_subgroup(M, p, e, qk), 0};
  w.coset_order = w.subgroup.coset_order(ell);
  if (w.coset_order != qk) {
    return failure(q, k, M, Route::A, Kind::coset_order,
                   "coset of " + std::to_string(ell) + " has order " + std::to_string(w.coset_order) +
                       " in the degree-" + std::to_string(qk) + " quotient mod " + std::to_string(M));
  }
  return FactorCertificate{q, k, M, Route::A, w};
}

RouteResult certify_route_B(u64 q, unsigned k, u64 p, const BaseField& base) {
  using Kind = CandidateFailure::Kind;
  require_prime(q, "certify_route_B");
  require_prime(p, "certify_route_B");
  if (k == 0) throw std::invalid_argument("certify_route_B: k must be positive");
  if (p == base.ramified_prime) {
    throw RamifiedPrimeError("certify_route_B: " + std::to_string(p) + " ramifies in the base field");
  }
  if (p == 2) throw std::invalid_argument("certify_route_B: p must be odd");
  const u64 qk = arith::ipow(q, k);
  const std::string label = factor_label(q, k);
  if ((p - 1) % qk != 0) {
    return failure(q, k, p, Route::B, Kind::no_subextension, label + " does not divide " + std::to_string(p - 1));
  }

  if (q != 2) {
    const u64 ell = base.ramified_prime;
    RouteBWitness w;
    w.p = p;
    w.test = RouteBWitness::Test::rational;
    w.residue = {ell % p, 0};
    w.power = rational_power(ell, q, p);
    if (w.power.c0 == 1) {
      return failure(q, k, p, Route::B, Kind::residue_test,
                     std::to_string(ell) + " is a " + power_name(q) + " residue mod " + std::to_string(p));
    }
    return FactorCertificate{q, k, p, Route::B, w};
  }

  const bool split = split_prime(p, base.kind).split;
  for (Embedding emb : {Embedding::first, Embedding::second}) {
    const ResidueField field = residue_field(p, base.kind, emb);
    RouteBWitness w;
    w.p = p;
    w.residue_degree = field.degree;
    w.embedding = field.embedding;
    w.test = RouteBWitness::Test::residue_field;
    w.residue = reduce(base.gamma, field);
    w.power = field_power(w.residue, q, field);
    if (!(w.power == field.one())) return FactorCertificate{q, k, p, Route::B, w};
    if (!split) break;
  }
  const std::string where = split ? "at both primes above " + std::to_string(p)
                                  : "in the residue field F_" + std::to_string(p) + "^2";
  return failure(q, k, p, Route::B, Kind::residue_test, base.gamma_label + " is a quadratic residue " + where);
}

EntryReport verify_entry(const BaseField& base, u64 n, u64 m) {
  if (n == 0) throw std::invalid_argument("verify_entry: n must be positive");
  if (m < 3) throw std::invalid_argument("verify_entry: m must be at least 3");
  if (base.kind == Ring::gaussian && m % 4 == 0) {
    throw BaseOverlapError("verify_entry: 4 divides m = " + std::to_string(m) + ", which meets Q(i)");
  }
  if (base.kind == Ring::eisenstein && m % 3 == 0) {
    throw BaseOverlapError("verify_entry: 3 divides m = " + std::to_string(m) + ", which meets Q(zeta_3)");
  }

  EntryReport report;
  report.base = base.kind;
  report.n = n;
  report.m = m;

  const auto m_factors = arith::factorize(m);
  std::vector<u64> divisors;
  for (const auto& [p, e] : m_factors) {
    for (unsigned j = 1; j <= e; ++j) divisors.push_back(arith::ipow(p, j));
  }
  std::sort(divisors.begin(), divisors.end());

  bool all_certified = true;
  if (n > 1) {
    for (const auto& [q, k] : arith::factorize(n)) {
      std::optional<FactorCertificate> found;
      std::vector<std::string> factor_reasons;
      auto record = [&](const RouteResult& r) {
        if (const auto* cert = std::get_if<FactorCertificate>(&r)) {
          found = *cert;
          return;
        }
        const auto& f = std::get<CandidateFailure>(r);
        report.failures.push_back(f);
        factor_reasons.push_back("factor " + factor_label(q, k) + ", M=" + std::to_string(f.M) + ", route " +
                                 std::string(to_string(f.route)) + ": " + f.reason);
      };
      for (u64 M : divisors) {
        const u64 p = arith::prime_power_base(M);
        // Route B depends only on the radical, so it is tried once per prime.
        if (M == p && p != 2 && p != base.ramified_prime) {
          record(certify_route_B(q, k, p, base));
          if (found) break;
        }
        record(certify_route_A(q, k, M, base));
        if (found) break;
      }
      if (found) {
        report.certificates.push_back(*found);
      } else {
        all_certified = false;
        if (factor_reasons.empty()) factor_reasons.push_back("factor " + factor_label(q, k) + ": no candidate modulus");
        report.reasons.insert(report.reasons.end(), factor_reasons.begin(), factor_reasons.end());
      }
    }
  }
  const u64 lambda = arith::carmichael_lambda(m);
  if (lambda % n != 0) {
    all_certified = false;
    report.reasons.push_back("n = " + std::to_string(n) + " does not divide lambda(m) = " + std::to_string(lambda));
  }
  report.certified = all_certified;
  if (!report.certified) report.reasons.erase(std::unique(report.reasons.begin(), report.reasons.end()), report.reasons.end());
  else report.reasons.clear();

  for (const auto& pp : m_factors) {
    const bool used = std::any_of(report.certificates.begin(), report.certificates.end(),
                                  [&](const FactorCertificate& c) { return arith::prime_power_base(c.M) == pp.prime; });
    if (!used) report.unused_primes.push_back(pp.prime);
  }
  return report;
}

void revalidate(const EntryReport& report) {
  const BaseField base = BaseField::of(report.base);
  u64 degree = 1;
  for (const auto& cert : report.certificates) {
    const u64 qk = cert.degree();
    degree *= qk;
    if (report.m % cert.M != 0) throw ConsistencyError("certificate modulus does not divide m");
    if (const auto* a = std::get_if<RouteAWitness>(&cert.witness)) {
      // Walk ℓ, ℓ², ... until the power lands in H.
      u64 x = base.ramified_prime % cert.M;
      u64 order = 1;
      while (!a->subgroup.contains(x)) {
        x = arith::mul_mod(x, base.ramified_prime, cert.M);
        ++order;
      }
      if (order != a->coset_order || order != qk) throw ConsistencyError("route A coset order does not reproduce");
      if (arith::euler_phi(cert.M) != a->subgroup.order * a->subgroup.index) {
        throw ConsistencyError("route A subgroup index does not reproduce");
      }
      if (cert.M % 2 == 0 && !a->subgroup.contains_minus_one()) {
        throw ConsistencyError("route A subgroup for a 2-power modulus must contain -1");
      }
    } else {
      const auto& b = std::get<RouteBWitness>(cert.witness);
      if ((b.p - 1) % qk != 0) throw ConsistencyError("route B degree does not divide p - 1");
      FieldElement power;
      FieldElement one{1, 0};
      if (b.test == RouteBWitness::Test::rational) {
        power = rational_power(base.ramified_prime, cert.q, b.p);
      } else {
        const ResidueField field = residue_field(b.p, report.base, b.embedding);
        if (!(reduce(base.gamma, field) == b.residue)) throw ConsistencyError("route B residue does not reproduce");
        power = field_power(b.residue, cert.q, field);
      }
      if (!(power == b.power) || power == one) throw ConsistencyError("route B power test does not reproduce");
    }
  }
  if (report.certified && degree != report.n) throw ConsistencyError("certificate degrees do not multiply to n");
}

}  // namespace nonnorm
