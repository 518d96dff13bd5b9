#include <doctest.h>

#include <numeric>
#include <set>

#include "nonnorm/construct.hpp"
#include "nonnorm/verify.hpp"

using namespace nonnorm;
using arith::u64;

namespace {

const FactorCertificate& certificate(const RouteResult& r) {
  REQUIRE(std::holds_alternative<FactorCertificate>(r));
  return std::get<FactorCertificate>(r);
}

const CandidateFailure& failure(const RouteResult& r) {
  REQUIRE(std::holds_alternative<CandidateFailure>(r));
  return std::get<CandidateFailure>(r);
}

}  // namespace

TEST_CASE("check_prop1") {
  const BaseField g = BaseField::gaussian();
  CHECK(check_prop1(3, g));
  CHECK(check_prop1(5, g));
  CHECK_FALSE(check_prop1(1093, g));
  CHECK_FALSE(check_prop1(3511, g));

  SUBCASE("agrees with the order formulation") {
    for (const BaseField& base : {BaseField::gaussian(), BaseField::eisenstein()}) {
      const u64 l = base.ramified_prime;
      for (u64 q : arith::primes_up_to(10'000)) {
        if (q == 2 || q == l) continue;
        REQUIRE(check_prop1(q, base) ==
                (arith::multiplicative_order(l, q * q) != arith::multiplicative_order(l, q)));
      }
    }
  }
}

TEST_CASE("certify_route_A") {
  const auto r9 = certify_route_A(3, 1, 9, BaseField::gaussian());
  const auto& c9 = certificate(r9);
  CHECK(c9.route == Route::A);
  const auto& w9 = std::get<RouteAWitness>(c9.witness);
  CHECK(w9.subgroup.elements() == std::vector<u64>{1, 8});
  CHECK(w9.coset_order == 3);

  const auto r128 = certify_route_A(2, 5, 128, BaseField::eisenstein());
  const auto& w128 = std::get<RouteAWitness>(certificate(r128).witness);
  CHECK(w128.subgroup.kind == QuotientSubgroup::Kind::two_adic_real);
  CHECK(w128.subgroup.elements() == std::vector<u64>{1, 127});
  CHECK(w128.subgroup.contains_minus_one());
  CHECK(w128.coset_order == 32);

  CHECK(failure(certify_route_A(2, 3, 9, BaseField::gaussian())).kind == CandidateFailure::Kind::no_subextension);
  // ord_7(2) = 3, so 2 cannot generate the order-6 quotient.
  CHECK(failure(certify_route_A(2, 1, 7, BaseField::gaussian())).kind == CandidateFailure::Kind::coset_order);
}

TEST_CASE("QuotientSubgroup agrees with explicit enumeration") {
  // For cyclic (Z/M)*, the index-q subgroup is exactly the set of q-th powers.
  std::size_t checked = 0;
  for (u64 M : {7, 11, 13, 19, 25, 27, 29, 49, 81, 121, 125}) {
    const u64 phi = arith::euler_phi(M);
    for (const BaseField& base : {BaseField::gaussian(), BaseField::eisenstein()}) {
      if (base.kind == Ring::eisenstein && M % 3 == 0) continue;
      for (u64 q : arith::prime_divisors(phi)) {
        const auto r = certify_route_A(q, 1, M, base);
        const auto* c = std::get_if<FactorCertificate>(&r);
        if (c == nullptr) continue;
        const auto& h = std::get<RouteAWitness>(c->witness).subgroup;
        std::set<u64> powers;
        for (u64 x = 1; x < M; ++x) {
          if (std::gcd(x, M) == 1) powers.insert(arith::mod_pow(x, q, M));
        }
        const auto elems = h.elements();
        REQUIRE(std::set<u64>(elems.begin(), elems.end()) == powers);
        for (u64 x = 1; x < M; ++x) {
          if (std::gcd(x, M) == 1) REQUIRE(h.contains(x) == (powers.count(x) == 1));
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 5);
}

TEST_CASE("certify_route_B") {
  const BaseField g = BaseField::gaussian();
  const auto r17 = certify_route_B(2, 3, 17, g);
  const auto& c17 = certificate(r17);
  const auto& w17 = std::get<RouteBWitness>(c17.witness);
  CHECK(w17.residue == FieldElement{5, 0});
  CHECK(w17.embedding == Embedding::first);

  const auto r7 = certify_route_B(3, 1, 7, g);
  const auto& c7 = certificate(r7);
  CHECK(std::get<RouteBWitness>(c7.witness).test == RouteBWitness::Test::rational);

  const auto r37 = certify_route_B(2, 2, 37, g);
  const auto& c37 = certificate(r37);
  const auto& w37 = std::get<RouteBWitness>(c37.witness);
  CHECK(w37.embedding == Embedding::second);
  CHECK(w37.residue == FieldElement{32, 0});

  CHECK(failure(certify_route_B(2, 3, 41, g)).kind == CandidateFailure::Kind::residue_test);
  CHECK(failure(certify_route_B(2, 3, 13, g)).kind == CandidateFailure::Kind::no_subextension);
}

TEST_CASE("verify_entry") {
  const BaseField g = BaseField::gaussian();
  CHECK(verify_entry(g, 6, 9).certified);

  const EntryReport r41 = verify_entry(g, 8, 41);
  CHECK_FALSE(r41.certified);
  REQUIRE(r41.reasons.size() == 2);
  CHECK(r41.reasons[1].find("route A") != std::string::npos);
  CHECK(r41.reasons[0].find("1+i is a quadratic residue at both primes above 41") != std::string::npos);

  const EntryReport r119 = verify_entry(g, 24, 119);
  REQUIRE(r119.certified);
  REQUIRE(r119.certificates.size() == 2);
  CHECK(r119.certificates[0].q == 2);
  CHECK(r119.certificates[0].M == 17);
  CHECK(r119.certificates[1].q == 3);
  CHECK(r119.certificates[1].M == 7);
  CHECK(r119.unused_primes.empty());

  CHECK_THROWS_AS(verify_entry(g, 0, 17), std::invalid_argument);
  CHECK_THROWS_AS(verify_entry(g, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(verify_entry(g, 2, 12), BaseOverlapError);
  CHECK_THROWS_AS(verify_entry(BaseField::eisenstein(), 2, 15), BaseOverlapError);
  CHECK_FALSE(verify_entry(g, 8, 15).certified);
}

TEST_CASE("one-sided embedding regression at (4, 37)") {
  const EntryReport r = verify_entry(BaseField::gaussian(), 4, 37);
  REQUIRE(r.certified);
  REQUIRE(r.certificates.size() == 1);
  const auto& w = std::get<RouteBWitness>(r.certificates[0].witness);
  CHECK(w.embedding == Embedding::second);
  revalidate(r);
}

TEST_CASE("route B monotonicity in k") {
  for (const BaseField& base : {BaseField::gaussian(), BaseField::eisenstein()}) {
    for (u64 p : arith::primes_up_to(3000)) {
      if (p <= 3) continue;
      for (u64 q : arith::prime_divisors(p - 1)) {
        unsigned kmax = 0;
        for (u64 t = p - 1; t % q == 0; t /= q) ++kmax;
        bool ok_at_k = std::holds_alternative<FactorCertificate>(certify_route_B(q, kmax, p, base));
        for (unsigned k = kmax; k >= 1; --k) {
          const bool ok = std::holds_alternative<FactorCertificate>(certify_route_B(q, k, p, base));
          if (ok_at_k) REQUIRE(ok);
          ok_at_k = ok;
        }
      }
    }
  }
}

TEST_CASE("route A on a prime implies route B for odd q") {
  // With ℓ generating the quotient of order q^k, ℓ is not a q-th power mod p, which is the rational test.
  const BaseField g = BaseField::gaussian();
  for (u64 p : arith::primes_up_to(2000)) {
    if (p <= 2) continue;
    for (u64 q : arith::prime_divisors(p - 1)) {
      if (q == 2) continue;
      if (std::holds_alternative<FactorCertificate>(certify_route_A(q, 1, p, g))) {
        REQUIRE(std::holds_alternative<FactorCertificate>(certify_route_B(q, 1, p, g)));
      }
    }
  }
}

TEST_CASE("every bundled table row certifies and revalidates") {
  const ReferenceTable& t = ReferenceTable::bundled();
  CHECK(t.size() == 198);
  for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
    for (const auto& [n, m] : t.rows(ring)) {
      CAPTURE(n);
      CAPTURE(m);
      const EntryReport r = verify_entry(BaseField::of(ring), n, m);
      REQUIRE(r.certified);
      REQUIRE_NOTHROW(revalidate(r));
      u64 product = 1;
      for (const auto& c : r.certificates) product *= c.degree();
      REQUIRE(product == n);
    }
  }
}

TEST_CASE("revalidate rejects a tampered witness") {
  EntryReport r = verify_entry(BaseField::gaussian(), 24, 119);
  REQUIRE(r.certified);
  auto& w = std::get<RouteBWitness>(r.certificates[0].witness);
  w.residue.c0 = (w.residue.c0 + 1) % 17;
  CHECK_THROWS_AS(revalidate(r), ConsistencyError);

  EntryReport a = verify_entry(BaseField::eisenstein(), 32, 128);
  REQUIRE(a.certified);
  std::get<RouteAWitness>(a.certificates[0].witness).coset_order = 16;
  CHECK_THROWS_AS(revalidate(a), ConsistencyError);
}
