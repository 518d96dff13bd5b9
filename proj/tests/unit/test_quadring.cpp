#include <doctest.h>

#include <random>
#include <set>

#include "nonnorm/quadring.hpp"

using namespace nonnorm;
using arith::u64;

namespace {

QuadInt random_quadint(std::mt19937_64& rng, Ring ring, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> d(-bound, bound);
  return {d(rng), d(rng), ring};
}

// Field elements of F_p^f enumerated as (c0, c1); degree-1 fields have c1 = 0.
std::vector<FieldElement> all_nonzero(const ResidueField& K) {
  std::vector<FieldElement> out;
  const u64 top = K.degree == 1 ? 1 : K.p;
  for (u64 c1 = 0; c1 < top; ++c1) {
    for (u64 c0 = 0; c0 < K.p; ++c0) {
      if (c0 != 0 || c1 != 0) out.push_back({c0, c1});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("norm is multiplicative and conjugation is an involution") {
  std::mt19937_64 rng(11);
  for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
    for (int i = 0; i < 10'000; ++i) {
      const QuadInt x = random_quadint(rng, ring, 1000);
      const QuadInt y = random_quadint(rng, ring, 1000);
      REQUIRE((x * y).norm() == x.norm() * y.norm());
      REQUIRE(x.conj().conj() == x);
      REQUIRE((x * y).conj() == x.conj() * y.conj());
      REQUIRE((x + y).conj() == x.conj() + y.conj());
      REQUIRE(x * x.conj() == QuadInt{x.norm(), 0, ring});
    }
  }
}

TEST_CASE("norm matches the complex absolute value") {
  std::mt19937_64 rng(12);
  for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
    for (int i = 0; i < 1000; ++i) {
      const QuadInt x = random_quadint(rng, ring, 50);
      REQUIRE(std::norm(x.to_complex()) == doctest::Approx(static_cast<double>(x.norm())));
    }
  }
  CHECK(sqrt_minus3().to_complex().real() == doctest::Approx(0.0));
  CHECK(sqrt_minus3().to_complex().imag() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("checked arithmetic throws instead of wrapping") {
  const QuadInt big{std::int64_t{1} << 40, 1, Ring::gaussian};
  CHECK_THROWS_AS(big * big, OverflowError);
  const QuadInt other{1, 0, Ring::eisenstein};
  CHECK_THROWS_AS(one_plus_i() + other, std::invalid_argument);
}

TEST_CASE("parse_quadint") {
  CHECK(parse_quadint("1+1i", Ring::gaussian) == one_plus_i());
  CHECK(parse_quadint("2+i", Ring::gaussian) == QuadInt{2, 1, Ring::gaussian});
  CHECK(parse_quadint("-3i", Ring::gaussian) == QuadInt{0, -3, Ring::gaussian});
  CHECK(parse_quadint("4", Ring::gaussian) == QuadInt{4, 0, Ring::gaussian});
  CHECK(parse_quadint("1-2i", Ring::gaussian) == QuadInt{1, -2, Ring::gaussian});
  CHECK(parse_quadint("sqrt-3", Ring::eisenstein) == sqrt_minus3());
  CHECK(parse_quadint("1+2w", Ring::eisenstein) == sqrt_minus3());
  CHECK_THROWS_AS(parse_quadint("sqrt-3", Ring::gaussian), std::invalid_argument);
  CHECK_THROWS_AS(parse_quadint("1+", Ring::gaussian), std::invalid_argument);
  CHECK_THROWS_AS(parse_quadint("abc", Ring::gaussian), std::invalid_argument);
  CHECK(QuadInt{2, 1, Ring::gaussian}.to_string() == "2+1i");
}

TEST_CASE("split_prime") {
  const SplitResult s17 = split_prime(17, Ring::gaussian);
  CHECK(s17.split);
  CHECK(s17.a == 1);
  CHECK(s17.b == 4);
  CHECK_FALSE(split_prime(3, Ring::gaussian).split);
  const SplitResult s13 = split_prime(13, Ring::gaussian);
  CHECK(s13.a == 2);
  CHECK(s13.b == 3);
  CHECK(split_prime(7, Ring::eisenstein).split);
  CHECK_FALSE(split_prime(5, Ring::eisenstein).split);
  CHECK_THROWS_AS(split_prime(2, Ring::gaussian), RamifiedPrimeError);
  CHECK_THROWS_AS(split_prime(3, Ring::eisenstein), RamifiedPrimeError);

  SUBCASE("agrees with a search over small elements") {
    for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
      const u64 ramified = ring == Ring::gaussian ? 2 : 3;
      for (u64 p : arith::primes_up_to(2000)) {
        if (p == ramified || p == 2) continue;
        bool representable = false;
        for (std::int64_t a = 0; a * a <= 4 * static_cast<std::int64_t>(p) && !representable; ++a) {
          for (std::int64_t b = 0; b * b <= 4 * static_cast<std::int64_t>(p); ++b) {
            if (QuadInt{a, b, ring}.norm() == static_cast<std::int64_t>(p)) {
              representable = true;
              break;
            }
          }
        }
        const SplitResult s = split_prime(p, ring);
        REQUIRE(s.split == representable);
        REQUIRE(s.split == (p % (ring == Ring::gaussian ? 4 : 3) == 1));
        if (s.split) REQUIRE(QuadInt{s.a, s.b, ring}.norm() == static_cast<std::int64_t>(p));
      }
    }
  }
}

TEST_CASE("residue_field and reduce") {
  const ResidueField first = residue_field(17, Ring::gaussian, Embedding::first);
  const ResidueField second = residue_field(17, Ring::gaussian, Embedding::second);
  CHECK(first.degree == 1);
  CHECK(first.omega_image == 4);
  CHECK(second.omega_image == 13);
  CHECK(residue_field(17, Ring::eisenstein).degree == 2);
  CHECK(residue_field(17, Ring::eisenstein).size() == 289);

  CHECK(reduce(one_plus_i(), first) == FieldElement{5, 0});
  CHECK(reduce(one_plus_i(), second) == FieldElement{14, 0});
  CHECK_THROWS_AS(reduce(QuadInt::zero(Ring::gaussian), first), ReductionError);
  CHECK_THROWS_AS(reduce(QuadInt{1, 4, Ring::gaussian}, first), ReductionError);
  CHECK_THROWS_AS(residue_field(2, Ring::gaussian), RamifiedPrimeError);

  SUBCASE("x times its conjugate reduces to norm(x)") {
    std::mt19937_64 rng(13);
    for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
      for (u64 p : {5, 7, 13, 17, 19, 29, 31, 37, 41, 43}) {
        if (p == 3 && ring == Ring::eisenstein) continue;
        for (Embedding e : {Embedding::first, Embedding::second}) {
          const ResidueField K = residue_field(p, ring, e);
          for (int i = 0; i < 200; ++i) {
            const QuadInt x = random_quadint(rng, ring, 100);
            const std::int64_t nx = x.norm();
            if (nx % static_cast<std::int64_t>(p) == 0) continue;
            const FieldElement prod = K.mul(reduce(x, K), reduce(x.conj(), K));
            REQUIRE(prod == FieldElement{static_cast<u64>(nx) % p, 0});
          }
        }
      }
    }
  }
}

TEST_CASE("ff_is_qth_power") {
  const ResidueField f17 = residue_field(17, Ring::gaussian);
  CHECK_FALSE(ff_is_qth_power({5, 0}, 2, f17));
  const ResidueField f25 = residue_field(5, Ring::eisenstein);
  CHECK(f25.degree == 2);
  CHECK_FALSE(ff_is_qth_power(reduce(sqrt_minus3(), f25), 2, f25));
  for (u64 q : {2, 3, 5, 7}) CHECK(ff_is_qth_power(f25.one(), q, f25));

  SUBCASE("exponent mode matches an enumeration of q-th powers") {
    for (Ring ring : {Ring::gaussian, Ring::eisenstein}) {
      for (u64 p : arith::primes_up_to(100)) {
        if (p == 2 || p == 3) continue;
        const ResidueField K = residue_field(p, ring);
        if (K.size() >= 10'000) continue;
        const auto elements = all_nonzero(K);
        for (u64 q : {2, 3, 5, 7}) {
          std::set<std::pair<u64, u64>> powers;
          for (const auto& y : elements) {
            const FieldElement z = K.pow(y, q);
            powers.insert({z.c0, z.c1});
          }
          for (const auto& a : elements) {
            const bool expected = powers.count({a.c0, a.c1}) == 1;
            REQUIRE(ff_is_qth_power(a, q, K) == expected);
            // The library's brute-force mode re-enumerates the field on every call.
            if (K.size() < 2000) REQUIRE(ff_is_qth_power(a, q, K, arith::PowerTestMode::bruteforce) == expected);
          }
        }
      }
    }
  }
}

TEST_CASE("1+i is never a square under both embeddings when 2 is a non-square") {
  for (u64 p : arith::primes_up_to(499)) {
    if (p % 4 != 1) continue;
    const bool two_is_square = arith::is_qth_power_residue(2, 2, p);
    const ResidueField a = residue_field(p, Ring::gaussian, Embedding::first);
    const ResidueField b = residue_field(p, Ring::gaussian, Embedding::second);
    const bool sa = ff_is_qth_power(reduce(one_plus_i(), a), 2, a);
    const bool sb = ff_is_qth_power(reduce(one_plus_i(), b), 2, b);
    // The two images multiply to 2, so their characters multiply to that of 2.
    REQUIRE((sa == sb) == two_is_square);
  }
}
