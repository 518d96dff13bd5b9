#pragma once

// Integer and modular arithmetic on 64-bit words.
//
// Moduli are limited to [2, 2^63); products go through 128-bit intermediates.

#include <cstdint>
#include <vector>

namespace nonnorm::arith {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

inline constexpr u64 kModulusBound = u64{1} << 63;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  u64 value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// (ℤ/m)* as a product of cyclic groups, one or two per prime-power factor of m.
struct UnitGroup {
  u64 modulus = 0;
  std::vector<u64> component_orders;
  std::vector<u64> generators;
  u64 lambda = 1;  ///< group exponent (Carmichael function)

  u64 order() const;
};

enum class PowerTestMode { exponent, bruteforce };

u64 mul_mod(u64 a, u64 b, u64 m);

/// base^exp mod modulus by square-and-multiply. Throws std::invalid_argument for modulus < 2 or >= 2^63.
u64 mod_pow(u64 base, u64 exp, u64 modulus);

/// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime(u64 x);

/// Ascending prime factorization. Trial division to 10^6, Pollard rho beyond.
std::vector<PrimePower> factorize(u64 x);

/// Distinct prime divisors, ascending.
std::vector<u64> prime_divisors(u64 x);

/// Prime-power divisors p^e || x, ascending by value.
std::vector<u64> prime_power_parts(u64 x);

/// The prime p when x = p^e (e >= 1), otherwise 0.
u64 prime_power_base(u64 x);

u64 euler_phi(u64 m);
u64 carmichael_lambda(u64 m);
u64 ipow(u64 base, unsigned exp);

/// Smallest r >= 1 with a^r = 1 (mod m). Walks down the factorization of lambda(m).
u64 multiplicative_order(u64 a, u64 m);

/// Smallest primitive root of an odd prime power.
u64 primitive_root(u64 m);

/// Whether a is a q-th power modulo the prime p.
bool is_qth_power_residue(u64 a, u64 q, u64 p, PowerTestMode mode = PowerTestMode::exponent);

/// CRT decomposition of (ℤ/m)*: odd p^e contributes one cyclic factor with the smallest primitive root;
/// 2^e (e >= 3) contributes (2, 2^(e-2)) generated by (-1, 3); 4 contributes (2) generated by 3.
UnitGroup unit_group(u64 m);

/// Chinese remaindering of x = residues[i] mod moduli[i] for pairwise coprime moduli.
u64 crt(const std::vector<u64>& residues, const std::vector<u64>& moduli);

/// Primes up to and including `limit` (sieve of Eratosthenes).
std::vector<u64> primes_up_to(u64 limit);

}  // namespace nonnorm::arith
