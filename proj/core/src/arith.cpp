#include "nonnorm/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nonnorm::arith {

namespace {


void check_modulus(u64 m) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2, got " + std::to_string(m));
  if (m >= kModulusBound) throw std::invalid_argument("modulus " + std::to_string(m) + " exceeds 2^63");
}

u64 pow_unchecked(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = pow_unchecked(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant of Pollard rho; n is odd, composite and not a perfect power of a small prime.
u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 kBatch = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

__extension__ typedef __int128 i128;

// Inverse of a modulo m (gcd(a, m) = 1).
u64 inverse_mod(u64 a, u64 m) {
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("value not invertible modulo " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

}  // namespace

u64 PrimePower::value() const { return ipow(prime, exponent); }

u64 UnitGroup::order() const {
  u64 result = 1;
  for (u64 o : component_orders) result *= o;
  return result;
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 mod_pow(u64 base, u64 exp, u64 modulus) {
  check_modulus(modulus);
  return pow_unchecked(base, exp, modulus);
}

bool is_prime(u64 x) {
  if (x < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (x % p == 0) return x == p;
  }
  if (x < 37 * 37) return true;
  u64 d = x - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Deterministic witness set for n < 2^64 (Sinclair).
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (a % x == 0) continue;
    if (miller_rabin_witness(x, a, d, s)) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(u64 x) {
  if (x < 2) throw std::invalid_argument("factorize requires x >= 2, got " + std::to_string(x));
  std::vector<u64> primes;
  u64 rest = x;
  for (u64 p = 2; p <= 1'000'000 && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    while (rest % p == 0) {
      primes.push_back(p);
      rest /= p;
    }
  }
  if (rest > 1) factor_into(rest, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::vector<u64> prime_divisors(u64 x) {
  std::vector<u64> out;
  if (x < 2) return out;
  for (const auto& pp : factorize(x)) out.push_back(pp.prime);
  return out;
}

std::vector<u64> prime_power_parts(u64 x) {
  std::vector<u64> out;
  if (x < 2) return out;
  for (const auto& pp : factorize(x)) out.push_back(pp.value());
  std::sort(out.begin(), out.end());
  return out;
}

u64 prime_power_base(u64 x) {
  if (x < 2) return 0;
  auto f = factorize(x);
  return f.size() == 1 ? f.front().prime : 0;
}

u64 ipow(u64 base, unsigned exp) {
  u64 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > UINT64_MAX / base) throw std::overflow_error("ipow overflow");
    result *= base;
  }
  return result;
}

u64 euler_phi(u64 m) {
  if (m == 0) throw std::invalid_argument("euler_phi(0) is undefined");
  if (m == 1) return 1;
  u64 result = 1;
  for (const auto& [p, e] : factorize(m)) result *= (p - 1) * ipow(p, e - 1);
  return result;
}

u64 carmichael_lambda(u64 m) {
  if (m == 0) throw std::invalid_argument("carmichael_lambda(0) is undefined");
  if (m == 1) return 1;
  u64 result = 1;
  for (const auto& [p, e] : factorize(m)) {
    u64 part = 0;
    if (p == 2) {
      part = e <= 2 ? (e == 1 ? 1 : 2) : ipow(2, e - 2);
    } else {
      part = (p - 1) * ipow(p, e - 1);
    }
    result = std::lcm(result, part);
  }
  return result;
}

u64 multiplicative_order(u64 a, u64 m) {
  check_modulus(m);
  a %= m;
  if (std::gcd(a, m) != 1) {
    throw std::invalid_argument("multiplicative_order: " + std::to_string(a) + " is not a unit modulo " +
                                std::to_string(m));
  }
  u64 order = carmichael_lambda(m);
  if (order == 1) return 1;
  for (const auto& [q, e] : factorize(order)) {
    for (unsigned i = 0; i < e; ++i) {
      if (mod_pow(a, order / q, m) != 1) break;
      order /= q;
    }
  }
  return order;
}

u64 primitive_root(u64 m) {
  check_modulus(m);
  const u64 p = prime_power_base(m);
  if (p == 0 || p == 2) {
    throw std::invalid_argument("primitive_root requires an odd prime power, got " + std::to_string(m));
  }
  const u64 phi = euler_phi(m);
  const auto phi_primes = prime_divisors(phi);
  for (u64 c = 2; c < m; ++c) {
    if (c % p == 0) continue;
    bool generates = std::all_of(phi_primes.begin(), phi_primes.end(),
                                 [&](u64 q) { return mod_pow(c, phi / q, m) != 1; });
    if (generates) return c;
  }
  throw std::logic_error("no primitive root found modulo " + std::to_string(m));
}

bool is_qth_power_residue(u64 a, u64 q, u64 p, PowerTestMode mode) {
  if (!is_prime(p)) throw std::invalid_argument("is_qth_power_residue: " + std::to_string(p) + " is not prime");
  if (q == 0) throw std::invalid_argument("is_qth_power_residue: q must be positive");
  a %= p;
  if (a == 0) throw std::invalid_argument("is_qth_power_residue: a must be a unit modulo p");
  if (mode == PowerTestMode::exponent) {
    return mod_pow(a, (p - 1) / std::gcd(q, p - 1), p) == 1;
  }
  if (p > 10'000'000) throw std::invalid_argument("bruteforce power test limited to p <= 10^7");
  for (u64 y = 1; y < p; ++y) {
    if (mod_pow(y, q, p) == a) return true;
  }
  return false;
}

UnitGroup unit_group(u64 m) {
  check_modulus(m);
  UnitGroup g;
  g.modulus = m;
  std::vector<u64> parts;
  std::vector<std::pair<u64, u64>> local;  // (order, generator mod the part)
  std::vector<std::size_t> owner;
  const auto factors = factorize(m);
  for (const auto& [p, e] : factors) {
    const u64 part = ipow(p, e);
    parts.push_back(part);
    if (p == 2) {
      if (e == 2) {
        local.emplace_back(2, 3);
        owner.push_back(parts.size() - 1);
      } else if (e >= 3) {
        local.emplace_back(2, part - 1);
        owner.push_back(parts.size() - 1);
        local.emplace_back(ipow(2, e - 2), 3);
        owner.push_back(parts.size() - 1);
      }
    } else {
      local.emplace_back(euler_phi(part), primitive_root(part));
      owner.push_back(parts.size() - 1);
    }
  }
  for (std::size_t j = 0; j < local.size(); ++j) {
    std::vector<u64> residues(parts.size(), 1);
    residues[owner[j]] = local[j].second;
    g.component_orders.push_back(local[j].first);
    g.generators.push_back(crt(residues, parts));
  }
  g.lambda = 1;
  for (u64 o : g.component_orders) g.lambda = std::lcm(g.lambda, o);
  return g;
}

u64 crt(const std::vector<u64>& residues, const std::vector<u64>& moduli) {
  if (residues.size() != moduli.size()) throw std::invalid_argument("crt: size mismatch");
  u128 modulus = 1;
  u128 x = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const u64 mi = moduli[i];
    if (modulus * mi >= kModulusBound) throw std::invalid_argument("crt: combined modulus exceeds 2^63");
    const u64 mod = static_cast<u64>(modulus);
    // x' = x + mod * t with t = (r - x) * mod^{-1} (mod mi)
    const u64 r = residues[i] % mi;
    const u64 xm = static_cast<u64>(x % mi);
    const u64 diff = (r + mi - xm) % mi;
    const u64 t = mi == 1 ? 0 : mul_mod(diff, inverse_mod(mod % mi, mi), mi);
    x += static_cast<u128>(mod) * t;
    modulus *= mi;
    x %= modulus;
  }
  return static_cast<u64>(x);
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace nonnorm::arith
