#include "nonnorm/quadring.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nonnorm {

using arith::u64;
using arith::u128;

namespace {

u64 isqrt(u64 x) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

u64 to_residue(std::int64_t v, u64 p) {
  const std::int64_t pm = static_cast<std::int64_t>(p);
  std::int64_t r = v % pm;
  if (r < 0) r += pm;
  return static_cast<u64>(r);
}

void require_odd_unramified_prime(u64 p, Ring ring, const char* what) {
  if (!arith::is_prime(p)) throw std::invalid_argument(std::string(what) + ": " + std::to_string(p) + " is not prime");
  if (ring == Ring::gaussian && p == 2) {
    throw RamifiedPrimeError(std::string(what) + ": 2 ramifies in Z[i]");
  }
  if (ring == Ring::eisenstein && p == 3) {
    throw RamifiedPrimeError(std::string(what) + ": 3 ramifies in Z[zeta_3]");
  }
  if (p == 2) throw std::invalid_argument(std::string(what) + ": p must be odd");
}

bool splits(u64 p, Ring ring) { return ring == Ring::gaussian ? p % 4 == 1 : p % 3 == 1; }

}  // namespace

std::string_view to_string(Ring ring) { return ring == Ring::gaussian ? "gaussian" : "eisenstein"; }

Ring parse_ring(std::string_view name) {
  if (name == "gaussian") return Ring::gaussian;
  if (name == "eisenstein") return Ring::eisenstein;
  throw std::invalid_argument("unknown base '" + std::string(name) + "' (expected gaussian or eisenstein)");
}

std::string_view to_string(Embedding e) { return e == Embedding::first ? "first" : "second"; }

std::complex<double> omega_value(Ring ring) {
  if (ring == Ring::gaussian) return {0.0, 1.0};
  return {-0.5, std::sqrt(3.0) / 2.0};
}

std::complex<double> QuadInt::to_complex() const {
  return static_cast<double>(a) + static_cast<double>(b) * omega_value(ring);
}

std::string QuadInt::to_string() const {
  const char unit = ring == Ring::gaussian ? 'i' : 'w';
  if (b == 0) return std::to_string(a);
  std::string s = a == 0 ? "" : std::to_string(a);
  if (b > 0 && a != 0) s += '+';
  s += std::to_string(b);
  s += unit;
  return s;
}

QuadInt parse_quadint(std::string_view text, Ring ring) {
  if (text == "sqrt-3" || text == "sqrt(-3)") {
    if (ring != Ring::eisenstein) throw std::invalid_argument("sqrt-3 is an Eisenstein integer");
    return sqrt_minus3();
  }
  const char unit = ring == Ring::gaussian ? 'i' : 'w';
  auto bad = [&] { return std::invalid_argument("cannot parse '" + std::string(text) + "' as an element of Z[" +
                                                (ring == Ring::gaussian ? "i" : "w") + "]"); };
  if (text.empty()) throw bad();
  std::string_view real_part = text;
  std::string_view imag_part;
  if (text.back() == unit) {
    // Split at the last sign that is not the leading one.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size() - 1; i > 0; --i) {
      if (text[i] == '+' || text[i] == '-') {
        split = i;
        break;
      }
    }
    if (split == std::string_view::npos) {
      real_part = {};
      imag_part = text.substr(0, text.size() - 1);
    } else {
      real_part = text.substr(0, split);
      imag_part = text.substr(split, text.size() - 1 - split);
    }
  }
  auto parse_int = [&](std::string_view s, bool coefficient) -> std::int64_t {
    if (coefficient && (s.empty() || s == "+")) return 1;
    if (coefficient && s == "-") return -1;
    std::string buf(s);
    if (!buf.empty() && buf.front() == '+') buf.erase(0, 1);
    if (buf.empty()) throw bad();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(buf, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != buf.size()) throw bad();
    return v;
  };
  QuadInt x{0, 0, ring};
  if (!real_part.empty()) x.a = parse_int(real_part, false);
  if (text.back() == unit) x.b = parse_int(imag_part, true);
  return x;
}

SplitResult split_prime(u64 p, Ring ring) {
  require_odd_unramified_prime(p, ring, "split_prime");
  if (!splits(p, ring)) return {false, 0, 0};
  if (ring == Ring::gaussian) {
    for (u64 a = 1; a * a < p; ++a) {
      const u64 rest = p - a * a;
      const u64 b = isqrt(rest);
      if (b > 0 && b * b == rest) return {true, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
    }
  } else {
    // a² - ab + b² = p  <=>  (2b - a)² = 4p - 3a²
    for (u64 a = 1; 3 * a * a <= 4 * p; ++a) {
      const u64 disc = 4 * p - 3 * a * a;
      const u64 d = isqrt(disc);
      if (d * d != disc || (a + d) % 2 != 0) continue;
      // the smaller positive root in b
      const u64 b = d < a ? (a - d) / 2 : (a + d) / 2;
      return {true, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
    }
  }
  throw std::logic_error("split_prime: no representation found for split prime " + std::to_string(p));
}

u128 ResidueField::size() const { return degree == 1 ? u128{p} : u128{p} * p; }

FieldElement ResidueField::mul(const FieldElement& x, const FieldElement& y) const {
  using arith::mul_mod;
  if (degree == 1) return {mul_mod(x.c0, y.c0, p), 0};
  const u64 ac = mul_mod(x.c0, y.c0, p);
  const u64 bd = mul_mod(x.c1, y.c1, p);
  const u64 cross = (mul_mod(x.c0, y.c1, p) + mul_mod(x.c1, y.c0, p)) % p;
  const u64 real = (ac + p - bd) % p;
  if (ring == Ring::gaussian) return {real, cross};
  return {real, (cross + p - bd) % p};  // x² = -x - 1
}

FieldElement ResidueField::pow(FieldElement x, u128 e) const {
  FieldElement result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, x);
    x = mul(x, x);
    e >>= 1;
  }
  return result;
}

ResidueField residue_field(u64 p, Ring ring, Embedding embedding) {
  require_odd_unramified_prime(p, ring, "residue_field");
  ResidueField field;
  field.p = p;
  field.ring = ring;
  field.embedding = embedding;
  if (!splits(p, ring)) {
    field.degree = 2;
    field.embedding = Embedding::first;
    return field;
  }
  field.degree = 1;
  u64 root = 0;
  if (ring == Ring::gaussian) {
    // t = z^((p-1)/4) for a quadratic non-residue z squares to -1.
    for (u64 z = 2; z < p; ++z) {
      if (arith::mod_pow(z, (p - 1) / 2, p) == p - 1) {
        root = arith::mod_pow(z, (p - 1) / 4, p);
        break;
      }
    }
  } else {
    // A primitive cube root of unity is a root of x² + x + 1.
    for (u64 g = 2; g < p; ++g) {
      const u64 w = arith::mod_pow(g, (p - 1) / 3, p);
      if (w != 1) {
        root = w;
        break;
      }
    }
  }
  const u64 other = ring == Ring::gaussian ? p - root : (2 * p - 1 - root) % p;
  const u64 lo = std::min(root, other);
  const u64 hi = std::max(root, other);
  field.omega_image = embedding == Embedding::first ? lo : hi;
  return field;
}

FieldElement reduce(const QuadInt& x, const ResidueField& field) {
  const u64 p = field.p;
  const u64 a = to_residue(x.a, p);
  const u64 b = to_residue(x.b, p);
  // norm(x) mod p from the reduced coordinates
  u64 norm = (arith::mul_mod(a, a, p) + arith::mul_mod(b, b, p)) % p;
  if (x.ring == Ring::eisenstein) norm = (norm + p - arith::mul_mod(a, b, p)) % p;
  if (norm == 0) {
    throw ReductionError("reduce: " + x.to_string() + " lies in a prime above " + std::to_string(p));
  }
  if (field.degree == 1) return {(a + arith::mul_mod(b, field.omega_image, p)) % p, 0};
  return {a, b};
}

bool ff_is_qth_power(const FieldElement& alpha, u64 q, const ResidueField& field, arith::PowerTestMode mode) {
  if (field.is_zero(alpha)) throw std::invalid_argument("ff_is_qth_power: alpha must be nonzero");
  if (q == 0) throw std::invalid_argument("ff_is_qth_power: q must be positive");
  const u128 group_order = field.size() - 1;
  if (mode == arith::PowerTestMode::exponent) {
    const u64 g = std::gcd(q, static_cast<u64>(group_order % q));
    return field.pow(alpha, group_order / g) == field.one();
  }
  if (field.size() >= 1'000'000) throw std::invalid_argument("bruteforce power test limited to fields below 10^6");
  const u64 p = field.p;
  for (u64 c1 = 0; c1 < (field.degree == 2 ? p : 1); ++c1) {
    for (u64 c0 = 0; c0 < p; ++c0) {
      const FieldElement y{c0, c1};
      if (field.is_zero(y)) continue;
      if (field.pow(y, q) == alpha) return true;
    }
  }
  return false;
}

}  // namespace nonnorm
