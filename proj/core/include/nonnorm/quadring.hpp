#pragma once

// Arithmetic in the Gaussian integers ℤ[i] and the Eisenstein integers ℤ[ζ₃], prime splitting,
// and the residue fields ℤ[ω]/𝔭 used by the residue-symbol tests.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "nonnorm/arith.hpp"
#include "nonnorm/errors.hpp"

namespace nonnorm {

enum class Ring { gaussian, eisenstein };

std::string_view to_string(Ring ring);
Ring parse_ring(std::string_view name);

namespace detail {

constexpr std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(x, y, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

constexpr std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

constexpr std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

}  // namespace detail

/// a + bω with ω = i (Gaussian, ω² = -1) or ω = ζ₃ (Eisenstein, ω² = -ω - 1).
/// All operations are overflow-checked and throw OverflowError rather than wrap.
struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;
  Ring ring = Ring::gaussian;

  static constexpr QuadInt zero(Ring r) { return {0, 0, r}; }
  static constexpr QuadInt one(Ring r) { return {1, 0, r}; }

  constexpr bool is_zero() const { return a == 0 && b == 0; }

  constexpr std::int64_t norm() const {
    using namespace detail;
    if (ring == Ring::gaussian) return checked_add(checked_mul(a, a), checked_mul(b, b));
    return checked_add(checked_sub(checked_mul(a, a), checked_mul(a, b)), checked_mul(b, b));
  }

  constexpr QuadInt conj() const {
    if (ring == Ring::gaussian) return {a, detail::checked_sub(0, b), ring};
    // conj(ω) = ω² = -1 - ω
    return {detail::checked_sub(a, b), detail::checked_sub(0, b), ring};
  }

  constexpr QuadInt operator-() const { return {detail::checked_sub(0, a), detail::checked_sub(0, b), ring}; }

  friend constexpr QuadInt operator+(const QuadInt& x, const QuadInt& y) {
    require_same_ring(x, y);
    return {detail::checked_add(x.a, y.a), detail::checked_add(x.b, y.b), x.ring};
  }

  friend constexpr QuadInt operator-(const QuadInt& x, const QuadInt& y) {
    require_same_ring(x, y);
    return {detail::checked_sub(x.a, y.a), detail::checked_sub(x.b, y.b), x.ring};
  }

  friend constexpr QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    using namespace detail;
    require_same_ring(x, y);
    const std::int64_t ac = checked_mul(x.a, y.a);
    const std::int64_t bd = checked_mul(x.b, y.b);
    const std::int64_t cross = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a));
    if (x.ring == Ring::gaussian) return {checked_sub(ac, bd), cross, x.ring};
    return {checked_sub(ac, bd), checked_sub(cross, bd), x.ring};
  }

  QuadInt& operator+=(const QuadInt& y) { return *this = *this + y; }
  QuadInt& operator-=(const QuadInt& y) { return *this = *this - y; }
  QuadInt& operator*=(const QuadInt& y) { return *this = *this * y; }

  friend constexpr bool operator==(const QuadInt&, const QuadInt&) = default;

  std::complex<double> to_complex() const;

  /// "a+bi" / "a+bw"; pure integers print without the ω part.
  std::string to_string() const;

 private:
  static constexpr void require_same_ring(const QuadInt& x, const QuadInt& y) {
    if (x.ring != y.ring) throw std::invalid_argument("QuadInt operands from different rings");
  }
};

/// The image of ω in ℂ: i or e^{2πi/3}.
std::complex<double> omega_value(Ring ring);

constexpr QuadInt one_plus_i() { return {1, 1, Ring::gaussian}; }

/// √−3 written in the ζ₃ basis.
constexpr QuadInt sqrt_minus3() { return {1, 2, Ring::eisenstein}; }

static_assert(sqrt_minus3() * sqrt_minus3() == QuadInt{-3, 0, Ring::eisenstein});
static_assert(one_plus_i().norm() == 2 && sqrt_minus3().norm() == 3);

/// Parses "a+bi", "a-bi", "bi", "a" (Gaussian), "a+bw" (Eisenstein) and the literal "sqrt-3".
QuadInt parse_quadint(std::string_view text, Ring ring);

struct SplitResult {
  bool split = false;
  std::int64_t a = 0;  ///< with norm(a + bω) = p when split; a > 0, b > 0, a minimal
  std::int64_t b = 0;
};

/// Decomposition of an odd unramified rational prime in the ring.
/// Throws RamifiedPrimeError for 2 (Gaussian) or 3 (Eisenstein).
SplitResult split_prime(arith::u64 p, Ring ring);

enum class Embedding { first, second };

std::string_view to_string(Embedding e);

/// Element of F_p (c1 == 0) or F_p² = F_p[x]/(x²+1) resp. F_p[x]/(x²+x+1) (value c0 + c1·x).
struct FieldElement {
  arith::u64 c0 = 0;
  arith::u64 c1 = 0;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

/// ℤ[ω]/𝔭 for a prime 𝔭 above the rational prime p.
struct ResidueField {
  arith::u64 p = 0;
  unsigned degree = 1;  ///< residue degree f
  Ring ring = Ring::gaussian;
  arith::u64 omega_image = 0;  ///< for degree 1: the root of x²+1 resp. x²+x+1 that ω maps to
  Embedding embedding = Embedding::first;

  /// p^f as 128-bit so p² never wraps.
  arith::u128 size() const;

  FieldElement one() const { return {1, 0}; }
  bool is_zero(const FieldElement& x) const { return x.c0 == 0 && x.c1 == 0; }
  FieldElement mul(const FieldElement& x, const FieldElement& y) const;
  FieldElement pow(FieldElement x, arith::u128 e) const;
};

/// For split p, `first` sends ω to the smaller root mod p and `second` to the other one.
/// Inert p yields the degree-2 field; the embedding choice is ignored there.
ResidueField residue_field(arith::u64 p, Ring ring, Embedding embedding = Embedding::first);

/// The ring map ℤ[ω] -> ℤ[ω]/𝔭. Throws ReductionError if p divides norm(x).
FieldElement reduce(const QuadInt& x, const ResidueField& field);

/// Whether alpha is a q-th power in the residue field. Exponent mode raises alpha to (|K|-1)/gcd(q, |K|-1);
/// bruteforce mode enumerates all q-th powers and is limited to |K| < 10^6.
bool ff_is_qth_power(const FieldElement& alpha, arith::u64 q, const ResidueField& field,
                     arith::PowerTestMode mode = arith::PowerTestMode::exponent);

}  // namespace nonnorm
