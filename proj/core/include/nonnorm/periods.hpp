#pragma once

// Exact arithmetic in ℤ[ω][x]/Φ_L(x), Gaussian periods and their Galois orbits, and the Vandermonde
// matrix Ξ whose rows are the powers of the conjugates of η.

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nonnorm/construct.hpp"
#include "nonnorm/quadring.hpp"

namespace nonnorm {

/// Coefficients of Φ_m, constant term first.
std::vector<std::int64_t> cyclotomic_poly(arith::u64 m);

/// Element of ℤ[ω][x]/Φ_L(x) with ω = i or ζ₃, written in the power basis 1, ζ_L, ..., ζ_L^(φ(L)-1).
class CyclotomicInt {
 public:
  CyclotomicInt(arith::u64 conductor, Ring ring);

  static CyclotomicInt constant(arith::u64 conductor, const QuadInt& c);
  /// c·ζ_L^e for any e >= 0.
  static CyclotomicInt monomial(arith::u64 conductor, const QuadInt& c, arith::u64 e);
  /// Σ_e ζ_L^e over the given exponents.
  static CyclotomicInt sum_of_powers(arith::u64 conductor, Ring ring, const std::vector<arith::u64>& exponents);

  arith::u64 conductor() const { return conductor_; }
  Ring ring() const { return ring_; }
  const std::vector<QuadInt>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// True when every non-constant coefficient vanishes.
  bool is_constant() const;
  QuadInt constant_term() const { return coeffs_.front(); }

  CyclotomicInt operator-() const;
  friend CyclotomicInt operator+(const CyclotomicInt& x, const CyclotomicInt& y);
  friend CyclotomicInt operator-(const CyclotomicInt& x, const CyclotomicInt& y);
  friend CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y);
  friend CyclotomicInt operator*(const QuadInt& c, const CyclotomicInt& x);
  CyclotomicInt& operator+=(const CyclotomicInt& y) { return *this = *this + y; }
  friend bool operator==(const CyclotomicInt& x, const CyclotomicInt& y);

  CyclotomicInt pow(arith::u64 e) const;

  /// The automorphism ζ_L -> ζ_L^s, gcd(s, L) = 1. Coefficients in ℤ[ω] are left alone.
  CyclotomicInt galois(arith::u64 s) const;

  /// Horner evaluation at ζ_L = e^(2πi/L) in binary64.
  std::complex<double> eval() const;

 private:
  CyclotomicInt(arith::u64 conductor, Ring ring, std::shared_ptr<const std::vector<std::int64_t>> phi);
  void reduce_from(std::vector<QuadInt> wide);
  void require_compatible(const CyclotomicInt& y) const;

  arith::u64 conductor_ = 1;
  Ring ring_ = Ring::gaussian;
  std::shared_ptr<const std::vector<std::int64_t>> phi_;
  std::vector<QuadInt> coeffs_;
};

/// η = Σ_{i < φ(M)/n} ζ_M^(c^(n·i) mod M) for an odd prime power M, n | φ(M), c a primitive root.
CyclotomicInt gaussian_period(arith::u64 M, arith::u64 n, arith::u64 c, Ring ring = Ring::gaussian);

class DegenerateOrbitError : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

/// The conjugates σ^a(η), a = 0..n-1, of a primitive element η of a cyclic degree-n field.
/// η is a sum of powers of ζ_L and σ acts by ζ_L -> ζ_L^sigma.
struct PeriodOrbit {
  Ring ring = Ring::gaussian;
  arith::u64 n = 1;
  arith::u64 conductor = 1;  ///< L
  arith::u64 sigma = 1;      ///< s with σ(ζ_L) = ζ_L^s
  std::vector<std::pair<arith::u64, arith::u64>> generator_maps;  ///< per factor field (C_j, c_j)
  std::string source;        ///< "periods" or the fixture label
  bool composite = false;    ///< η is a sum of periods from several factor fields
  CyclotomicInt eta{1, Ring::gaussian};
  std::vector<CyclotomicInt> sigma_images;
  std::vector<std::vector<arith::u64>> exponent_sets;  ///< σ^a(η) = Σ_{e ∈ set a} ζ_L^e
  std::vector<std::complex<double>> complex_orbit;
};

/// Orbit of the sum of the factor-field periods of a certified plan. Throws DegenerateOrbitError when two
/// conjugates coincide numerically.
PeriodOrbit galois_orbit(const ExtensionPlan& plan);

/// Orbit of η = Σ_{e ∈ eta_exponents} ζ_L^e under ζ_L -> ζ_L^sigma, with n the orbit length.
PeriodOrbit orbit_from_exponents(Ring ring, arith::u64 conductor, arith::u64 sigma,
                                 const std::vector<arith::u64>& eta_exponents, arith::u64 n, std::string label);

/// A reference orbit listed in an orbit fixture (JSON).
struct OrbitFixture {
  std::string label;
  arith::u64 n = 0;
  arith::u64 conductor = 0;
  arith::u64 sigma = 0;
  std::vector<arith::u64> eta;
  std::string gamma;
};

std::vector<OrbitFixture> parse_orbit_fixtures(std::string_view json_text);
std::vector<OrbitFixture> load_orbit_fixtures(const std::string& path);
/// The fixtures compiled into the library.
const std::vector<OrbitFixture>& bundled_orbit_fixtures();
const OrbitFixture& bundled_orbit_fixture(arith::u64 n);
PeriodOrbit orbit_from_fixture(const OrbitFixture& fixture, Ring ring = Ring::gaussian);

/// Rows reordered as (σ^P)^a, a = 0..n-1; requires gcd(P, n) = 1.
PeriodOrbit permute(const PeriodOrbit& orbit, arith::u64 P);

struct Vandermonde {
  Eigen::MatrixXcd numeric;                          ///< Ξ[a][b] = σ^a(η)^b
  std::vector<std::vector<CyclotomicInt>> exact;     ///< same entries, exactly
};

Vandermonde vandermonde(const PeriodOrbit& orbit, bool with_exact = true);

}  // namespace nonnorm
