#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nonnorm/stbc.hpp"

using namespace nonnorm;
using arith::u64;

namespace {

CodeSpec spec_for(u64 n, u64 m, QuadInt gamma, Ring ring = Ring::gaussian) {
  return make_code_spec(galois_orbit(plan_extension(ring, n, m)), gamma);
}

SymbolMatrix zeros(u64 n, Ring ring = Ring::gaussian) {
  return SymbolMatrix(n, std::vector<QuadInt>(n, QuadInt::zero(ring)));
}

// Energy of the real orbit 2cos(2π c^a / 17) computed from the closed form, independent of the library orbit.
double cosine_energy_n8(double gamma_norm) {
  double e = 0.0;
  u64 g = 1;
  for (int a = 0; a < 8; ++a) {
    const double eta = 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(g) / 17.0);
    double row = 0.0;
    for (int b = 0; b < 8; ++b) row += std::pow(eta * eta, b);
    e += ((8 - a) + a * gamma_norm) * row;
    g = g * 3 % 17;
  }
  return e;
}

}  // namespace

TEST_CASE("build_codeword examples") {
  const CodeSpec spec = spec_for(2, 3, one_plus_i());
  SymbolMatrix X = zeros(2);
  const Codeword Z = build_codeword(spec, X);
  for (const auto& row : Z.exact) {
    for (const auto& x : row) CHECK(x.is_zero());
  }
  CHECK(det_norm(Z) == 0);

  X[0][0] = QuadInt::one(Ring::gaussian);
  const Codeword I = build_codeword(spec, X);
  CHECK(I.exact[0][0] == CyclotomicInt::constant(3, QuadInt::one(Ring::gaussian)));
  CHECK(I.exact[1][1] == CyclotomicInt::constant(3, QuadInt::one(Ring::gaussian)));
  CHECK(I.exact[0][1].is_zero());
  CHECK(I.exact[1][0].is_zero());
  CHECK(det_norm(I) == 1);

  CHECK_THROWS_AS(build_codeword(spec, zeros(3)), std::invalid_argument);
  SymbolMatrix ragged = zeros(2);
  ragged[1].pop_back();
  CHECK_THROWS_AS(build_codeword(spec, ragged), std::invalid_argument);
}

TEST_CASE("2x2 determinant against an independent complex expansion") {
  const CodeSpec spec = spec_for(2, 3, one_plus_i());
  const std::complex<double> w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const std::complex<double> g(1.0, 1.0);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> d(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    SymbolMatrix X = zeros(2);
    for (auto& row : X) {
      for (auto& x : row) x = {d(rng), d(rng), Ring::gaussian};
    }
    // s_i = X[i][0] + X[i][1] η with η = ζ₃, σ(η) = ζ₃²
    auto s = [&](int i, std::complex<double> eta) { return X[i][0].to_complex() + X[i][1].to_complex() * eta; };
    const std::complex<double> det = s(0, w) * s(0, w * w) - g * s(1, w) * s(1, w * w);
    REQUIRE(static_cast<double>(det_norm(build_codeword(spec, X))) == doctest::Approx(std::norm(det)));
  }
  SymbolMatrix X = zeros(2);
  X[0][0] = QuadInt::one(Ring::gaussian);
  X[1][1] = QuadInt::one(Ring::gaussian);
  // s₀ = 1, s₁ = ζ₃: det = 1 - (1+i)·ζ₃·ζ₃² = -i
  CHECK(det_norm(build_codeword(spec, X)) == 1);
}

TEST_CASE("diagonal symbol identity") {
  const CodeSpec spec = spec_for(2, 3, one_plus_i());
  for (QuadInt z : {QuadInt{1, 0, Ring::gaussian}, QuadInt{0, 1, Ring::gaussian}, one_plus_i(), QuadInt{2, -3, Ring::gaussian}}) {
    SymbolMatrix X = zeros(2);
    X[0][0] = z;
    CHECK(det_norm(build_codeword(spec, X)) == z.norm() * z.norm());
  }
  const CodeSpec spec8 = spec_for(8, 17, one_plus_i());
  SymbolMatrix X = zeros(8);
  X[0][0] = one_plus_i();
  CHECK(det_norm(build_codeword(spec8, X)) == 256);
}

TEST_CASE("determinants are nonzero integers on random symbols for larger n") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> d(-1, 1);
  for (const auto& [n, m] : std::vector<std::pair<u64, u64>>{{3, 7}, {4, 5}, {5, 11}}) {
    const CodeSpec spec = spec_for(n, m, one_plus_i());
    for (int trial = 0; trial < 30; ++trial) {
      SymbolMatrix X = zeros(n);
      for (auto& row : X) {
        for (auto& x : row) x = {d(rng), d(rng), Ring::gaussian};
      }
      X[0][0] = QuadInt::one(Ring::gaussian) + X[0][0];
      const std::int64_t v = det_norm(build_codeword(spec, X));
      bool all_zero = true;
      for (const auto& row : X) {
        for (const auto& x : row) all_zero = all_zero && x.is_zero();
      }
      if (!all_zero) REQUIRE(v >= 1);
    }
  }
}

TEST_CASE("exact_determinant limits") {
  CHECK_THROWS_AS(exact_determinant({}), std::invalid_argument);
  const std::vector<std::vector<CyclotomicInt>> big(21, std::vector<CyclotomicInt>(21, CyclotomicInt(3, Ring::gaussian)));
  CHECK_THROWS_AS(exact_determinant(big), BudgetError);
}

TEST_CASE("min_det_bruteforce") {
  const CodeSpec spec = spec_for(2, 3, one_plus_i());
  const MinDetResult r = min_det_bruteforce(spec, 1);
  CHECK(r.minimum == 1);
  CHECK(r.evaluated == 6560);
  CHECK(r.zero_determinants == 0);
  CHECK(r.fractional_values == 0);
  REQUIRE(r.witness.size() == 2);
  CHECK(det_norm(build_codeword(spec, r.witness)) == 1);
  CHECK_THROWS_AS(min_det_bruteforce(spec, 0), std::invalid_argument);
  CHECK_THROWS_AS(min_det_bruteforce(spec_for(4, 5, one_plus_i()), 1), BudgetError);
}

TEST_CASE("energies of the root-of-unity orbit at n = 16") {
  const CodeSpec a = spec_for(16, 17, one_plus_i());
  const EnergyResult ea = energy(a);
  REQUIRE(ea.exact.has_value());
  CHECK(*ea.exact == 6016);
  CHECK(std::round(ea.weighted) == 6016.0);
  CHECK(std::round(ea.frobenius) == 6016.0);

  const CodeSpec b = spec_for(16, 17, QuadInt{2, 1, Ring::gaussian});
  const EnergyResult eb = energy(b);
  CHECK(*eb.exact == 11776);
  CHECK(std::round(eb.weighted) == 11776.0);
  CHECK(format_energy(eb) == "11776");
  CHECK(code_metrics(b).xi == "1/11776^16");
}

TEST_CASE("energies at n = 8 against the cosine closed form") {
  for (QuadInt g : {one_plus_i(), QuadInt{2, 1, Ring::gaussian}}) {
    const EnergyResult e = energy(spec_for(8, 17, g));
    CHECK_FALSE(e.exact.has_value());
    const double oracle = cosine_energy_n8(static_cast<double>(g.norm()));
    CHECK(e.weighted == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(e.frobenius == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("unit-modulus gamma on a root-of-unity orbit gives n^3") {
  for (const auto& [n, m] : std::vector<std::pair<u64, u64>>{{2, 3}, {4, 5}}) {
    const CodeSpec s = spec_for(n, m, QuadInt{0, 1, Ring::gaussian});
    const EnergyResult e = energy(s);
    CHECK(*e.exact == static_cast<std::int64_t>(n * n * n));
  }
}

TEST_CASE("energy grows with |gamma| and both forms agree") {
  std::vector<QuadInt> gammas{QuadInt{1, 0, Ring::gaussian}, one_plus_i(), QuadInt{2, 1, Ring::gaussian},
                              QuadInt{2, 2, Ring::gaussian}, QuadInt{3, 2, Ring::gaussian}};
  for (const auto& [n, m] : std::vector<std::pair<u64, u64>>{{8, 17}, {16, 17}, {12, 13}, {6, 9}, {24, 119}}) {
    double previous = 0.0;
    for (const auto& g : gammas) {
      const EnergyResult e = energy(spec_for(n, m, g));
      REQUIRE(e.weighted > previous);
      REQUIRE(e.frobenius == doctest::Approx(e.weighted).epsilon(1e-10));
      if (e.exact) REQUIRE(static_cast<double>(*e.exact) == std::round(e.weighted));
      previous = e.weighted;
    }
  }
}

TEST_CASE("make_code_spec preconditions") {
  const PeriodOrbit o = galois_orbit(plan_extension(Ring::gaussian, 2, 3));
  CHECK_THROWS_AS(make_code_spec(o, sqrt_minus3()), std::invalid_argument);
  CHECK_THROWS_AS(make_code_spec(o, QuadInt::zero(Ring::gaussian)), std::invalid_argument);
}

TEST_CASE("diversity_report") {
  const PeriodOrbit o = galois_orbit(plan_extension(Ring::gaussian, 16, 17));
  const CodeSpec lc = make_code_spec(o, QuadInt{2, 1, Ring::gaussian}, "period-2+1i");
  const CodeSpec nw = make_code_spec(o, one_plus_i(), "period-1+1i");
  const DiversityReport r = diversity_report({lc, nw});
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].label == "period-1+1i");
  CHECK(r.rows[0].xi == "1/6016^16");
  CHECK(r.rows[1].label == "period-2+1i");
  CHECK_FALSE(r.note.empty());
  CHECK(diversity_csv(diversity_report({nw})).rfind("label,xi,gamma,orbit\nperiod-1+1i,1/6016^16,1+1i,\"(1) (3)", 0) == 0);
  CHECK_THROWS_AS(diversity_report({}), std::invalid_argument);
  CHECK_THROWS_AS(diversity_report({nw, spec_for(8, 17, one_plus_i())}), std::invalid_argument);
}
