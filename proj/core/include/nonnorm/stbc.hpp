#pragma once

// Space-time block codes from a cyclic division algebra: codeword construction, exact determinants,
// bounded minimum-determinant search and the energy / normalized diversity product.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nonnorm/periods.hpp"

namespace nonnorm {

struct CodeSpec {
  PeriodOrbit orbit;
  QuadInt gamma;
  arith::u64 n = 0;
  std::string label;
};

/// Checks that gamma lives in the orbit's coefficient ring and that the orbit has length n.
CodeSpec make_code_spec(PeriodOrbit orbit, const QuadInt& gamma, std::string label = {});

using SymbolMatrix = std::vector<std::vector<QuadInt>>;

struct Codeword {
  std::vector<std::vector<CyclotomicInt>> exact;
  Eigen::MatrixXcd numeric;
};

/// s_i = Σ_j X[i][j] η^j and S[r][c] = σ^c(s_{(r-c) mod n}), multiplied by γ above the diagonal.
Codeword build_codeword(const CodeSpec& spec, const SymbolMatrix& X);

/// Division-free determinant (Laplace expansion memoised over column subsets).
CyclotomicInt exact_determinant(const std::vector<std::vector<CyclotomicInt>>& S);

/// |det S|² as an exact integer. Throws ConsistencyError when the exact determinant is not in the base
/// ring or disagrees with the floating-point determinant by more than 1e-6 relative.
std::int64_t det_norm(const Codeword& S);

struct MinDetResult {
  std::int64_t minimum = 0;
  SymbolMatrix witness;               ///< lexicographically smallest X attaining the minimum
  arith::u64 evaluated = 0;           ///< nonzero X enumerated
  arith::u64 zero_determinants = 0;   ///< nonzero X with det = 0
  arith::u64 fractional_values = 0;   ///< floating |det|² not within 1e-6 of a positive integer
};

/// Exhaustive minimum of det_norm over nonzero X with every real and imaginary part in [-radius, radius].
/// Throws std::invalid_argument for radius 0 and BudgetError when (2r+1)^(2n²) > 10^8.
MinDetResult min_det_bruteforce(const CodeSpec& spec, unsigned radius);

struct EnergyResult {
  double weighted = 0.0;    ///< Σ_a ((n-a) + a|γ|²) Σ_b |σ^a(η)|^(2b)
  double frobenius = 0.0;   ///< Σ_i ‖diag(I_{n-i}, γ I_i) Ξ‖_F²
  std::optional<std::int64_t> exact;  ///< set when every conjugate is a root of unity
};

EnergyResult energy(const CodeSpec& spec);

struct CodeMetrics {
  arith::u64 n = 0;
  EnergyResult energy;
  std::string xi;  ///< "1/E^n"
  std::optional<MinDetResult> min_det;
};

/// E as printed: the exact integer when known, otherwise ten significant digits.
std::string format_energy(const EnergyResult& e);

CodeMetrics code_metrics(const CodeSpec& spec, std::optional<unsigned> radius = std::nullopt);

struct DiversityRow {
  std::string label;
  std::string gamma;
  double energy = 0.0;
  std::string xi;
  std::string orbit;  ///< exponent sets of η, σ(η), ... as "(1,16) (3,14) ..."
};

struct DiversityReport {
  arith::u64 n = 0;
  std::vector<DiversityRow> rows;  ///< ascending E, i.e. descending ξ
  std::string note;
};

/// Throws std::invalid_argument when the specs do not share n.
DiversityReport diversity_report(const std::vector<CodeSpec>& specs);

/// CSV with columns label,xi,gamma,orbit.
std::string diversity_csv(const DiversityReport& report);

}  // namespace nonnorm
