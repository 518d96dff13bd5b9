#include "nonnorm/stbc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

namespace nonnorm {

using arith::u64;

namespace {

std::vector<u64> sigma_powers(const PeriodOrbit& orbit) {
  std::vector<u64> out(orbit.n, 1);
  if (orbit.conductor == 1) return out;
  for (u64 c = 1; c < orbit.n; ++c) out[c] = arith::mul_mod(out[c - 1], orbit.sigma, orbit.conductor);
  return out;
}

void require_square(const SymbolMatrix& X, u64 n) {
  if (X.size() != n) throw std::invalid_argument("symbol matrix must have n rows");
  for (const auto& row : X) {
    if (row.size() != n) throw std::invalid_argument("symbol matrix must have n columns");
  }
}

std::string to_fixed_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

CodeSpec make_code_spec(PeriodOrbit orbit, const QuadInt& gamma, std::string label) {
  if (gamma.ring != orbit.ring) throw std::invalid_argument("gamma and the orbit use different coefficient rings");
  if (orbit.sigma_images.size() != orbit.n) throw std::invalid_argument("orbit length differs from n");
  if (gamma.is_zero()) throw std::invalid_argument("gamma must be nonzero");
  CodeSpec spec;
  spec.n = orbit.n;
  spec.orbit = std::move(orbit);
  spec.gamma = gamma;
  spec.label = std::move(label);
  return spec;
}

Codeword build_codeword(const CodeSpec& spec, const SymbolMatrix& X) {
  const u64 n = spec.n;
  require_square(X, n);
  const PeriodOrbit& orbit = spec.orbit;
  const u64 L = orbit.conductor;
  const Ring ring = orbit.ring;

  std::vector<CyclotomicInt> eta_pow{CyclotomicInt::constant(L, QuadInt::one(ring))};
  for (u64 j = 1; j < n; ++j) eta_pow.push_back(eta_pow.back() * orbit.eta);

  std::vector<CyclotomicInt> s;
  for (u64 i = 0; i < n; ++i) {
    CyclotomicInt acc(L, ring);
    for (u64 j = 0; j < n; ++j) {
      if (!X[i][j].is_zero()) acc += X[i][j] * eta_pow[j];
    }
    s.push_back(std::move(acc));
  }

  // numeric_s[c][i] = σ^c(s_i), evaluated through the complex conjugates of η
  std::vector<std::vector<std::complex<double>>> numeric_s(n, std::vector<std::complex<double>>(n));
  for (u64 c = 0; c < n; ++c) {
    for (u64 i = 0; i < n; ++i) {
      std::complex<double> acc = 0.0, z = 1.0;
      for (u64 j = 0; j < n; ++j) {
        acc += X[i][j].to_complex() * z;
        z *= orbit.complex_orbit[c];
      }
      numeric_s[c][i] = acc;
    }
  }

  const auto powers = sigma_powers(orbit);
  const std::complex<double> gamma_c = spec.gamma.to_complex();
  Codeword S;
  S.numeric.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  S.exact.assign(n, std::vector<CyclotomicInt>(n, CyclotomicInt(L, ring)));
  for (u64 c = 0; c < n; ++c) {
    for (u64 r = 0; r < n; ++r) {
      const u64 i = (r + n - c) % n;
      CyclotomicInt entry = s[i].galois(powers[c]);
      std::complex<double> value = numeric_s[c][i];
      if (r < c) {
        entry = spec.gamma * entry;
        value *= gamma_c;
      }
      S.exact[r][c] = std::move(entry);
      S.numeric(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value;
    }
  }
  return S;
}

CyclotomicInt exact_determinant(const std::vector<std::vector<CyclotomicInt>>& S) {
  const std::size_t n = S.size();
  if (n == 0) throw std::invalid_argument("exact_determinant: empty matrix");
  if (n > 20) throw BudgetError("exact_determinant: n > 20 is beyond the subset expansion");
  const u64 L = S[0][0].conductor();
  const Ring ring = S[0][0].ring();
  // minor[mask] = det of rows 0..|mask|-1 restricted to the columns in mask
  std::vector<CyclotomicInt> minor(std::size_t{1} << n, CyclotomicInt(L, ring));
  minor[0] = CyclotomicInt::constant(L, QuadInt::one(ring));
  for (std::size_t mask = 1; mask < minor.size(); ++mask) {
    const int k = std::popcount(mask);
    const std::size_t row = static_cast<std::size_t>(k - 1);
    CyclotomicInt acc(L, ring);
    int above = k;  // columns of mask strictly greater than the current one, after decrement
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      --above;
      const CyclotomicInt& a = S[row][col];
      const CyclotomicInt& sub = minor[mask & ~(std::size_t{1} << col)];
      if (a.is_zero() || sub.is_zero()) continue;
      if (above % 2 == 0) {
        acc += a * sub;
      } else {
        acc = acc - a * sub;
      }
    }
    minor[mask] = std::move(acc);
  }
  return minor.back();
}

std::int64_t det_norm(const Codeword& S) {
  const CyclotomicInt d = exact_determinant(S.exact);
  if (!d.is_constant()) throw ConsistencyError("determinant does not reduce to an element of the base ring");
  const std::int64_t exact = d.constant_term().norm();
  const double numeric = std::norm(S.numeric.determinant());
  const double scale = std::max(1.0, static_cast<double>(exact));
  if (std::abs(numeric - static_cast<double>(exact)) > 1e-6 * scale) {
    throw ConsistencyError("exact |det|^2 = " + std::to_string(exact) + " disagrees with the floating value " +
                           to_fixed_digits(numeric));
  }
  return exact;
}

MinDetResult min_det_bruteforce(const CodeSpec& spec, unsigned radius) {
  if (radius == 0) throw std::invalid_argument("min_det_bruteforce: radius 0 leaves no nonzero symbol matrix");
  const u64 n = spec.n;
  const u64 digits = 2 * n * n;
  const u64 base = 2 * static_cast<u64>(radius) + 1;
  u64 total = 1;
  for (u64 i = 0; i < digits; ++i) {
    if (total > 100'000'000 / base) {
      throw BudgetError("enumeration of " + std::to_string(base) + "^" + std::to_string(digits) +
                        " symbol matrices exceeds 10^8; use a smaller radius or n");
    }
    total *= base;
  }

  const auto r = static_cast<std::int64_t>(radius);
  std::vector<std::int64_t> v(digits, -r);
  MinDetResult result;
  bool have = false;
  SymbolMatrix X(n, std::vector<QuadInt>(n, QuadInt::zero(spec.orbit.ring)));
  // v walks the box in lexicographic order of (Re X00, Im X00, Re X01, ...), so the first minimiser is the
  // lexicographically smallest one.
  for (u64 step = 0; step < total; ++step) {
    if (step > 0) {
      std::size_t pos = digits;
      while (pos-- > 0) {
        if (v[pos] < r) {
          ++v[pos];
          break;
        }
        v[pos] = -r;
      }
    }
    if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; })) continue;
    for (u64 i = 0; i < n; ++i) {
      for (u64 j = 0; j < n; ++j) X[i][j] = {v[2 * (i * n + j)], v[2 * (i * n + j) + 1], spec.orbit.ring};
    }
    const Codeword S = build_codeword(spec, X);
    const std::int64_t value = det_norm(S);
    ++result.evaluated;
    const double numeric = std::norm(S.numeric.determinant());
    if (value == 0) {
      ++result.zero_determinants;
    } else if (std::round(numeric) < 1.0 || std::abs(numeric - std::round(numeric)) > 1e-6 * std::max(1.0, numeric)) {
      ++result.fractional_values;
    }
    if (!have || value < result.minimum) {
      have = true;
      result.minimum = value;
      result.witness = X;
    }
  }
  return result;
}

EnergyResult energy(const CodeSpec& spec) {
  const u64 n = spec.n;
  const double g2 = static_cast<double>(spec.gamma.norm());
  EnergyResult e;
  for (u64 a = 0; a < n; ++a) {
    const double weight = static_cast<double>(n - a) + static_cast<double>(a) * g2;
    const double r2 = std::norm(spec.orbit.complex_orbit[a]);
    double row = 0.0, term = 1.0;
    for (u64 b = 0; b < n; ++b) {
      row += term;
      term *= r2;
    }
    e.weighted += weight * row;
  }

  const Vandermonde xi = vandermonde(spec.orbit, false);
  const std::complex<double> gamma_c = spec.gamma.to_complex();
  for (u64 i = 0; i < n; ++i) {
    Eigen::VectorXcd d = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(n));
    for (u64 a = n - i; a < n; ++a) d(static_cast<Eigen::Index>(a)) = gamma_c;
    e.frobenius += (d.asDiagonal() * xi.numeric).squaredNorm();
  }

  const bool roots_of_unity = std::all_of(spec.orbit.exponent_sets.begin(), spec.orbit.exponent_sets.end(),
                                          [](const auto& set) { return set.size() == 1; });
  if (roots_of_unity) {
    // Every |σ^a(η)| = 1, so each row contributes n.
    std::int64_t total = 0;
    const std::int64_t nn = static_cast<std::int64_t>(n);
    for (std::int64_t a = 0; a < nn; ++a) {
      const std::int64_t weight =
          detail::checked_add(nn - a, detail::checked_mul(a, spec.gamma.norm()));
      total = detail::checked_add(total, detail::checked_mul(weight, nn));
    }
    e.exact = total;
  }
  return e;
}

std::string format_energy(const EnergyResult& e) {
  if (e.exact) return std::to_string(*e.exact);
  return to_fixed_digits(e.weighted);
}

CodeMetrics code_metrics(const CodeSpec& spec, std::optional<unsigned> radius) {
  CodeMetrics m;
  m.n = spec.n;
  m.energy = energy(spec);
  m.xi = "1/" + format_energy(m.energy) + "^" + std::to_string(spec.n);
  if (radius) m.min_det = min_det_bruteforce(spec, *radius);
  return m;
}

DiversityReport diversity_report(const std::vector<CodeSpec>& specs) {
  if (specs.empty()) throw std::invalid_argument("diversity_report: no specs");
  DiversityReport report;
  report.n = specs.front().n;
  for (const auto& spec : specs) {
    if (spec.n != report.n) throw std::invalid_argument("diversity_report: specs have different n");
    const CodeMetrics m = code_metrics(spec);
    DiversityRow row;
    row.label = spec.label;
    row.gamma = spec.gamma.to_string();
    row.energy = m.energy.exact ? static_cast<double>(*m.energy.exact) : m.energy.weighted;
    row.xi = m.xi;
    for (const auto& set : spec.orbit.exponent_sets) {
      if (!row.orbit.empty()) row.orbit += ' ';
      row.orbit += '(';
      for (std::size_t i = 0; i < set.size(); ++i) row.orbit += (i ? "," : "") + std::to_string(set[i]);
      row.orbit += ')';
    }
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const DiversityRow& a, const DiversityRow& b) { return a.energy < b.energy; });
  report.note =
      "Rows are ordered by increasing E, i.e. decreasing xi = 1/E^n. With the orbit fixed, E grows with |gamma|, "
      "so a base element of smaller absolute value gives the larger normalized diversity product.";
  return report;
}

std::string diversity_csv(const DiversityReport& report) {
  std::string out = "label,xi,gamma,orbit\n";
  for (const auto& r : report.rows) out += r.label + ',' + r.xi + ',' + r.gamma + ",\"" + r.orbit + "\"\n";
  return out;
}

}  // namespace nonnorm
