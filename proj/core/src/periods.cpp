#include "nonnorm/periods.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nonnorm {

namespace detail {
extern const std::string_view kOrbitFixturesJson;
}

using arith::u64;
using Poly = std::vector<std::int64_t>;

namespace {

// Quotient of num by a monic divisor; throws if the division is not exact.
Poly divide_exact(const Poly& num, const Poly& den) {
  Poly rem = num;
  const std::size_t dn = den.size() - 1;
  if (rem.size() < den.size()) throw std::logic_error("cyclotomic_poly: divisor degree too large");
  Poly quot(rem.size() - dn, 0);
  for (std::size_t i = rem.size(); i-- > dn;) {
    const std::int64_t c = rem[i];
    if (c == 0) continue;
    quot[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) rem[i - dn + j] = detail::checked_sub(rem[i - dn + j], detail::checked_mul(c, den[j]));
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (rem[i] != 0) throw std::logic_error("cyclotomic_poly: inexact division");
  }
  return quot;
}

std::shared_ptr<const Poly> cached_cyclotomic(u64 m) {
  static std::mutex mutex;
  static std::map<u64, std::shared_ptr<const Poly>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  Poly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (u64 d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_exact(p, *cached_cyclotomic(d));
  }
  auto result = std::make_shared<const Poly>(std::move(p));
  std::lock_guard lock(mutex);
  return cache.try_emplace(m, result).first->second;
}

QuadInt scale(const QuadInt& c, std::int64_t k) {
  return {detail::checked_mul(c.a, k), detail::checked_mul(c.b, k), c.ring};
}

std::complex<double> root_of_unity(u64 e, u64 L) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e % L) / static_cast<double>(L));
}

std::complex<double> sum_roots(const std::vector<u64>& exponents, u64 L) {
  std::complex<double> z = 0.0;
  for (u64 e : exponents) z += root_of_unity(e, L);
  return z;
}

void require_distinct(const std::vector<std::complex<double>>& values) {
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      if (std::abs(values[a] - values[b]) <= 1e-6) {
        throw DegenerateOrbitError("conjugates " + std::to_string(a) + " and " + std::to_string(b) +
                                   " coincide; eta is not a primitive element");
      }
    }
  }
}

// Fills images, exponent sets and complex values from sigma_images[0] and exponent_sets[0].
void complete_orbit(PeriodOrbit& orbit) {
  const u64 L = orbit.conductor;
  orbit.sigma_images = {orbit.eta};
  for (u64 a = 1; a < orbit.n; ++a) {
    orbit.sigma_images.push_back(orbit.sigma_images.back().galois(orbit.sigma));
    std::vector<u64> next;
    for (u64 e : orbit.exponent_sets.back()) next.push_back(L == 1 ? 0 : arith::mul_mod(e, orbit.sigma, L));
    orbit.exponent_sets.push_back(std::move(next));
  }
  if (!(orbit.sigma_images.back().galois(orbit.sigma) == orbit.eta)) {
    throw ConsistencyError("sigma^n(eta) != eta: the orbit does not close after n steps");
  }
  for (const auto& exps : orbit.exponent_sets) orbit.complex_orbit.push_back(sum_roots(exps, L));
  require_distinct(orbit.complex_orbit);
}

}  // namespace

std::vector<std::int64_t> cyclotomic_poly(u64 m) {
  if (m == 0) throw std::invalid_argument("cyclotomic_poly: m must be positive");
  return *cached_cyclotomic(m);
}

CyclotomicInt::CyclotomicInt(u64 conductor, Ring ring)
    : CyclotomicInt(conductor, ring, conductor == 0 ? nullptr : cached_cyclotomic(conductor)) {}

CyclotomicInt::CyclotomicInt(u64 conductor, Ring ring, std::shared_ptr<const std::vector<std::int64_t>> phi)
    : conductor_(conductor), ring_(ring), phi_(std::move(phi)) {
  if (conductor == 0) throw std::invalid_argument("CyclotomicInt: conductor must be positive");
  coeffs_.assign(phi_->size() - 1, QuadInt::zero(ring));
}

void CyclotomicInt::reduce_from(std::vector<QuadInt> wide) {
  const Poly& phi = *phi_;
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = wide.size(); i-- > deg;) {
    const QuadInt c = wide[i];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi[j] != 0) wide[i - deg + j] -= scale(c, phi[j]);
    }
    wide[i] = QuadInt::zero(ring_);
  }
  wide.resize(deg, QuadInt::zero(ring_));
  coeffs_ = std::move(wide);
}

void CyclotomicInt::require_compatible(const CyclotomicInt& y) const {
  if (conductor_ != y.conductor_ || ring_ != y.ring_) {
    throw std::invalid_argument("CyclotomicInt operands live in different rings");
  }
}

CyclotomicInt CyclotomicInt::constant(u64 conductor, const QuadInt& c) {
  CyclotomicInt x(conductor, c.ring);
  x.coeffs_.front() = c;
  return x;
}

CyclotomicInt CyclotomicInt::monomial(u64 conductor, const QuadInt& c, u64 e) {
  CyclotomicInt x(conductor, c.ring);
  std::vector<QuadInt> wide(std::max<std::size_t>(e % conductor + 1, x.coeffs_.size()), QuadInt::zero(c.ring));
  wide[e % conductor] = c;
  x.reduce_from(std::move(wide));
  return x;
}

CyclotomicInt CyclotomicInt::sum_of_powers(u64 conductor, Ring ring, const std::vector<u64>& exponents) {
  CyclotomicInt x(conductor, ring);
  std::vector<QuadInt> wide(std::max<std::size_t>(conductor, x.coeffs_.size()), QuadInt::zero(ring));
  for (u64 e : exponents) wide[e % conductor] += QuadInt::one(ring);
  x.reduce_from(std::move(wide));
  return x;
}

bool CyclotomicInt::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const QuadInt& c) { return c.is_zero(); });
}

bool CyclotomicInt::is_constant() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const QuadInt& c) { return c.is_zero(); });
}

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CyclotomicInt operator+(const CyclotomicInt& x, const CyclotomicInt& y) {
  x.require_compatible(y);
  CyclotomicInt r = x;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += y.coeffs_[i];
  return r;
}

CyclotomicInt operator-(const CyclotomicInt& x, const CyclotomicInt& y) {
  x.require_compatible(y);
  CyclotomicInt r = x;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= y.coeffs_[i];
  return r;
}

CyclotomicInt operator*(const CyclotomicInt& x, const CyclotomicInt& y) {
  x.require_compatible(y);
  const std::size_t d = x.coeffs_.size();
  std::vector<QuadInt> wide(2 * d - 1, QuadInt::zero(x.ring_));
  for (std::size_t i = 0; i < d; ++i) {
    if (x.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (!y.coeffs_[j].is_zero()) wide[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  CyclotomicInt r(x.conductor_, x.ring_, x.phi_);
  r.reduce_from(std::move(wide));
  return r;
}

CyclotomicInt operator*(const QuadInt& c, const CyclotomicInt& x) {
  CyclotomicInt r = x;
  for (auto& v : r.coeffs_) v = c * v;
  return r;
}

bool operator==(const CyclotomicInt& x, const CyclotomicInt& y) {
  return x.conductor_ == y.conductor_ && x.ring_ == y.ring_ && x.coeffs_ == y.coeffs_;
}

CyclotomicInt CyclotomicInt::pow(u64 e) const {
  CyclotomicInt result = constant(conductor_, QuadInt::one(ring_));
  CyclotomicInt base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

CyclotomicInt CyclotomicInt::galois(u64 s) const {
  if (std::gcd(s % conductor_, conductor_) != 1 && conductor_ > 1) {
    throw std::invalid_argument("galois: exponent " + std::to_string(s) + " is not a unit modulo " +
                                std::to_string(conductor_));
  }
  std::vector<QuadInt> wide(std::max<std::size_t>(conductor_, coeffs_.size()), QuadInt::zero(ring_));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j].is_zero()) continue;
    const u64 target = conductor_ == 1 ? 0 : arith::mul_mod(j, s % conductor_, conductor_);
    wide[target] += coeffs_[j];
  }
  CyclotomicInt r(conductor_, ring_, phi_);
  r.reduce_from(std::move(wide));
  return r;
}

std::complex<double> CyclotomicInt::eval() const {
  const std::complex<double> zeta = root_of_unity(1, conductor_);
  std::complex<double> acc = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * zeta + coeffs_[j].to_complex();
  return acc;
}

CyclotomicInt gaussian_period(u64 M, u64 n, u64 c, Ring ring) {
  const u64 p = arith::prime_power_base(M);
  if (p == 0 || p == 2) throw std::invalid_argument("gaussian_period: M must be an odd prime power");
  const u64 phi = arith::euler_phi(M);
  if (n == 0 || phi % n != 0) throw std::invalid_argument("gaussian_period: n must divide phi(M)");
  if (std::gcd(c, M) != 1 || arith::multiplicative_order(c, M) != phi) {
    throw std::invalid_argument("gaussian_period: " + std::to_string(c) + " is not a primitive root mod " +
                                std::to_string(M));
  }
  std::vector<u64> exponents;
  const u64 step = arith::mod_pow(c, n, M);
  u64 x = 1;
  for (u64 i = 0; i < phi / n; ++i) {
    exponents.push_back(x);
    x = arith::mul_mod(x, step, M);
  }
  return CyclotomicInt::sum_of_powers(M, ring, exponents);
}

PeriodOrbit galois_orbit(const ExtensionPlan& plan) {
  PeriodOrbit orbit;
  orbit.ring = plan.base;
  orbit.n = plan.n;
  orbit.source = "periods";
  u64 L = 1;
  for (const auto& f : plan.factor_fields) L *= f.conductor;
  orbit.conductor = L;

  std::vector<u64> residues, moduli, eta_exponents;
  for (const auto& f : plan.factor_fields) {
    residues.push_back(f.generator);
    moduli.push_back(f.conductor);
    orbit.generator_maps.emplace_back(f.conductor, f.generator);
    for (u64 h : f.exponents) eta_exponents.push_back(L / f.conductor * h);
  }
  if (plan.factor_fields.empty()) eta_exponents = {0};
  std::sort(eta_exponents.begin(), eta_exponents.end());
  orbit.composite = plan.factor_fields.size() > 1;
  orbit.sigma = moduli.empty() ? 1 : arith::crt(residues, moduli);
  orbit.eta = CyclotomicInt::sum_of_powers(L, plan.base, eta_exponents);
  orbit.exponent_sets = {eta_exponents};
  complete_orbit(orbit);
  return orbit;
}

PeriodOrbit orbit_from_exponents(Ring ring, u64 conductor, u64 sigma, const std::vector<u64>& eta_exponents, u64 n,
                                 std::string label) {
  if (n == 0) throw std::invalid_argument("orbit_from_exponents: n must be positive");
  if (conductor < 2 || std::gcd(sigma, conductor) != 1) {
    throw std::invalid_argument("orbit_from_exponents: sigma must be a unit modulo the conductor");
  }
  PeriodOrbit orbit;
  orbit.ring = ring;
  orbit.n = n;
  orbit.conductor = conductor;
  orbit.sigma = sigma % conductor;
  orbit.generator_maps = {{conductor, orbit.sigma}};
  orbit.source = std::move(label);
  std::vector<u64> exps;
  for (u64 e : eta_exponents) exps.push_back(e % conductor);
  orbit.eta = CyclotomicInt::sum_of_powers(conductor, ring, exps);
  orbit.exponent_sets = {exps};
  complete_orbit(orbit);
  return orbit;
}

std::vector<OrbitFixture> parse_orbit_fixtures(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  std::vector<OrbitFixture> out;
  for (const auto& item : doc.at("orbits")) {
    OrbitFixture f;
    f.label = item.at("label").get<std::string>();
    f.n = item.at("n").get<u64>();
    f.conductor = item.at("conductor").get<u64>();
    f.sigma = item.at("sigma").get<u64>();
    f.eta = item.at("eta").get<std::vector<u64>>();
    f.gamma = item.value("gamma", std::string("2+1i"));
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<OrbitFixture> load_orbit_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open orbit fixture " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_orbit_fixtures(buffer.str());
}

const std::vector<OrbitFixture>& bundled_orbit_fixtures() {
  static const std::vector<OrbitFixture> fixtures = parse_orbit_fixtures(detail::kOrbitFixturesJson);
  return fixtures;
}

const OrbitFixture& bundled_orbit_fixture(u64 n) {
  for (const auto& f : bundled_orbit_fixtures()) {
    if (f.n == n) return f;
  }
  throw std::invalid_argument("no bundled reference orbit of length " + std::to_string(n));
}

PeriodOrbit orbit_from_fixture(const OrbitFixture& fixture, Ring ring) {
  return orbit_from_exponents(ring, fixture.conductor, fixture.sigma, fixture.eta, fixture.n, fixture.label);
}

PeriodOrbit permute(const PeriodOrbit& orbit, u64 P) {
  if (std::gcd(P, orbit.n) != 1) {
    throw std::invalid_argument("permute: P = " + std::to_string(P) + " is not coprime to n = " + std::to_string(orbit.n));
  }
  PeriodOrbit out = orbit;
  const u64 L = orbit.conductor;
  out.sigma = L == 1 ? 1 : arith::mod_pow(orbit.sigma, P, L);
  for (auto& [C, c] : out.generator_maps) c = C == 1 ? c : arith::mod_pow(c, P, C);
  for (u64 a = 0; a < orbit.n; ++a) {
    const u64 src = a * P % orbit.n;
    out.sigma_images[a] = orbit.sigma_images[src];
    out.exponent_sets[a] = orbit.exponent_sets[src];
    out.complex_orbit[a] = orbit.complex_orbit[src];
  }
  return out;
}

Vandermonde vandermonde(const PeriodOrbit& orbit, bool with_exact) {
  const auto n = static_cast<Eigen::Index>(orbit.n);
  Vandermonde v;
  v.numeric.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    std::complex<double> z = 1.0;
    for (Eigen::Index b = 0; b < n; ++b) {
      v.numeric(a, b) = z;
      z *= orbit.complex_orbit[static_cast<std::size_t>(a)];
    }
  }
  if (with_exact) {
    for (const auto& image : orbit.sigma_images) {
      std::vector<CyclotomicInt> row{CyclotomicInt::constant(orbit.conductor, QuadInt::one(orbit.ring))};
      for (u64 b = 1; b < orbit.n; ++b) row.push_back(row.back() * image);
      v.exact.push_back(std::move(row));
    }
  }
  return v;
}

}  // namespace nonnorm
