#include "nonnorm/serialize.hpp"

namespace nonnorm {

using arith::u64;
using nlohmann::json;

namespace {

constexpr u64 kExactDoubleBound = u64{1} << 53;

json field_element(const FieldElement& x, unsigned degree) {
  if (degree == 1) return json_integer(x.c0);
  return json::array({json_integer(x.c0), json_integer(x.c1)});
}

json quadint(const QuadInt& x) { return json::array({json_integer(x.a), json_integer(x.b)}); }

}  // namespace

json json_integer(std::int64_t v) {
  const u64 magnitude = v < 0 ? u64{0} - static_cast<u64>(v) : static_cast<u64>(v);
  if (magnitude <= kExactDoubleBound) return v;
  return std::to_string(v);
}

json json_integer(u64 v) {
  if (v <= kExactDoubleBound) return v;
  return std::to_string(v);
}

json with_schema(json doc) {
  json out = {{"schema", kSchema}};
  for (auto& [key, value] : doc.items()) out[key] = std::move(value);
  return out;
}

json to_json(const FactorCertificate& cert) {
  json j = {{"q", json_integer(cert.q)},
            {"k", cert.k},
            {"degree", json_integer(cert.degree())},
            {"M", json_integer(cert.M)},
            {"route", std::string(to_string(cert.route))}};
  if (const auto* a = std::get_if<RouteAWitness>(&cert.witness)) {
    const auto& h = a->subgroup;
    json sub = {{"modulus", json_integer(h.modulus)},
                {"index", json_integer(h.index)},
                {"order", json_integer(h.order)},
                {"generators", json::array()},
                {"contains_minus_one", h.contains_minus_one()}};
    for (u64 g : h.generators) sub["generators"].push_back(json_integer(g));
    if (h.order <= 64) {
      sub["elements"] = json::array();
      for (u64 x : h.elements()) sub["elements"].push_back(json_integer(x));
    }
    j["witness"] = {{"subgroup", sub}, {"coset_order", json_integer(a->coset_order)}};
  } else {
    const auto& b = std::get<RouteBWitness>(cert.witness);
    const unsigned degree = b.test == RouteBWitness::Test::rational ? 1 : b.residue_degree;
    j["witness"] = {{"p", json_integer(b.p)},
                    {"residue_degree", b.residue_degree},
                    {"embedding", std::string(to_string(b.embedding))},
                    {"test", b.test == RouteBWitness::Test::rational ? "rational" : "residue_field"},
                    {"residue", field_element(b.residue, degree)},
                    {"power", field_element(b.power, degree)}};
  }
  return j;
}

json to_json(const CandidateFailure& f) {
  static constexpr const char* kinds[] = {"no_subextension", "not_disjoint", "ramified", "residue_test",
                                          "coset_order"};
  return {{"q", json_integer(f.q)},
          {"k", f.k},
          {"M", json_integer(f.M)},
          {"route", std::string(to_string(f.route))},
          {"kind", kinds[static_cast<int>(f.kind)]},
          {"reason", f.reason}};
}

json to_json(const EntryReport& report) {
  json j = {{"base", std::string(to_string(report.base))},
            {"n", json_integer(report.n)},
            {"m", json_integer(report.m)},
            {"status", report.certified ? "certified" : "failed"},
            {"certificates", json::array()},
            {"failures", json::array()},
            {"reasons", report.reasons},
            {"unused_primes", json::array()}};
  for (const auto& c : report.certificates) j["certificates"].push_back(to_json(c));
  for (const auto& f : report.failures) j["failures"].push_back(to_json(f));
  for (u64 p : report.unused_primes) j["unused_primes"].push_back(json_integer(p));
  return j;
}

json to_json(const ExtensionPlan& plan) {
  json j = {{"base", std::string(to_string(plan.base))},
            {"n", json_integer(plan.n)},
            {"m", json_integer(plan.m)},
            {"routes", route_summary(plan.certificates)},
            {"certificates", json::array()},
            {"factor_fields", json::array()},
            {"search_trace", plan.search_trace}};
  for (const auto& c : plan.certificates) j["certificates"].push_back(to_json(c));
  for (const auto& f : plan.factor_fields) {
    json exps = json::array();
    for (u64 e : f.exponents) exps.push_back(json_integer(e));
    j["factor_fields"].push_back({{"prime", json_integer(f.prime)},
                                  {"conductor", json_integer(f.conductor)},
                                  {"degree", json_integer(f.degree)},
                                  {"generator", json_integer(f.generator)},
                                  {"period_exponents", exps}});
  }
  j["eta"] = plan.factor_fields.size() > 1 ? "sum-of-periods" : "period";
  return j;
}

json to_json(const PeriodOrbit& orbit) {
  json j = {{"base", std::string(to_string(orbit.ring))},
            {"n", json_integer(orbit.n)},
            {"conductor", json_integer(orbit.conductor)},
            {"sigma", json_integer(orbit.sigma)},
            {"source", orbit.source},
            {"eta_kind", orbit.composite ? "sum-of-periods" : "period"},
            {"generator_maps", json::array()},
            {"exponents", json::array()},
            {"coefficients", json::array()},
            {"values", json::array()}};
  for (const auto& [C, c] : orbit.generator_maps) {
    j["generator_maps"].push_back({{"conductor", json_integer(C)}, {"exponent", json_integer(c)}});
  }
  for (const auto& set : orbit.exponent_sets) {
    json row = json::array();
    for (u64 e : set) row.push_back(json_integer(e));
    j["exponents"].push_back(row);
  }
  for (const auto& image : orbit.sigma_images) {
    json row = json::array();
    for (const auto& c : image.coeffs()) row.push_back(quadint(c));
    j["coefficients"].push_back(row);
  }
  for (const auto& z : orbit.complex_orbit) j["values"].push_back({z.real(), z.imag()});
  return j;
}

json to_json(const MinDetResult& r) {
  json witness = json::array();
  for (const auto& row : r.witness) {
    json jr = json::array();
    for (const auto& x : row) jr.push_back(quadint(x));
    witness.push_back(jr);
  }
  return {{"min_det", json_integer(r.minimum)},
          {"witness", witness},
          {"evaluated", json_integer(r.evaluated)},
          {"zero_determinants", json_integer(r.zero_determinants)},
          {"fractional_values", json_integer(r.fractional_values)}};
}

json to_json(const CodeMetrics& m) {
  json j;
  if (m.energy.exact) {
    j["E"] = json_integer(*m.energy.exact);
  } else {
    j["E"] = m.energy.weighted;
  }
  j["xi"] = m.xi;
  j["n"] = json_integer(m.n);
  j["E_weighted"] = m.energy.weighted;
  j["E_frobenius"] = m.energy.frobenius;
  j["exact"] = m.energy.exact.has_value();
  if (m.min_det) j["min_det"] = to_json(*m.min_det);
  return j;
}

json to_json(const std::vector<TableRow>& rows, Ring base) {
  json j = {{"base", std::string(to_string(base))}, {"rows", json::array()}};
  for (const auto& r : rows) {
    json row = {{"n", json_integer(r.n)},
                {"modulus", r.m == 0 ? json(nullptr) : json_integer(r.m)},
                {"routes", r.routes},
                {"conformance", std::string(to_string(r.conformance))}};
    if (r.reference) row["reference"] = json_integer(*r.reference);
    if (!r.error.empty()) row["error"] = r.error;
    j["rows"].push_back(row);
  }
  return j;
}

json to_json(const DiversityReport& report) {
  json j = {{"n", json_integer(report.n)}, {"rows", json::array()}, {"note", report.note}};
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"label", r.label}, {"gamma", r.gamma}, {"E", r.energy}, {"xi", r.xi}, {"orbit", r.orbit}});
  }
  return j;
}

}  // namespace nonnorm
