#include "cli.hpp"

#include <CLI11.hpp>

#include <sstream>

#include "nonnorm/construct.hpp"
#include "nonnorm/periods.hpp"
#include "nonnorm/serialize.hpp"
#include "nonnorm/stbc.hpp"
#include "nonnorm/verify.hpp"

namespace nonnorm::cli {

using arith::u64;
using nlohmann::json;

namespace {

struct Options {
  std::string base = "gaussian";
  u64 n = 0;
  u64 m = 0;
  u64 limit = 0;
  bool json_flag = false;
  bool csv = false;
  u64 from = 2;
  u64 to = 2;
  std::string conformance;
  std::string gamma;
  bool exact = false;
  u64 permute = 1;
  unsigned radius = 0;
  bool reference_orbit = false;
};

std::string dump(const json& doc) { return doc.dump() + "\n"; }

CommandResult ok(const json& doc) { return {0, dump(with_schema(doc)), {}}; }

CommandResult negative(json doc, const std::vector<std::string>& reasons) {
  doc["reasons"] = reasons;
  return {1, dump(with_schema(doc)), {}};
}

u64 effective_limit(const Options& o) { return o.limit != 0 ? o.limit : search_limit_from_env(); }

QuadInt parse_gamma(const std::string& text, Ring ring) {
  if (text.empty()) return BaseField::of(ring).gamma;
  return parse_quadint(text, ring);
}

PeriodOrbit orbit_for(const Options& o, Ring ring) {
  PeriodOrbit orbit = o.reference_orbit ? orbit_from_fixture(bundled_orbit_fixture(o.n), ring)
                                        : galois_orbit(plan_extension(ring, o.n, o.m));
  if (o.permute != 1) orbit = permute(orbit, o.permute);
  return orbit;
}

CommandResult cmd_construct(const Options& o) {
  const Ring ring = parse_ring(o.base);
  try {
    return ok(to_json(find_modulus(ring, o.n, effective_limit(o))));
  } catch (const SearchExhausted& e) {
    std::vector<std::string> reasons{e.what()};
    reasons.insert(reasons.end(), e.trace().begin(), e.trace().end());
    return negative({{"base", o.base}, {"n", json_integer(o.n)}, {"status", "exhausted"}}, reasons);
  }
}

CommandResult cmd_verify(const Options& o) {
  const EntryReport report = verify_entry(BaseField::of(parse_ring(o.base)), o.n, o.m);
  if (report.certified) return ok(to_json(report));
  return negative(to_json(report), report.reasons);
}

CommandResult cmd_table(const Options& o, bool conformance_given) {
  const Ring ring = parse_ring(o.base);
  ReferenceTable loaded;
  const ReferenceTable* reference = &ReferenceTable::bundled();
  if (conformance_given && !o.conformance.empty()) {
    loaded = ReferenceTable::load(o.conformance);
    reference = &loaded;
  }
  const auto rows = generate_table(ring, o.from, o.to, reference, effective_limit(o));
  if (o.json_flag) return ok(to_json(rows, ring));
  return {0, table_csv(rows), {}};
}

CommandResult cmd_orbit(const Options& o) {
  const Ring ring = parse_ring(o.base);
  return ok(to_json(orbit_for(o, ring)));
}

CommandResult cmd_metrics(const Options& o) {
  const Ring ring = parse_ring(o.base);
  CodeSpec spec = make_code_spec(orbit_for(o, ring), parse_gamma(o.gamma, ring));
  CodeMetrics metrics = code_metrics(spec);
  if (!o.exact) metrics.energy.exact.reset();
  if (!o.exact) metrics.xi = "1/" + format_energy(metrics.energy) + "^" + std::to_string(metrics.n);
  json doc = to_json(metrics);
  if (o.permute != 1) doc["permute"] = json_integer(o.permute);
  return ok(doc);
}

CommandResult cmd_mindet(const Options& o) {
  const Ring ring = parse_ring(o.base);
  CodeSpec spec = make_code_spec(orbit_for(o, ring), parse_gamma(o.gamma, ring));
  const MinDetResult r = min_det_bruteforce(spec, o.radius);
  json doc = to_json(r);
  doc["radius"] = o.radius;
  if (r.zero_determinants > 0 || r.fractional_values > 0) {
    return negative(doc, {"nonzero symbol matrices with |det|^2 outside the positive integers were found"});
  }
  return ok(doc);
}

CommandResult cmd_diversity(const Options& o) {
  const Ring ring = Ring::gaussian;
  const u64 m = o.m != 0 ? o.m : 17;
  const PeriodOrbit orbit = galois_orbit(plan_extension(ring, o.n, m));
  std::vector<CodeSpec> specs{make_code_spec(orbit, one_plus_i(), "period-1+1i"),
                              make_code_spec(orbit, QuadInt{2, 1, ring}, "period-2+1i")};
  for (const auto& f : bundled_orbit_fixtures()) {
    if (f.n == o.n) specs.push_back(make_code_spec(orbit_from_fixture(f, ring), parse_quadint(f.gamma, ring), "reference-orbit"));
  }
  const DiversityReport report = diversity_report(specs);
  if (o.csv) return {0, diversity_csv(report), {}};
  return ok(to_json(report));
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Cyclic extensions with certified non-norm elements and the space-time codes built on them",
               "nonnorm"};
  app.require_subcommand(1);
  Options o;

  auto add_base = [&](CLI::App* sub) {
    sub->add_option("--base", o.base, "gaussian or eisenstein")->check(CLI::IsMember({"gaussian", "eisenstein"}));
  };
  auto add_n = [&](CLI::App* sub) { sub->add_option("-n", o.n, "extension degree")->required()->check(CLI::PositiveNumber); };
  auto add_m = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-m", o.m, "cyclotomic modulus");
    if (required) opt->required();
  };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json_flag, "JSON output (the default)"); };

  auto* construct = app.add_subcommand("construct", "smallest certified modulus for degree n");
  add_base(construct);
  add_n(construct);
  construct->add_option("--limit", o.limit, "search limit (default NONNORM_SEARCH_LIMIT or 10^6)");
  add_json(construct);

  auto* verify = app.add_subcommand("verify", "certify the degree-n subextension of Q(zeta_m, base)");
  add_base(verify);
  add_n(verify);
  add_m(verify, true);
  add_json(verify);

  auto* table = app.add_subcommand("table", "regenerate the modulus table for a range of n");
  add_base(table);
  table->add_option("--from", o.from, "first n")->required();
  table->add_option("--to", o.to, "last n")->required();
  auto* csv_flag = table->add_flag("--csv", o.csv, "CSV output (the default)");
  auto* json_flag = table->add_flag("--json", o.json_flag, "JSON output");
  csv_flag->excludes(json_flag);
  auto* conformance = table->add_option("--conformance", o.conformance,
                                        "reference CSV (base,n,modulus); the bundled tables when no file is given")
                          ->expected(0, 1);
  table->add_option("--limit", o.limit, "search limit");

  auto* orbit = app.add_subcommand("orbit", "Galois orbit of the period attached to (n, m)");
  add_base(orbit);
  add_n(orbit);
  add_m(orbit, false);
  orbit->add_flag("--reference-orbit", o.reference_orbit, "use the bundled reference orbit of length n");
  orbit->add_option("--permute", o.permute, "list the orbit under sigma^P");
  add_json(orbit);

  auto* metrics = app.add_subcommand("metrics", "energy and normalized diversity product");
  add_base(metrics);
  add_n(metrics);
  add_m(metrics, false);
  metrics->add_option("--gamma", o.gamma, "1+1i, 2+1i, sqrt-3, ... (default: the certified element)");
  metrics->add_flag("--exact", o.exact, "exact integer energy when every conjugate is a root of unity");
  metrics->add_option("--permute", o.permute, "order rows by (sigma^P)^a, gcd(P, n) = 1");
  metrics->add_flag("--reference-orbit", o.reference_orbit, "use the bundled reference orbit of length n");
  add_json(metrics);

  auto* mindet = app.add_subcommand("mindet", "exhaustive minimum determinant over a symbol box");
  add_base(mindet);
  add_n(mindet);
  add_m(mindet, true);
  mindet->add_option("--gamma", o.gamma, "non-norm element (default: the certified element)");
  mindet->add_option("--radius", o.radius, "box radius for real and imaginary parts")->required();
  add_json(mindet);

  auto* diversity = app.add_subcommand("diversity", "compare codes of equal n by normalized diversity product");
  add_n(diversity);
  add_m(diversity, false);
  diversity->add_flag("--csv", o.csv, "CSV output");

  std::vector<std::string> argv_storage{"nonnorm"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return {0, out.str(), err.str()};
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return {2, out.str(), err.str()};
  }

  if ((o.reference_orbit == false) && (orbit->parsed() || metrics->parsed()) && o.m == 0) {
    return {2, {}, "-m is required unless --reference-orbit is given\n"};
  }

  try {
    if (construct->parsed()) return cmd_construct(o);
    if (verify->parsed()) return cmd_verify(o);
    if (table->parsed()) return cmd_table(o, conformance->count() > 0);
    if (orbit->parsed()) return cmd_orbit(o);
    if (metrics->parsed()) return cmd_metrics(o);
    if (mindet->parsed()) return cmd_mindet(o);
    if (diversity->parsed()) return cmd_diversity(o);
  } catch (const UncertifiedError& e) {
    return negative(to_json(e.report()), e.report().reasons);
  } catch (const std::exception& e) {
    return {2, {}, std::string("error: ") + e.what() + "\n"};
  }
  return {2, {}, app.help()};
}

}  // namespace nonnorm::cli
