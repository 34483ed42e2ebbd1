#include "riesz/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <gmp.h>
#include <mpfr.h>

#include "riesz/error.hpp"

namespace riesz::cli {

namespace {

using io::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json load_json(const std::string& path) { return io::parse_text(read_file(path), path); }

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(ErrorKind::InvalidInput, "empty item in list '" + text + "'");
    out.push_back(item.substr(first, last - first + 1));
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, "empty list");
  return out;
}

std::vector<std::int64_t> int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& item : split_csv(text)) out.push_back(parse_count(item));
  return out;
}

Json rational_list(const std::string& text) {
  Json out = Json::array();
  for (const auto& item : split_csv(text)) out.push_back(Endpoint::parse_rational(item).get_str());
  return out;
}

std::vector<mpq_class> rationals(const Json& list) {
  std::vector<mpq_class> out;
  for (const auto& item : list) out.push_back(Endpoint::parse_rational(item.get<std::string>()));
  return out;
}

int resolve_precision(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("RS_PRECISION_BITS")) {
    try {
      return static_cast<int>(parse_count(env));
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidInput, std::string("RS_PRECISION_BITS is not an integer: ") + env);
    }
  }
  return 200;
}

std::pair<std::vector<Endpoint>, std::vector<Endpoint>> endpoints_of(const IntervalSet& s) {
  std::vector<Endpoint> a;
  std::vector<Endpoint> b;
  for (const auto& iv : s) {
    a.push_back(iv.left);
    b.push_back(iv.right);
  }
  return {a, b};
}

bool is_construction_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound:
    case ErrorKind::IndependenceSuspect:
    case ErrorKind::DegenerateBeta:
    case ErrorKind::DegenerateCoverage:
    case ErrorKind::UnsupportedASet:
    case ErrorKind::PatternMismatch:
    case ErrorKind::OverlappingTerms:
    case ErrorKind::LevelNotInNZ:
      return true;
    default:
      return false;
  }
}

Json provenance(const Job& job) {
  std::ostringstream eigen;
  eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
  return {{"version", RIESZ_VERSION},
          {"eigen", eigen.str()},
          {"gmp", gmp_version},
          {"mpfr", mpfr_get_version()},
          {"precision_bits", job.options.at("precision_bits")}};
}

Json make_report(const Job& job, const std::string& status, Json result) {
  return {{"schema", io::kSchema},
          {"command", job.command},
          {"status", status},
          {"config", {{"command", job.command}, {"options", job.options}, {"inputs", job.inputs}}},
          {"provenance", provenance(job)},
          {"result", std::move(result)}};
}

const Json& opt(const Job& job, const char* key) {
  if (!job.options.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing option '") + key + "'");
  return job.options.at(key);
}

const Json& input(const Job& job, const char* key) {
  if (!job.inputs.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing input '") + key + "'");
  return job.inputs.at(key);
}

// Picks a spectrum out of a spectrum file or a complement report.
Json select_spectrum(const Json& doc, const std::string& pointer) {
  if (!pointer.empty()) {
    const Json::json_pointer ptr(pointer);
    if (!doc.contains(ptr)) throw Error(ErrorKind::InvalidInput, "no spectrum at " + pointer);
    return doc.at(ptr);
  }
  if (doc.is_object() && doc.contains("terms")) return doc;
  const Json::json_pointer fallback("/result/lambda_prime");
  if (doc.contains(fallback)) return doc.at(fallback);
  throw Error(ErrorKind::InvalidInput, "file holds no spectrum");
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t L) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t size = 1; size <= L; ++size) {
    std::vector<bool> pick(L, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::size_t> J;
      for (std::size_t l = 0; l < L; ++l) {
        if (pick[l]) J.push_back(l + 1);
      }
      out.push_back(J);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

std::string subset_label(const std::vector<std::size_t>& J) {
  std::string out = "{";
  for (std::size_t i = 0; i < J.size(); ++i) out += (i ? "," : "") + std::to_string(J[i]);
  return out + "}";
}

TrendOptions trend_options(const Job& job) {
  TrendOptions t;
  t.pass_floor = opt(job, "pass_floor").get<double>();
  t.fail_floor = opt(job, "fail_floor").get<double>();
  t.max_drop = opt(job, "max_drop").get<double>();
  return t;
}

// ----------------------------------------------------------------- handlers

Outcome find_prime(const Job& job, std::ostream&) {
  const auto [a, b] = endpoints_of(io::interval_set_from_json(input(job, "intervals")));
  PrimeSearchOptions o;
  o.occurrence = opt(job, "occurrence").get<int>();
  o.relation_max_coeff = opt(job, "relation_max_coeff").get<long>();
  const auto r = find_ordering_prime(a, b, opt(job, "prime_limit").get<std::int64_t>(), o);
  return {kPass, make_report(job, "PASS", io::to_json(r))};
}

Outcome construct_hierarchy(const Job& job, std::ostream&) {
  const auto [a, b] = endpoints_of(io::interval_set_from_json(input(job, "intervals")));
  Theorem1Plan plan;
  if (job.options.contains("N") && !job.options.at("N").is_null()) {
    plan = theorem1_construct_at(job.options.at("N").get<std::int64_t>(), a, b);
  } else {
    Theorem1Options o;
    o.search.occurrence = opt(job, "occurrence").get<int>();
    o.search.relation_max_coeff = opt(job, "relation_max_coeff").get<long>();
    plan = theorem1_construct(a, b, opt(job, "prime_limit").get<std::int64_t>(), o);
  }
  Json result = io::to_json(plan);
  Json density = Json::array();
  for (std::size_t l = 0; l < plan.L(); ++l) density.push_back(io::real_to_string(plan.lambda_ell[l].density()));
  result["lambda_ell_density"] = density;
  return {kPass, make_report(job, "PASS", {{"plan", result}})};
}

Outcome complement(const Job& job, std::ostream&) {
  const auto [a, b] = endpoints_of(io::interval_set_from_json(input(job, "intervals")));
  const std::int64_t N = opt(job, "N").get<std::int64_t>();
  const auto r = theorem2_complement(N, a, b, opt(job, "prime_limit").get<std::int64_t>());
  Json result = io::to_json(r);
  result["extended_set"] = io::to_json(r.S.scaled(mpq_class(N)));
  result["lambda_with_integers"] = io::to_json(unite(Spectrum::coset(1, 0), r.lambda_prime));
  return {kPass, make_report(job, "PASS", result)};
}

Outcome bounds(const Job& job, std::ostream&) {
  const Spectrum spectrum = io::spectrum_from_json(input(job, "spectrum"));
  const IntervalSet S = io::interval_set_from_json(input(job, "set"));
  const auto report = riesz_bounds_estimate(spectrum, S, rationals(opt(job, "schedule")), trend_options(job));
  const bool pass = report.status == TrendStatus::Pass;
  return {pass ? kPass : kFail, make_report(job, pass ? "PASS" : "FAIL", io::to_json(report))};
}

Outcome verify(const Job& job, std::ostream& log) {
  const Theorem1Plan plan = io::plan_from_json(input(job, "plan"));
  const auto windows = rationals(opt(job, "schedule"));
  const double tolerance = opt(job, "density_tolerance").get<double>();
  std::vector<std::vector<std::size_t>> subsets;
  if (opt(job, "all_subsets").get<bool>()) {
    subsets = all_subsets(plan.L());
  } else if (job.options.contains("subsets") && !job.options.at("subsets").is_null()) {
    subsets = job.options.at("subsets").get<std::vector<std::vector<std::size_t>>>();
  } else {
    subsets = {all_subsets(plan.L()).back()};
  }

  // Disjointness of the Lambda_l and agreement with the level-wise union.
  const mpq_class& top = windows.back();
  Spectrum joint;
  for (const auto& s : plan.lambda_ell) joint = unite(joint, s);
  const auto joint_idx = joint.enumerate(top).indices;
  const auto level_idx = lemma2_combine(plan.N, plan.all_levels(), 1).enumerate(top).indices;
  const bool ledger_ok = joint_idx == level_idx;

  Json rows = Json::array();
  bool all_pass = ledger_ok;
  log << std::left << std::setw(10) << "J" << std::setw(8) << "count" << std::setw(14) << "lower" << std::setw(14)
      << "upper" << std::setw(10) << "drop" << std::setw(10) << "density" << "status\n";
  for (const auto& J : subsets) {
    const SubsetPlan sp = subset_spectrum(plan, J);
    const auto density = density_check(sp.lambda_J, sp.S_J, windows, tolerance);
    const auto gram = riesz_bounds_estimate(sp.lambda_J, sp.S_J, windows, trend_options(job));
    const bool pass = density.pass && gram.status == TrendStatus::Pass;
    all_pass = all_pass && pass;
    rows.push_back({{"J", J},
                    {"status", pass ? "PASS" : "FAIL"},
                    {"subset", io::to_json(sp)},
                    {"density", io::to_json(density)},
                    {"bounds", io::to_json(gram)}});
    std::ostringstream drop;
    if (gram.last_drop) drop << std::setprecision(3) << *gram.last_drop;
    log << std::left << std::setw(10) << subset_label(J) << std::setw(8) << gram.count << std::setw(14)
        << std::setprecision(6) << gram.lower_est << std::setw(14) << gram.upper_est << std::setw(10) << drop.str()
        << std::setw(10) << (density.pass ? "ok" : "FAIL") << (pass ? "PASS" : "FAIL") << "\n";
  }
  Json result = {{"N", plan.N}, {"level_union_matches", ledger_ok}, {"rows", rows}};
  return {all_pass ? kPass : kFail, make_report(job, all_pass ? "PASS" : "FAIL", result)};
}

Outcome check_chebotarev(const Job& job, std::ostream&) {
  const auto r = chebotarev_check(opt(job, "N").get<std::int64_t>(), opt(job, "max_size").get<std::int64_t>(),
                                  opt(job, "budget").get<std::int64_t>());
  const bool pass = r.worst_sigma > opt(job, "min_sigma").get<double>();
  return {pass ? kPass : kFail, make_report(job, pass ? "PASS" : "FAIL", io::to_json(r))};
}

Outcome probe_folding(const Job& job, std::ostream&) {
  const Theorem1Plan plan = io::plan_from_json(input(job, "plan"));
  std::vector<std::int64_t> perm;
  if (job.options.contains("permutation") && !job.options.at("permutation").is_null()) {
    perm = job.options.at("permutation").get<std::vector<std::int64_t>>();
  } else {
    for (std::int64_t n = 1; n <= plan.N; ++n) perm.push_back(n);
  }
  FoldingOptions o;
  o.trials = opt(job, "trials").get<std::int64_t>();
  o.seed = opt(job, "seed").get<std::uint64_t>();
  o.window = opt(job, "window").get<std::int64_t>();
  const auto r = folding_probe(plan.N, plan.S, plan.all_levels(), perm, o);
  const bool pass = r.empirical_c > 0.0 && !r.truncation_warning;
  Json result = io::to_json(r);
  result["permutation"] = perm;
  return {pass ? kPass : kFail, make_report(job, pass ? "PASS" : "FAIL", result)};
}

Outcome equidist(const Job& job, std::ostream&) {
  std::vector<Endpoint> values;
  for (const auto& v : opt(job, "values")) values.push_back(io::real_from_string(v.get<std::string>()));
  const auto limit = opt(job, "prime_limit").get<std::int64_t>();
  const double disc = weyl_discrepancy(values, limit, opt(job, "boxes").get<int>());
  Json fractions = Json::array();
  for (const auto& v : values) fractions.push_back(prime_fraction_in(v, limit, 0.0, 0.5));
  return {kPass, make_report(job, "PASS", {{"discrepancy", disc}, {"fraction_below_half", fractions},
                                           {"prime_count", primes_up_to(limit).size()}})};
}

void add_common(CLI::App* sub, int& precision, std::string& out_path) {
  sub->add_option("--precision-bits", precision, "Working precision in bits (default: RS_PRECISION_BITS or 200)");
  sub->add_option("--out", out_path, "Write the report here instead of stdout");
}

}  // namespace

std::int64_t parse_count(const std::string& text) {
  auto as_int = [&](const std::string& s) -> std::int64_t {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::InvalidInput, "not an integer: '" + text + "'");
    return v;
  };
  for (const char sep : {'^', 'e', 'E'}) {
    const auto pos = text.find(sep);
    if (pos == std::string::npos) continue;
    const std::int64_t mantissa = as_int(text.substr(0, pos));
    const std::int64_t exponent = as_int(text.substr(pos + 1));
    const std::int64_t base = sep == '^' ? mantissa : 10;
    std::int64_t value = sep == '^' ? 1 : mantissa;
    if (exponent < 0 || exponent > 62) throw Error(ErrorKind::InvalidInput, "exponent out of range in '" + text + "'");
    for (std::int64_t i = 0; i < exponent; ++i) {
      if (__builtin_mul_overflow(value, base, &value)) throw Error(ErrorKind::InvalidInput, "integer overflow: " + text);
    }
    return value;
  }
  return as_int(text);
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    if (err->kind() == ErrorKind::ResourceLimit) return kResourceLimit;
    if (is_construction_failure(err->kind())) return kFail;
  }
  return kInputError;
}

Outcome execute(const Job& job, std::ostream& log) {
  set_working_precision_bits(opt(job, "precision_bits").get<int>());
  using Handler = Outcome (*)(const Job&, std::ostream&);
  static const std::map<std::string, Handler> handlers = {
      {"find-prime", find_prime},         {"construct-hierarchy", construct_hierarchy},
      {"complement", complement},         {"bounds", bounds},
      {"verify", verify},                 {"check-chebotarev", check_chebotarev},
      {"probe-folding", probe_folding},   {"equidist", equidist},
  };
  const auto it = handlers.find(job.command);
  if (it == handlers.end()) throw Error(ErrorKind::InvalidInput, "unknown command '" + job.command + "'");
  try {
    return it->second(job, log);
  } catch (const Error& e) {
    if (!is_construction_failure(e.kind())) throw;
    Json error = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    return {kFail, make_report(job, "FAIL", {{"error", error}})};
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential Riesz spectra for finite unions of intervals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RIESZ_VERSION);

  int precision = 0;
  std::string out_path;
  std::string intervals, spectrum, set, plan, report_path, pointer;
  std::string prime_limit = "10^6", schedule, permutation, values, subsets_text;
  std::int64_t N = 0, max_size = 0, trials = 200, window = 4096, budget = kDefaultMinorBudget;
  std::uint64_t seed = 42;
  int occurrence = 1, boxes = 32;
  long relation_max_coeff = 10;
  double pass_floor = 1e-3, fail_floor = 1e-4, max_drop = 0.10, density_tolerance = 4.0, min_sigma = 1e-8;
  bool all_subsets_flag = false;

  auto* fp = app.add_subcommand("find-prime", "Smallest admissible prime for the given intervals");
  fp->add_option("--intervals", intervals, "IntervalSet JSON")->required()->check(CLI::ExistingFile);
  fp->add_option("--prime-limit", prime_limit, "Largest prime to scan (accepts 10^6)");
  fp->add_option("--occurrence", occurrence, "Return the k-th admissible prime");
  fp->add_option("--relation-max-coeff", relation_max_coeff, "Relation probe coefficient bound (0 disables)");

  auto* ch = app.add_subcommand("construct-hierarchy", "Hierarchical spectra for a union of intervals");
  ch->add_option("--intervals", intervals, "IntervalSet JSON")->required()->check(CLI::ExistingFile);
  ch->add_option("--prime-limit", prime_limit, "Largest prime to scan (accepts 10^6)");
  ch->add_option("--occurrence", occurrence, "Use the k-th admissible prime");
  ch->add_option("--relation-max-coeff", relation_max_coeff, "Relation probe coefficient bound (0 disables)");
  ch->add_option("--N", N, "Use this prime instead of searching");

  auto* co = app.add_subcommand("complement", "Extend Z by frequencies in (1/N)Z \\ Z");
  co->add_option("--N", N, "Dilation factor")->required();
  co->add_option("--intervals", intervals, "IntervalSet JSON with endpoints in [1, N]")->required()->check(CLI::ExistingFile);
  co->add_option("--prime-limit", prime_limit, "Prime limit for inner constructions");

  auto* bo = app.add_subcommand("bounds", "Finite-section Riesz bound estimates");
  bo->add_option("--spectrum", spectrum, "Spectrum JSON (or a complement report)")->required()->check(CLI::ExistingFile);
  bo->add_option("--pointer", pointer, "JSON pointer selecting the spectrum inside the file");
  bo->add_option("--set", set, "IntervalSet JSON")->required()->check(CLI::ExistingFile);
  bo->add_option("--schedule", schedule, "Comma-separated windows T");

  auto* ve = app.add_subcommand("verify", "Density and bound checks for subsets of a plan");
  ve->add_option("--plan", plan, "Plan or construct-hierarchy report")->required()->check(CLI::ExistingFile);
  ve->add_flag("--all-subsets", all_subsets_flag, "Check every nonempty subset J");
  ve->add_option("--subsets", subsets_text, "Subsets as '1;2;1,2'");
  ve->add_option("--schedule", schedule, "Comma-separated windows T");

  auto* cc = app.add_subcommand("check-chebotarev", "Smallest singular value over DFT minors");
  cc->add_option("--N", N, "Prime order")->required();
  cc->add_option("--max-size", max_size, "Largest minor size")->required();
  cc->add_option("--budget", budget, "Enumeration budget");
  cc->add_option("--min-sigma", min_sigma, "Pass threshold");

  auto* pf = app.add_subcommand("probe-folding", "Empirical folding-inequality constants");
  pf->add_option("--plan", plan, "Plan or construct-hierarchy report")->required()->check(CLI::ExistingFile);
  pf->add_option("--trials", trials, "Random test functions");
  pf->add_option("--seed", seed, "Generator seed");
  pf->add_option("--window", window, "Coefficient window |k| <= W");
  pf->add_option("--permutation", permutation, "Shift factors j_1..j_N (default identity)");

  auto* eq = app.add_subcommand("equidist", "Equidistribution of {p a} along primes");
  eq->add_option("--values", values, "Comma-separated reals ('p/q' or decimal strings)")->required();
  eq->add_option("--prime-limit", prime_limit, "Largest prime (accepts 10^5)");
  eq->add_option("--boxes", boxes, "Box grid resolution per axis");

  auto* rp = app.add_subcommand("replay", "Re-run the job echoed in a report");
  rp->add_option("--report", report_path, "Report JSON")->required()->check(CLI::ExistingFile);

  for (auto* sub : {fp, ch, co, bo, ve, cc, pf, eq}) add_common(sub, precision, out_path);
  rp->add_option("--out", out_path, "Write the report here instead of stdout");
  for (auto* sub : {bo, ve}) {
    sub->add_option("--pass-floor", pass_floor, "Lower-bound floor for PASS");
    sub->add_option("--fail-floor", fail_floor, "Lower-bound floor for FAIL_TREND");
    sub->add_option("--max-drop", max_drop, "Largest relative drop over the last doubling");
  }
  ve->add_option("--density-tolerance", density_tolerance, "Largest |r(T)| accepted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    Job job;
    if (rp->parsed()) {
      const Json report = load_json(report_path);
      if (!report.contains("config")) throw Error(ErrorKind::InvalidInput, "report has no echoed config");
      const Json& config = report.at("config");
      job.command = config.at("command").get<std::string>();
      job.options = config.at("options");
      job.inputs = config.at("inputs");
    } else {
      CLI::App* sub = app.get_subcommands().front();
      job.command = sub->get_name();
      job.options["precision_bits"] = resolve_precision(precision);
      set_working_precision_bits(job.options["precision_bits"].get<int>());
      const std::string default_schedule = sub == bo ? "256,512,1024,2048" : "512,1024,2048";
      if (sub == fp || sub == ch || sub == co) {
        job.inputs["intervals"] = load_json(intervals);
        job.options["prime_limit"] = parse_count(prime_limit);
      }
      if (sub == fp || sub == ch) {
        job.options["occurrence"] = occurrence;
        job.options["relation_max_coeff"] = relation_max_coeff;
      }
      if (sub == ch) job.options["N"] = N > 0 ? Json(N) : Json(nullptr);
      if (sub == co) job.options["N"] = N;
      if (sub == bo || sub == ve) {
        job.options["schedule"] = rational_list(schedule.empty() ? default_schedule : schedule);
        job.options["pass_floor"] = pass_floor;
        job.options["fail_floor"] = fail_floor;
        job.options["max_drop"] = max_drop;
      }
      if (sub == bo) {
        job.inputs["spectrum"] = select_spectrum(load_json(spectrum), pointer);
        job.inputs["set"] = load_json(set);
      }
      if (sub == ve || sub == pf) job.inputs["plan"] = load_json(plan);
      if (sub == ve) {
        job.options["all_subsets"] = all_subsets_flag;
        job.options["density_tolerance"] = density_tolerance;
        if (!subsets_text.empty()) {
          Json list = Json::array();
          std::istringstream in(subsets_text);
          std::string item;
          while (std::getline(in, item, ';')) list.push_back(int_list(item));
          job.options["subsets"] = list;
        }
      }
      if (sub == cc) {
        job.options["N"] = N;
        job.options["max_size"] = max_size;
        job.options["budget"] = budget;
        job.options["min_sigma"] = min_sigma;
      }
      if (sub == pf) {
        job.options["trials"] = trials;
        job.options["seed"] = seed;
        job.options["window"] = window;
        job.options["permutation"] = permutation.empty() ? Json(nullptr) : Json(int_list(permutation));
      }
      if (sub == eq) {
        Json list = Json::array();
        for (const auto& v : split_csv(values)) list.push_back(v);
        job.options["values"] = list;
        job.options["prime_limit"] = parse_count(prime_limit == "10^6" ? "10^5" : prime_limit);
        job.options["boxes"] = boxes;
      }
    }
    const Outcome outcome = execute(job, err);
    const std::string text = outcome.report.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + out_path);
      file << text;
    }
    return outcome.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace riesz::cli
