#include "riesz/json_io.hpp"

#include <cmath>

#include "riesz/error.hpp"

namespace riesz::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

template <class T, class F>
std::vector<T> array_field(const Json& j, const char* key, F&& convert) {
  const Json& v = field(j, key);
  if (!v.is_array()) bad(std::string("field '") + key + "' must be an array");
  std::vector<T> out;
  for (const auto& item : v) out.push_back(convert(item));
  return out;
}

}  // namespace

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json to_json(const Endpoint& e) {
  Json j;
  j["rat"] = e.rational_part().get_str();
  j["irr"] = e.irrational_part() ? Json(e.irrational_part()->to_string()) : Json(nullptr);
  return j;
}

Endpoint endpoint_from_json(const Json& j, int precision_bits) {
  if (j.is_string()) return real_from_string(j.get<std::string>(), precision_bits);
  const std::string rat = string_field(j, "rat");
  if (!j.contains("irr") || j.at("irr").is_null()) return Endpoint::parse(rat, std::nullopt, precision_bits);
  const std::string irr = string_field(j, "irr");
  return Endpoint::parse(rat, irr, precision_bits);
}

std::string real_to_string(const Endpoint& e) {
  if (e.is_rational()) return e.rational_part().get_str();
  return e.value(e.precision()).to_string();
}

Endpoint real_from_string(const std::string& text, int precision_bits) {
  const bool integer = !text.empty() && text.find_first_not_of("+-0123456789") == std::string::npos;
  if (integer || text.find('/') != std::string::npos) return Endpoint(Endpoint::parse_rational(text));
  return Endpoint::from_decimal(text, precision_bits);
}

Json to_json(const IntervalSet& s) {
  Json list = Json::array();
  for (const auto& iv : s) list.push_back({{"left", to_json(iv.left)}, {"right", to_json(iv.right)}});
  return {{"intervals", list}};
}

IntervalSet interval_set_from_json(const Json& j, int precision_bits) {
  auto pieces = array_field<Interval>(j, "intervals", [&](const Json& item) {
    return Interval{endpoint_from_json(field(item, "left"), precision_bits),
                    endpoint_from_json(field(item, "right"), precision_bits)};
  });
  return IntervalSet(std::move(pieces));
}

Json to_json(const Spectrum& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) {
    Json term;
    term["modulus"] = t.modulus;
    term["offset"] = t.offset;
    if (const auto* f = std::get_if<AvdoninFilter>(&t.filter)) {
      term["filter"] = {{"avdonin", {{"beta", real_to_string(f->beta)}, {"phase", f->phase}}}};
    } else {
      term["filter"] = "all";
    }
    terms.push_back(term);
  }
  return {{"scale", s.scale().get_str()}, {"terms", terms}};
}

Spectrum spectrum_from_json(const Json& j, int precision_bits) {
  const mpq_class scale = Endpoint::parse_rational(string_field(j, "scale"));
  auto terms = array_field<CosetTerm>(j, "terms", [&](const Json& item) {
    CosetTerm t;
    t.modulus = int_field(item, "modulus");
    t.offset = int_field(item, "offset");
    const Json& f = field(item, "filter");
    if (f.is_string() && f.get<std::string>() == "all") {
      t.filter = AllFilter{};
    } else if (f.is_object() && f.contains("avdonin")) {
      const Json& a = f.at("avdonin");
      t.filter = AvdoninFilter{real_from_string(string_field(a, "beta"), precision_bits), int_field(a, "phase")};
    } else {
      bad("unknown coset filter");
    }
    return t;
  });
  return Spectrum(scale, std::move(terms));
}

Json to_json(const FrequencyList& f) {
  return {{"scale", f.scale.get_str()}, {"indices", f.indices}};
}

Json to_json(const PrimeSearchResult& r) {
  Json witness = Json::array();
  for (const auto& w : r.ordering_witness) witness.push_back(to_json(w));
  Json approx = Json::array();
  for (const auto& w : r.ordering_witness) approx.push_back(w.to_double());
  return {{"N", r.N}, {"candidates_scanned", r.candidates_scanned}, {"ordering_witness", witness},
          {"ordering_witness_approx", approx}};
}

PrimeSearchResult prime_search_from_json(const Json& j, int precision_bits) {
  PrimeSearchResult r;
  r.N = int_field(j, "N");
  r.candidates_scanned = int_field(j, "candidates_scanned");
  r.ordering_witness = array_field<Endpoint>(j, "ordering_witness",
                                             [&](const Json& e) { return endpoint_from_json(e, precision_bits); });
  return r;
}

Json to_json(const Theorem1Plan& plan) {
  Json j;
  j["N"] = plan.N;
  Json a = Json::array();
  Json b = Json::array();
  for (std::size_t l = 0; l < plan.L(); ++l) {
    a.push_back(to_json(plan.a[l]));
    b.push_back(to_json(plan.b[l]));
  }
  j["a"] = a;
  j["b"] = b;
  j["S"] = to_json(plan.S);
  j["K_ell"] = plan.K_ell;
  j["K"] = plan.K;
  Json beta = Json::array();
  for (const auto& x : plan.beta) beta.push_back(real_to_string(x));
  j["beta"] = beta;
  Json levels = Json::array();
  for (const auto& level : plan.levels) {
    levels.push_back({{"n", level.n},
                      {"a_geq", to_json(level.a_geq)},
                      {"lambda", to_json(level.lambda)},
                      {"interval", level.interval ? Json(*level.interval) : Json(nullptr)}});
  }
  j["levels"] = levels;
  Json lambdas = Json::array();
  for (const auto& s : plan.lambda_ell) lambdas.push_back(to_json(s));
  j["lambda_ell"] = lambdas;
  j["search"] = plan.search ? to_json(*plan.search) : Json(nullptr);
  return j;
}

Theorem1Plan plan_from_json(const Json& j, int precision_bits) {
  const Json* wrapper = &j;
  if (j.contains("result") && j.at("result").is_object()) wrapper = &j.at("result");
  const Json& p = wrapper->contains("plan") ? wrapper->at("plan") : *wrapper;
  Theorem1Plan plan;
  plan.N = int_field(p, "N");
  auto endpoint = [&](const Json& e) { return endpoint_from_json(e, precision_bits); };
  plan.a = array_field<Endpoint>(p, "a", endpoint);
  plan.b = array_field<Endpoint>(p, "b", endpoint);
  check_interval_endpoints(plan.a, plan.b);
  std::vector<Interval> pieces;
  for (std::size_t l = 0; l < plan.a.size(); ++l) pieces.push_back({plan.a[l], plan.b[l]});
  plan.S = IntervalSet(std::move(pieces));
  plan.K_ell = array_field<std::int64_t>(p, "K_ell", [](const Json& v) {
    if (!v.is_number_integer()) bad("K_ell entries must be integers");
    return v.get<std::int64_t>();
  });
  plan.K = int_field(p, "K");
  plan.beta = array_field<Endpoint>(p, "beta", [&](const Json& v) {
    if (!v.is_string()) bad("beta entries must be strings");
    return real_from_string(v.get<std::string>(), precision_bits);
  });
  plan.levels = array_field<PlanLevel>(p, "levels", [&](const Json& v) {
    PlanLevel level;
    level.n = int_field(v, "n");
    level.a_geq = interval_set_from_json(field(v, "a_geq"), precision_bits);
    level.lambda = spectrum_from_json(field(v, "lambda"), precision_bits);
    const Json& iv = field(v, "interval");
    if (!iv.is_null()) level.interval = iv.get<std::size_t>();
    return level;
  });
  plan.lambda_ell = array_field<Spectrum>(p, "lambda_ell",
                                          [&](const Json& v) { return spectrum_from_json(v, precision_bits); });
  if (p.contains("search") && !p.at("search").is_null()) {
    plan.search = prime_search_from_json(p.at("search"), precision_bits);
  }
  if (plan.lambda_ell.size() != plan.L() || plan.K_ell.size() != plan.L() || plan.beta.size() != plan.L()) {
    bad("plan lists do not match the number of intervals");
  }
  if (static_cast<std::int64_t>(plan.levels.size()) != plan.K + static_cast<std::int64_t>(plan.L())) {
    bad("plan must list exactly K + L levels");
  }
  return plan;
}

Json to_json(const SubsetPlan& plan) {
  Json omega = Json::array();
  for (std::size_t i = 0; i < plan.omega.size(); ++i) {
    omega.push_back({{"index", i + 1},
                     {"shift", plan.shifts[i]},
                     {"spectrum", to_json(plan.omega[i])},
                     {"a_geq", to_json(plan.a_sets[i])}});
  }
  return {{"J", plan.J},
          {"K_J", plan.K_J},
          {"S_J", to_json(plan.S_J)},
          {"omega", omega},
          {"lambda_J", to_json(plan.lambda_J)}};
}

Json to_json(const ComplementResult& r) {
  Json levels = Json::array();
  for (const auto& level : r.levels) {
    levels.push_back({{"n", level.n}, {"kind", level.kind}, {"a_geq", to_json(level.a_geq)}, {"lambda", to_json(level.lambda)}});
  }
  return {{"N", r.N}, {"S", to_json(r.S)}, {"M", r.M}, {"levels", levels}, {"lambda_prime", to_json(r.lambda_prime)}};
}

Json to_json(const MinorSpec& spec) { return {{"N", spec.N}, {"rows", spec.rows}, {"cols", spec.cols}}; }

Json to_json(const ChebotarevReport& r) {
  return {{"worst_spec", to_json(r.worst_spec)}, {"worst_sigma", r.worst_sigma}, {"specs_checked", r.specs_checked}};
}

Json to_json(const GramReport& r) {
  Json history = Json::array();
  for (const auto& s : r.history) {
    history.push_back({{"T", s.T.get_str()},
                       {"count", s.count},
                       {"lower", number_or_null(s.lower)},
                       {"upper", number_or_null(s.upper)},
                       {"method", s.method}});
  }
  return {{"window", r.window.get_str()},
          {"count", r.count},
          {"lower_est", number_or_null(r.lower_est)},
          {"upper_est", number_or_null(r.upper_est)},
          {"status", to_string(r.status)},
          {"last_drop", r.last_drop ? number_or_null(*r.last_drop) : Json(nullptr)},
          {"decay_slope", r.decay_slope ? number_or_null(*r.decay_slope) : Json(nullptr)},
          {"history", history}};
}

Json to_json(const DensityReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"T", row.T.get_str()}, {"count", row.count}, {"expected", row.expected}, {"residual", row.residual}});
  }
  return {{"tolerance", r.tolerance}, {"pass", r.pass}, {"rows", rows}};
}

Json to_json(const FoldingReport& r) {
  Json alpha = Json::array();
  for (double a : r.per_level_alpha) alpha.push_back(number_or_null(a));
  return {{"empirical_c", number_or_null(r.empirical_c)},
          {"max_ratio", number_or_null(r.max_ratio)},
          {"per_level_alpha", alpha},
          {"c_prime", number_or_null(r.c_prime)},
          {"sigma_min_used", number_or_null(r.sigma_min_used)},
          {"trials", r.trials},
          {"skipped", r.skipped},
          {"max_tail_fraction", number_or_null(r.max_tail_fraction)},
          {"truncation_warning", r.truncation_warning}};
}

Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::InvalidInput, "malformed JSON in " + origin + " at line " + std::to_string(line) +
                                             ", column " + std::to_string(column));
  }
}

}  // namespace riesz::io
