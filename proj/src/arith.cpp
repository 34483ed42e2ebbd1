#include "riesz/arith.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "riesz/error.hpp"
#include "riesz/interval_set.hpp"

namespace riesz {

namespace {

// {p a} in double precision: the rational part is reduced exactly, the
// irrational summand in long double.
struct FracEvaluator {
  mpz_class num;
  mpz_class den;
  long double irrational = 0.0L;

  explicit FracEvaluator(const Endpoint& a)
      : num(a.rational_part().get_num()), den(a.rational_part().get_den()) {
    if (a.irrational_part()) irrational = mpfr_get_ld(a.irrational_part()->get(), MPFR_RNDN);
  }

  double operator()(std::int64_t p) const {
    mpz_class r = num * p;
    mpz_class q;
    mpz_fdiv_r(q.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t());
    const long double rational = static_cast<long double>(q.get_d()) / static_cast<long double>(den.get_d());
    long double irr = static_cast<long double>(p) * irrational;
    irr -= std::floor(irr);
    long double v = rational + irr;
    v -= std::floor(v);
    return frac(static_cast<double>(v));
  }
};

std::string relation_to_string(const std::vector<long>& rel) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < rel.size(); ++i) out << (i ? ", " : "") << rel[i];
  out << ")";
  return out.str();
}

}  // namespace

std::vector<std::int64_t> primes_up_to(std::int64_t limit, std::int64_t budget) {
  if (limit < 2) throw Error(ErrorKind::InvalidInput, "prime limit must be at least 2");
  if (limit > budget) {
    throw Error(ErrorKind::ResourceLimit,
                "prime limit " + std::to_string(limit) + " exceeds sieve budget " + std::to_string(budget));
  }
  // Odd-only sieve: index i stands for 2i+1.
  const std::size_t half = static_cast<std::size_t>((limit - 1) / 2 + 1);
  std::vector<bool> composite(half, false);
  composite[0] = true;
  for (std::int64_t p = 3; p * p <= limit; p += 2) {
    if (composite[static_cast<std::size_t>(p / 2)]) continue;
    for (std::int64_t m = p * p; m <= limit; m += 2 * p) composite[static_cast<std::size_t>(m / 2)] = true;
  }
  std::vector<std::int64_t> primes{2};
  for (std::size_t i = 1; i < half; ++i) {
    if (!composite[i]) primes.push_back(static_cast<std::int64_t>(2 * i + 1));
  }
  return primes;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void check_interval_endpoints(const std::vector<Endpoint>& a, const std::vector<Endpoint>& b) {
  if (a.empty() || a.size() != b.size()) {
    throw Error(ErrorKind::InvalidInput, "need L >= 1 intervals with matching left/right endpoint lists");
  }
  Endpoint previous(0);
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (!(previous < a[l]) || !(a[l] < b[l])) {
      throw Error(ErrorKind::InvalidInput, "endpoints must satisfy 0 < a_1 < b_1 < ... < a_L < b_L < 1 (interval " +
                                               std::to_string(l + 1) + ")");
    }
    previous = b[l];
  }
  if (!(previous < Endpoint(1))) throw Error(ErrorKind::InvalidInput, "b_L must be < 1");
}

std::optional<std::vector<Endpoint>> ordering_witness(std::int64_t N, const std::vector<Endpoint>& a,
                                                      const std::vector<Endpoint>& b) {
  const std::size_t L = a.size();
  if (static_cast<std::int64_t>(2 * L + 1) > N) return std::nullopt;
  std::vector<Endpoint> witness;
  witness.reserve(2 * L);
  const mpq_class scale(N);
  for (std::size_t l = 0; l < L; ++l) witness.push_back(frac(a[l].scaled(scale)));
  for (std::size_t l = L; l-- > 0;) witness.push_back(frac(b[l].scaled(scale)));
  if (!(Endpoint(0) < witness.front())) return std::nullopt;
  for (std::size_t i = 0; i + 1 < witness.size(); ++i) {
    if (!(witness[i] < witness[i + 1])) return std::nullopt;
  }
  std::vector<Endpoint> endpoints;
  endpoints.reserve(2 * L);
  for (std::size_t l = 0; l < L; ++l) {
    endpoints.push_back(a[l]);
    endpoints.push_back(b[l]);
  }
  if (!grid_separation_ok(N, endpoints)) return std::nullopt;
  return witness;
}

PrimeSearchResult find_ordering_prime(const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                                      std::int64_t prime_limit, const PrimeSearchOptions& options) {
  check_interval_endpoints(a, b);
  if (options.occurrence < 1) throw Error(ErrorKind::InvalidInput, "occurrence must be >= 1");
  if (options.relation_max_coeff > 0) {
    std::vector<BigFloat> values;
    for (const auto& e : a) values.push_back(e.value());
    for (const auto& e : b) values.push_back(e.value());
    const long bound = relation_coeff_within_budget(values.size(), options.relation_max_coeff);
    if (auto rel = rational_relation_probe(values, bound)) {
      throw Error(ErrorKind::IndependenceSuspect,
                  "endpoints satisfy the integer relation " + relation_to_string(*rel) +
                      " over (1, a_1..a_L, b_1..b_L)");
    }
  }
  PrimeSearchResult result;
  int passing = 0;
  for (std::int64_t p : primes_up_to(prime_limit)) {
    ++result.candidates_scanned;
    auto witness = ordering_witness(p, a, b);
    if (!witness) continue;
    if (++passing < options.occurrence) continue;
    result.N = p;
    result.ordering_witness = std::move(*witness);
    return result;
  }
  throw Error(ErrorKind::NotFound, "no admissible prime <= " + std::to_string(prime_limit));
}

long relation_coeff_within_budget(std::size_t m, long cap, std::int64_t budget) {
  long best = 0;
  for (long k = 1; k <= cap; ++k) {
    const double box = std::pow(2.0 * k + 1.0, static_cast<double>(m));
    if (box > static_cast<double>(budget)) break;
    best = k;
  }
  return best;
}

std::optional<std::vector<long>> rational_relation_probe(const std::vector<BigFloat>& values, long max_coeff,
                                                         std::int64_t budget) {
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "relation probe needs at least one value");
  if (max_coeff < 1) throw Error(ErrorKind::InvalidInput, "max_coeff must be >= 1");
  const std::size_t m = values.size();
  if (std::pow(2.0 * max_coeff + 1.0, static_cast<double>(m)) > static_cast<double>(budget)) {
    throw Error(ErrorKind::ResourceLimit, "relation search box (2*" + std::to_string(max_coeff) + "+1)^" +
                                              std::to_string(m) + " exceeds budget " + std::to_string(budget));
  }
  int precision = values.front().precision();
  std::vector<double> approx(m);
  for (std::size_t i = 0; i < m; ++i) {
    precision = std::min(precision, values[i].precision());
    approx[i] = values[i].to_double();
  }
  const BigFloat threshold = ambiguity_threshold(precision);

  std::vector<long> q(m);
  for (long k = 1; k <= max_coeff; ++k) {
    std::fill(q.begin(), q.end(), -k);
    while (true) {
      long norm = 0;
      long first = 0;
      for (long c : q) {
        norm = std::max(norm, std::labs(c));
        if (first == 0) first = c;
      }
      if (norm == k && first > 0) {
        double s = 0.0;
        double magnitude = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
          s += static_cast<double>(q[i]) * approx[i];
          magnitude += std::fabs(static_cast<double>(q[i]) * approx[i]);
        }
        const double q0 = -std::nearbyint(s);
        if (std::fabs(q0) <= static_cast<double>(max_coeff) && std::fabs(s + q0) < 1e-9 * magnitude) {
          BigFloat exact(static_cast<long>(q0), precision + 64);
          for (std::size_t i = 0; i < m; ++i) exact += values[i] * mpq_class(q[i]);
          if (abs(exact) < threshold * mpq_class(static_cast<long>(magnitude) + 1)) {
            std::vector<long> rel{static_cast<long>(q0)};
            rel.insert(rel.end(), q.begin(), q.end());
            return rel;
          }
        }
      }
      // Lexicographic odometer over [-k, k]^m (last coordinate fastest).
      std::size_t i = m;
      while (i > 0 && q[i - 1] == k) {
        q[i - 1] = -k;
        --i;
      }
      if (i == 0) break;
      ++q[i - 1];
    }
  }
  return std::nullopt;
}

double weyl_discrepancy(const std::vector<Endpoint>& a, std::int64_t prime_limit, int boxes) {
  if (a.empty()) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  if (boxes < 1) throw Error(ErrorKind::InvalidInput, "boxes must be >= 1");
  const std::size_t d = a.size();
  const double cells = std::pow(static_cast<double>(boxes), static_cast<double>(d));
  if (cells > 5e7) throw Error(ErrorKind::ResourceLimit, "box grid boxes^d exceeds 5e7 cells");
  const auto primes = primes_up_to(prime_limit);
  std::vector<FracEvaluator> eval;
  eval.reserve(d);
  for (const auto& e : a) eval.emplace_back(e);

  const auto B = static_cast<std::size_t>(boxes);
  const auto total = static_cast<std::size_t>(cells);
  // hist[cell] counts points whose coordinates fall in the grid cell; the
  // cumulative sum over the grid then gives anchored-box counts.
  std::vector<double> hist(total, 0.0);
  for (std::int64_t p : primes) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < d; ++k) {
      auto c = static_cast<std::size_t>(eval[k](p) * static_cast<double>(B));
      index = index * B + std::min(c, B - 1);
    }
    hist[index] += 1.0;
  }
  std::size_t stride = 1;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      if ((idx / stride) % B != 0) hist[idx] += hist[idx - stride];
    }
    stride *= B;
  }
  const double count = static_cast<double>(primes.size());
  double worst = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    double volume = 1.0;
    std::size_t rest = idx;
    for (std::size_t k = 0; k < d; ++k) {
      volume *= static_cast<double>(rest % B + 1) / static_cast<double>(B);
      rest /= B;
    }
    worst = std::max(worst, std::fabs(hist[idx] / count - volume));
  }
  return worst;
}

double prime_fraction_in(const Endpoint& a, std::int64_t prime_limit, double lo, double hi) {
  const auto primes = primes_up_to(prime_limit);
  const FracEvaluator eval(a);
  std::int64_t hits = 0;
  for (std::int64_t p : primes) {
    const double v = eval(p);
    if (lo <= v && v < hi) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(primes.size());
}

}  // namespace riesz
