#pragma once

#include <string>
#include <vector>

#include "riesz/assembly.hpp"
#include "riesz/endpoint.hpp"
#include "riesz/interval_set.hpp"

namespace fixtures {

// 75-digit decimal expansions (mpmath).
inline const char* const kSqrt2 = "1.41421356237309504880168872420969807856967187537694807317667973799073247846";
inline const char* const kSqrt3 = "1.73205080756887729352744634150587236694280525381038062805580697945193301691";
inline const char* const kSqrt5 = "2.23606797749978969640917366873127623544061835961152572427089724541052092564";
inline const char* const kSqrt7 = "2.64575131106459059050161575363926042571025918308245018036833445920106882323";

/// rat + irr.
inline riesz::Endpoint ep(const char* rat, const std::string& irr) { return riesz::Endpoint::parse(rat, irr); }
inline riesz::Endpoint rat(const char* q) { return riesz::Endpoint(riesz::Endpoint::parse_rational(q)); }
inline mpq_class q(const char* s) { return riesz::Endpoint::parse_rational(s); }

inline riesz::IntervalSet set(std::vector<std::pair<riesz::Endpoint, riesz::Endpoint>> pieces) {
  std::vector<riesz::Interval> out;
  for (auto& [l, r] : pieces) out.push_back({l, r});
  return riesz::IntervalSet(std::move(out));
}

/// sqrt(2) - 1 and sqrt(3) - 1.
inline riesz::Endpoint single_a() { return ep("-1", kSqrt2); }
inline riesz::Endpoint single_b() { return ep("-1", kSqrt3); }

/// Two intervals from independent square roots:
///   a1 = 2 sqrt3/3 - 1, b1 = sqrt5/4, a2 = sqrt7/4, b2 = 2 sqrt2 - 2.
inline std::vector<riesz::Endpoint> pair_a() {
  riesz::Endpoint s3 = ep("0", kSqrt3).scaled(mpq_class(2, 3)) - mpq_class(1);
  return {s3, ep("0", kSqrt7).scaled(mpq_class(1, 4))};
}
inline std::vector<riesz::Endpoint> pair_b() {
  return {ep("0", kSqrt5).scaled(mpq_class(1, 4)), ep("0", kSqrt2).scaled(mpq_class(2)) - mpq_class(2)};
}

inline std::vector<mpq_class> windows(std::initializer_list<long> ts) {
  std::vector<mpq_class> out;
  for (long t : ts) out.emplace_back(t);
  return out;
}

}  // namespace fixtures
