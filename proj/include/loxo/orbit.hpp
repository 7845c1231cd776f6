#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "loxo/systems.hpp"

namespace loxo {

template <class Point>
struct OrbitRecord {
  long n = 0;
  Point point;
  Height height;
};

template <class Point>
struct OrbitSegment {
  std::vector<OrbitRecord<Point>> records;  // ascending n
  bool truncated = false;
  std::string truncation_reason;
};

/// Exact f^n(p) for n in [n_min, n_max]; negative indices step with the inverse.
/// OverflowGuard stops the walk in that direction and flags the segment.
template <class System>
OrbitSegment<typename System::Point> iterate_orbit(const System& sys, const typename System::Point& p, long n_min,
                                                   long n_max) {
  if (n_min > n_max) throw InvariantViolation("empty orbit range");
  using Point = typename System::Point;
  OrbitSegment<Point> out;
  std::vector<OrbitRecord<Point>> back;
  auto walk = [&](long from, long to, long step, bool forward, std::vector<OrbitRecord<Point>>& sink) {
    Point cur = p;
    for (long n = 0;; n += step) {
      if ((step > 0 ? n >= from : n <= from) && (step > 0 ? n <= to : n >= to))
        sink.push_back({n, cur, sys.height(cur)});
      if (n == to) return;
      try {
        cur = forward ? sys.forward(cur) : sys.backward(cur);
      } catch (const OverflowGuard& e) {
        out.truncated = true;
        out.truncation_reason = e.what();
        return;
      }
    }
  };
  if (n_min < 0) walk(std::min(n_max, -1L), n_min, -1, false, back);
  std::reverse(back.begin(), back.end());
  out.records = std::move(back);
  if (n_max >= 0) walk(std::max(n_min, 0L), n_max, 1, true, out.records);
  return out;
}

struct Periodic {
  long preperiod = 0;
  long period = 0;
};

struct NoCycleInWindow {
  long steps_examined = 0;
  double max_height_seen = 0;
  /// Least n >= 1 with h_m > h_{m-1} for every m in [n, last]; absent if the last step does not grow.
  std::optional<long> growth_onset;
  bool truncated = false;
  bool stopped_at_height_bound = false;
};

using PeriodicityVerdict = std::variant<Periodic, NoCycleInWindow>;

/// Forward orbit of p for at most `window` steps; reports the first exact repeat.
/// Never claims aperiodicity. Steps above `height_bound` end the scan.
template <class System>
PeriodicityVerdict detect_periodicity(const System& sys, const typename System::Point& p, long window,
                                      double height_bound = std::numeric_limits<double>::infinity()) {
  if (window < 1) throw InvariantViolation("window must be >= 1");
  using Point = typename System::Point;
  std::unordered_map<std::string, std::vector<long>> seen;
  std::vector<Point> points;
  std::vector<double> heights;
  NoCycleInWindow miss;
  Point cur = p;
  for (long n = 0; n <= window; ++n) {
    if (n > 0) {
      try {
        cur = sys.forward(cur);
      } catch (const OverflowGuard&) {
        miss.truncated = true;
        break;
      }
    }
    auto& bucket = seen[sys.key(cur)];
    for (long m : bucket)
      if (points[static_cast<std::size_t>(m)] == cur) return Periodic{m, n - m};
    bucket.push_back(n);
    points.push_back(cur);
    heights.push_back(sys.height(cur).value);
    miss.steps_examined = n;
    miss.max_height_seen = std::max(miss.max_height_seen, heights.back());
    if (heights.back() > height_bound) {
      miss.stopped_at_height_bound = true;
      break;
    }
  }
  if (heights.size() >= 2 && heights.back() > heights[heights.size() - 2]) {
    long onset = static_cast<long>(heights.size()) - 1;
    while (onset > 1 && heights[static_cast<std::size_t>(onset - 1)] > heights[static_cast<std::size_t>(onset - 2)])
      --onset;
    miss.growth_onset = onset;
  }
  return miss;
}

/// u_n = (log|x_n|_v, log|y_n|_v). At non-archimedean places `ords` holds the
/// exact orders, with u = -ords * normalizer.
struct LogOrbit {
  Place place;
  std::vector<Eigen::Vector2d> u;
  std::vector<std::array<BigInt, 2>> ords;
};

/// u_{n+1} = M u_n + log|b|_v, for n = 0..n_max.
template <class F>
LogOrbit log_orbit(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p, const Place& v, long n_max);

/// The same sequence read off the exact (factored) orbit.
template <class F>
LogOrbit exact_log_orbit(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p, const Place& v, long n_max);

/// u_n = a_plus lambda^n w_plus + a_minus mu^n w_minus + w0 with w0 = (I - M)^{-1} log|b|_v,
/// lambda the dominant eigenvalue of M (signed) and mu = det M / lambda.
struct AsymptoticDecomposition {
  Place place = Place::archimedean();
  double lambda = 0, mu = 0;
  double a_plus = 0, a_minus = 0;
  Eigen::Vector2d w_plus, w_minus, w0;
  /// Non-archimedean places: exact values in units of the place normalizer.
  std::optional<QuadraticNumber> a_plus_exact, a_minus_exact;
  std::optional<std::array<Rational, 2>> w0_exact;

  Eigen::Vector2d reconstruct(long n) const;
  /// Bounded at v iff both coefficients vanish: exact off the archimedean place,
  /// within `tol` (relative to the data scale) on it.
  bool bounded(double tol = 1e-9) const;
  double scale = 1;  // max(1, |u0|, |log|b|_v|)
};

template <class F>
AsymptoticDecomposition asymptotic_decomposition(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p,
                                                 const Place& v);

/// First place in scan order (arch/inf first) where the orbit is unbounded.
/// Places where every input is a unit are skipped without computation.
template <class F>
std::optional<AsymptoticDecomposition> find_unbounded_place(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p);

}  // namespace loxo
