#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "loxo/orbit.hpp"

namespace loxo {

/// Closed index ranges for the two orbits.
struct IntersectionWindow {
  long f_min = 0, f_max = 0, g_min = 0, g_max = 0;

  /// InvariantViolation for empty ranges; OverflowGuard for a grid above limits.max_window.
  void validate(const Limits& limits = {}) const;
};

using IndexPair = std::pair<long, long>;

struct IntersectionSet {
  std::vector<IndexPair> pairs;  // sorted by (n, m), each verified by exact equality
  bool base_point_periodic = false;  // p repeats inside the f-window
  bool truncated = false;

  /// Sorted n values of the pairs; PeriodicBasePoint when p is f-periodic.
  std::vector<long> iota_image() const;
};

/// Exact f^n(p) = g^m(q) over the window via a hash join of the two segments.
template <class System>
IntersectionSet find_intersections(const System& f, const typename System::Point& p, const System& g,
                                   const typename System::Point& q, const IntersectionWindow& window,
                                   const Limits& limits = {}) {
  window.validate(limits);
  using Point = typename System::Point;
  auto fs = iterate_orbit(f, p, window.f_min, window.f_max);
  auto gs = iterate_orbit(g, q, window.g_min, window.g_max);
  IntersectionSet out;
  out.truncated = fs.truncated || gs.truncated;
  std::unordered_map<std::string, std::vector<const OrbitRecord<Point>*>> index;
  for (const auto& r : fs.records) {
    auto& bucket = index[f.key(r.point)];
    for (const auto* other : bucket)
      if (other->point == r.point) out.base_point_periodic = true;
    bucket.push_back(&r);
  }
  for (const auto& r : gs.records) {
    auto it = index.find(g.key(r.point));
    if (it == index.end()) continue;
    for (const auto* fr : it->second)
      if (fr->point == r.point) out.pairs.emplace_back(fr->n, r.n);
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

/// Pairs split by the signs of n and m (n >= 0 counts as +), in the order ++, +-, -+, --.
struct ForwardReduction {
  int eps_f = 1, eps_g = 1;
  std::array<std::size_t, 4> counts{};
  std::vector<IndexPair> pairs;  // dominant quadrant, reindexed to (eps_f n, eps_g m)
};

ForwardReduction reduce_to_forward(const IntersectionSet& set);

/// The dominant quadrant with the maps replaced by inverses where needed.
template <class System>
std::pair<System, System> forward_maps(const ForwardReduction& r, const System& f, const System& g) {
  return {r.eps_f > 0 ? f : f.power(-1), r.eps_g > 0 ? g : g.power(-1)};
}

template <class Point>
struct SamePoint {
  long n0 = 0, m0 = 0;
  Point r;
  std::vector<IndexPair> shifted;  // (n - n0, m - m0) for forward pairs
};

/// Least forward pair (n0, m0) and r = f^n0(p); p and q are both replaced by r.
template <class System>
std::optional<SamePoint<typename System::Point>> reduce_to_same_point(const System& f, const typename System::Point& p,
                                                                      const IntersectionSet& set) {
  std::optional<IndexPair> first;
  for (const auto& pr : set.pairs)
    if (pr.first >= 0 && pr.second >= 0) {
      first = pr;
      break;
    }
  if (!first) return std::nullopt;
  auto r = p;
  for (long k = 0; k < first->first; ++k) r = f.forward(r);
  SamePoint<typename System::Point> out{first->first, first->second, r, {}};
  for (const auto& pr : set.pairs)
    if (pr.first >= first->first && pr.second >= first->second)
      out.shifted.emplace_back(pr.first - first->first, pr.second - first->second);
  return out;
}

struct ResidueClass {
  long l = 0, k = 0;
  std::vector<IndexPair> pairs;
};

/// Pairs partitioned by (n mod |step_f|, m mod |step_g|); classes in (l, k) order.
struct IteratesReport {
  long step_f = 1, step_g = 1;
  std::vector<ResidueClass> classes;
  std::size_t dominant = 0;  // index into classes; first maximal class
};

IteratesReport reduce_to_iterates(const std::vector<IndexPair>& pairs, long step_f, long step_g);

/// The sub-instance (f^n, f^l(p), g^m, g^k(q)) of a residue class.
template <class System>
struct IterateInstance {
  System f, g;
  typename System::Point p, q;
};

template <class System>
IterateInstance<System> iterate_instance(const IteratesReport& report, const ResidueClass& cls, const System& f,
                                         const typename System::Point& p, const System& g,
                                         const typename System::Point& q) {
  auto fp = p;
  for (long i = 0; i < cls.l; ++i) fp = f.forward(fp);
  auto gq = q;
  for (long i = 0; i < cls.k; ++i) gq = g.forward(gq);
  return {f.power(report.step_f), g.power(report.step_g), fp, gq};
}

struct DensityEstimate {
  double value = 0;
  long window_min = 0, window_max = -1;
  long min_length = 1;
  long best_min = 0, best_max = -1;
  std::vector<std::pair<long, double>> per_length;  // max |S ∩ I| / |I| for each scanned length
};

/// max |S ∩ I| / |I| over subintervals I of the window with |I| >= min_length
/// (default: half the window, rounded up). Elements outside the window are ignored.
DensityEstimate banach_density_estimate(const std::vector<long>& s, long window_min, long window_max,
                                        std::optional<long> min_length = std::nullopt);

struct Progression {
  long step = 1, offset = 0;  // 0 <= offset < step
  friend bool operator==(const Progression&, const Progression&) = default;
};

struct ProgressionDecomposition {
  std::vector<Progression> progressions;
  std::vector<long> sporadic;  // sorted

  /// Elements of the window covered by the decomposition.
  std::vector<long> reconstruct(long window_min, long window_max) const;
};

/// Greedy by increasing step a <= |window| / 3: a residue class is taken when every
/// one of its (at least 3) window elements lies in S and it adds something new.
ProgressionDecomposition decompose_arithmetic_progressions(const std::vector<long>& s, long window_min,
                                                           long window_max);

struct SpectralMatch {
  long a = 0, b = 0;
  BigInt trace;  // Tr(M_f^{2a}) = Tr(M_g^{2b})
};

/// Least (a, b) in [1, bound]^2 with rho(M_f)^a = rho(M_g)^b.
std::optional<SpectralMatch> spectral_compatibility(const GLZ2Matrix& mf, const GLZ2Matrix& mg, long bound);

struct CommonIterateCertificate {
  long n = 0, m = 0;
  std::string kind;  // "canonical" or "pointwise-screened"
  std::string f_form, g_form;
};

/// f^N = g^M with 1 <= N <= bound and M tried in the order 1, -1, 2, -2, ...
template <class F>
std::optional<CommonIterateCertificate> common_iterate_search(const TorusSystem<F>& f, const TorusSystem<F>& g,
                                                              long bound);
std::optional<CommonIterateCertificate> common_iterate_search(const PlaneSystem& f, const PlaneSystem& g, long bound,
                                                              const Limits& limits = {});
std::optional<CommonIterateCertificate> common_iterate_search(const FrobSystem& f, const FrobSystem& g, long bound,
                                                              const Limits& limits = {});

/// C with |n - m| <= C for pairs f^n(p) = g^m(q) at large n, from the leading terms
/// at v. Needs equal dynamical degrees and nonzero leading coefficients.
template <class F>
long offset_bound(const PseudoMonomialMap<F>& f, const TorusPoint<F>& p, const PseudoMonomialMap<F>& g,
                  const TorusPoint<F>& q, const Place& v);

/// Polynomial (Laurent for torus targets) in the four coordinates (x1, x2, y1, y2).
template <class F>
using Polynomial4 = std::vector<LaurentTerm<F>>;

struct VisitSet {
  std::vector<long> visits;
  ProgressionDecomposition decomposition;
  bool truncated = false;
};

/// Whether every polynomial of V vanishes at (x, y).
template <class F>
bool variety_contains(const TorusSystem<F>& sys, const std::vector<Polynomial4<F>>& v, const FactoredPoint& x,
                      const FactoredPoint& y, const Limits& limits);
bool variety_contains(const PlaneSystem& sys, const std::vector<Polynomial4<Rational>>& v, const PlanePoint& x,
                      const PlanePoint& y, const Limits& limits);
bool variety_contains(const FrobSystem& sys, const std::vector<Polynomial4<RationalFunction>>& v, const FrobPoint& x,
                      const FrobPoint& y, const Limits& limits);

/// {n in window : (f^n(x0), g^n(y0)) in V} with its progression decomposition.
template <class System, class F>
VisitSet subvariety_visit_set(const System& f, const System& g, const typename System::Point& x0,
                              const typename System::Point& y0, const std::vector<Polynomial4<F>>& v, long window_min,
                              long window_max, const Limits& limits = {}) {
  if (window_min > window_max) throw InvariantViolation("empty visit window");
  auto fs = iterate_orbit(f, x0, window_min, window_max);
  auto gs = iterate_orbit(g, y0, window_min, window_max);
  VisitSet out;
  out.truncated = fs.truncated || gs.truncated;
  std::map<long, const typename System::Point*> gpoints;
  for (const auto& r : gs.records) gpoints[r.n] = &r.point;
  for (const auto& r : fs.records) {
    auto it = gpoints.find(r.n);
    if (it == gpoints.end()) continue;
    try {
      if (variety_contains(f, v, r.point, *it->second, limits)) out.visits.push_back(r.n);
    } catch (const OverflowGuard&) {
      out.truncated = true;
    }
  }
  out.decomposition = decompose_arithmetic_progressions(out.visits, window_min, window_max);
  return out;
}

/// {(n, m) : (f^n(x0), g^m(y0)) in V} over the grid of the window.
template <class System, class F>
std::vector<IndexPair> subvariety_visit_grid(const System& f, const System& g, const typename System::Point& x0,
                                             const typename System::Point& y0, const std::vector<Polynomial4<F>>& v,
                                             const IntersectionWindow& window, const Limits& limits = {}) {
  window.validate(limits);
  auto fs = iterate_orbit(f, x0, window.f_min, window.f_max);
  auto gs = iterate_orbit(g, y0, window.g_min, window.g_max);
  std::vector<IndexPair> out;
  for (const auto& a : fs.records)
    for (const auto& b : gs.records)
      if (variety_contains(f, v, a.point, b.point, limits)) out.emplace_back(a.n, b.n);
  return out;
}

}  // namespace loxo
