#ifndef CLSCND_PARETO_HPP
#define CLSCND_PARETO_HPP

#include <clscnd/errors.hpp>
#include <clscnd/model.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace clscnd {

/// (f1, f2) = (total cost, total emissions); both minimized.
struct ObjectivePoint {
  double f1 = 0.0;
  double f2 = 0.0;

  friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

inline bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) noexcept {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

inline bool weakly_dominates(const ObjectivePoint& a, const ObjectivePoint& b) noexcept {
  return a.f1 <= b.f1 && a.f2 <= b.f2;
}

/// Indices (ascending) of the points that survive dominance filtering. A
/// point equal to an earlier one is dropped.
inline std::vector<std::size_t> nondominated_indices(const std::vector<ObjectivePoint>& points) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < points.size() && !drop; ++j) {
      if (j == i) continue;
      drop = dominates(points[j], points[i]) || (j < i && points[j] == points[i]);
    }
    if (!drop) keep.push_back(i);
  }
  return keep;
}

/// Nondominated subset in input order.
inline std::vector<ObjectivePoint> filter_dominated(const std::vector<ObjectivePoint>& points) {
  std::vector<ObjectivePoint> out;
  for (auto i : nondominated_indices(points)) out.push_back(points[i]);
  return out;
}

/// Exact bi-objective hypervolume by a sorted sweep.
inline double hypervolume(std::vector<ObjectivePoint> points, const ObjectivePoint& reference) {
  for (const auto& p : points) {
    if (!std::isfinite(p.f1) || !std::isfinite(p.f2)) throw InvalidReference("hypervolume: non-finite point");
    if (p.f1 > reference.f1 || p.f2 > reference.f2)
      throw InvalidReference("hypervolume: point (" + std::to_string(p.f1) + ", " + std::to_string(p.f2) +
                             ") lies beyond the reference point");
  }
  std::sort(points.begin(), points.end(),
            [](const ObjectivePoint& a, const ObjectivePoint& b) { return a.f1 < b.f1 || (a.f1 == b.f1 && a.f2 < b.f2); });
  double area = 0.0;
  double level = reference.f2;
  for (const auto& p : points) {
    if (p.f2 >= level) continue;
    area += (reference.f1 - p.f1) * (level - p.f2);
    level = p.f2;
  }
  return area;
}

struct FrontEntry {
  double f1 = 0.0;
  double f2 = 0.0;
  FlowSolution solution;
  std::string method;           // "eps", "ga", "oracle"
  double epsilon_or_gen = 0.0;  // generating epsilon, or generation index
  bool proven = false;          // proven optimal for its subproblem

  ObjectivePoint point() const noexcept { return {f1, f2}; }
};

struct FrontMetadata {
  std::string instance_hash;
  std::map<std::string, std::string> config;
  std::string timestamp;
  bool exact = true;
  bool relaxed = false;
  std::string diagnostic;
};

/// Equal within a relative tolerance (absolute below magnitude 1).
inline bool nearly_equal(double a, double b, double tol) noexcept {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

class ParetoFront {
 public:
  static constexpr double duplicate_tolerance = 1e-6;

  ParetoFront() = default;

  /// Dedupes near-equal objective pairs (first wins), drops dominated entries
  /// and sorts by ascending f1.
  static ParetoFront build(std::vector<FrontEntry> candidates, FrontMetadata metadata = {},
                           double tol = duplicate_tolerance) {
    std::vector<FrontEntry> unique;
    for (auto& c : candidates) {
      const bool dup = std::any_of(unique.begin(), unique.end(), [&](const FrontEntry& u) {
        return nearly_equal(u.f1, c.f1, tol) && nearly_equal(u.f2, c.f2, tol);
      });
      if (!dup) unique.push_back(std::move(c));
    }
    std::vector<ObjectivePoint> pts;
    for (const auto& u : unique) pts.push_back(u.point());
    ParetoFront front;
    front.metadata = std::move(metadata);
    for (auto i : nondominated_indices(pts)) front.entries_.push_back(std::move(unique[i]));
    std::stable_sort(front.entries_.begin(), front.entries_.end(), [](const FrontEntry& a, const FrontEntry& b) {
      return a.f1 < b.f1 || (a.f1 == b.f1 && a.f2 < b.f2);
    });
    return front;
  }

  /// Takes entries as they are; used when loading a stored front.
  static ParetoFront from_entries(std::vector<FrontEntry> entries, FrontMetadata metadata = {}) {
    ParetoFront front;
    front.entries_ = std::move(entries);
    front.metadata = std::move(metadata);
    return front;
  }

  const std::vector<FrontEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const FrontEntry& operator[](std::size_t i) const { return entries_[i]; }

  std::vector<ObjectivePoint> points() const {
    std::vector<ObjectivePoint> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.point());
    return out;
  }

  FrontMetadata metadata;

 private:
  std::vector<FrontEntry> entries_;
};

/// Componentwise max over all points, pushed out by 10% of its magnitude.
inline ObjectivePoint reference_point(const std::vector<ObjectivePoint>& a, const std::vector<ObjectivePoint>& b) {
  ObjectivePoint m{-HUGE_VAL, -HUGE_VAL};
  for (const auto* pts : {&a, &b})
    for (const auto& p : *pts) {
      m.f1 = std::max(m.f1, p.f1);
      m.f2 = std::max(m.f2, p.f2);
    }
  if (a.empty() && b.empty()) return {0.0, 0.0};
  return {m.f1 + 0.1 * std::abs(m.f1), m.f2 + 0.1 * std::abs(m.f2)};
}

/// Fraction of `b` weakly dominated by some point of `a`; 0 for empty `b`.
inline double coverage(const std::vector<ObjectivePoint>& a, const std::vector<ObjectivePoint>& b) {
  if (b.empty()) return 0.0;
  std::size_t covered = 0;
  for (const auto& q : b)
    if (std::any_of(a.begin(), a.end(), [&](const ObjectivePoint& p) { return weakly_dominates(p, q); })) ++covered;
  return static_cast<double>(covered) / static_cast<double>(b.size());
}

struct FrontMetrics {
  ObjectivePoint reference;
  double hypervolume_a = 0.0;
  double hypervolume_b = 0.0;
  double hypervolume_ratio = 0.0;  // hv(B) / hv(A)
  double coverage_ab = 0.0;        // C(A, B)
  double coverage_ba = 0.0;        // C(B, A)
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  // Extreme points of each front: (min f1 entry, min f2 entry).
  ObjectivePoint a_min_f1, a_min_f2, b_min_f1, b_min_f2;
};

inline FrontMetrics compare(const ParetoFront& a, const ParetoFront& b) {
  if (a.metadata.instance_hash != b.metadata.instance_hash)
    throw ComparisonError("fronts come from different instances (" + a.metadata.instance_hash + " vs " +
                          b.metadata.instance_hash + ")");
  const auto pa = a.points(), pb = b.points();
  FrontMetrics m;
  m.reference = reference_point(pa, pb);
  m.hypervolume_a = hypervolume(pa, m.reference);
  m.hypervolume_b = hypervolume(pb, m.reference);
  if (m.hypervolume_a > 0.0)
    m.hypervolume_ratio = m.hypervolume_b / m.hypervolume_a;
  else
    m.hypervolume_ratio = m.hypervolume_b > 0.0 ? HUGE_VAL : 1.0;
  m.coverage_ab = coverage(pa, pb);
  m.coverage_ba = coverage(pb, pa);
  m.count_a = pa.size();
  m.count_b = pb.size();
  auto extremes = [](const std::vector<ObjectivePoint>& p, ObjectivePoint& by_f1, ObjectivePoint& by_f2) {
    if (p.empty()) return;
    by_f1 = *std::min_element(p.begin(), p.end(), [](auto& x, auto& y) {
      return x.f1 < y.f1 || (x.f1 == y.f1 && x.f2 < y.f2);
    });
    by_f2 = *std::min_element(p.begin(), p.end(), [](auto& x, auto& y) {
      return x.f2 < y.f2 || (x.f2 == y.f2 && x.f1 < y.f1);
    });
  };
  extremes(pa, m.a_min_f1, m.a_min_f2);
  extremes(pb, m.b_min_f1, m.b_min_f2);
  return m;
}

}  // namespace clscnd

#endif  // CLSCND_PARETO_HPP
