#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "primes.hpp"

namespace logent {

// Counting measure on the positive reals: sorted distances with multiplicity,
// the truncation radius used, and the base points that produced them.
class DistanceMultiset {
public:
  DistanceMultiset() = default;

  // Validates 0 < v <= radius for every value; sorts.
  DistanceMultiset(std::vector<double> values, double radius, std::vector<double> base_points = {})
      : values_(std::move(values)), radius_(radius), base_points_(std::move(base_points)) {
    if (!(radius_ > 0.0) || !std::isfinite(radius_))
      throw invalid_argument("truncation radius must be positive and finite");
    for (const double v : values_)
      if (!(v > 0.0) || v > radius_)
        throw invalid_argument("distance " + std::to_string(v) + " outside (0, R]");
    std::sort(values_.begin(), values_.end());
  }

  std::span<const double> values() const noexcept { return values_; }
  double radius() const noexcept { return radius_; }
  std::span<const double> base_points() const noexcept { return base_points_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  // Measure addition. The radius of the sum is the larger of the two.
  DistanceMultiset& operator+=(const DistanceMultiset& other) {
    std::vector<double> merged;
    merged.reserve(values_.size() + other.values_.size());
    std::merge(values_.begin(), values_.end(), other.values_.begin(), other.values_.end(),
               std::back_inserter(merged));
    values_ = std::move(merged);
    radius_ = std::max(radius_, other.radius_);
    base_points_.insert(base_points_.end(), other.base_points_.begin(), other.base_points_.end());
    return *this;
  }

  friend DistanceMultiset operator+(DistanceMultiset lhs, const DistanceMultiset& rhs) {
    lhs += rhs;
    return lhs;
  }

  // c * D, radius scaled alongside.
  DistanceMultiset scaled(double c) const {
    if (!(c > 0.0)) throw invalid_argument("scale factor must be positive");
    DistanceMultiset out = *this;
    for (double& v : out.values_) v *= c;
    out.radius_ *= c;
    return out;
  }

  bool operator==(const DistanceMultiset&) const = default;

private:
  std::vector<double> values_;
  double radius_ = 1.0;
  std::vector<double> base_points_;
};

// A sorted point configuration known to be complete on [lower, upper]. Use
// infinite bounds for a finite configuration that is complete by definition.
template <typename T>
struct PointSet {
  std::span<const T> points;
  double lower;
  double upper;
};

inline PointSet<std::uint64_t> as_point_set(const PrimeTable& table) {
  // No primes lie below 2, so a table starting there is complete downwards.
  const double lower = table.lower <= 2 ? -std::numeric_limits<double>::infinity()
                                        : static_cast<double>(table.lower);
  return {table.primes, lower, static_cast<double>(table.limit)};
}

// { |base - q| : q in points, q != base, |base - q| <= radius }.
// The base point does not have to belong to the configuration.
template <typename T>
  requires std::is_arithmetic_v<T>
DistanceMultiset truncated_distances(double base, PointSet<T> set, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw invalid_argument("truncation radius must be positive and finite");
  const double lo = base - radius;
  const double hi = base + radius;
  if (hi > set.upper || lo < set.lower)
    throw coverage_error("point set covers [" + std::to_string(set.lower) + ", " +
                         std::to_string(set.upper) + "] but the query needs [" +
                         std::to_string(std::max(lo, 0.0)) + ", " + std::to_string(hi) + "]");

  const auto first = std::lower_bound(set.points.begin(), set.points.end(), lo,
                                      [](T q, double x) { return static_cast<double>(q) < x; });
  const auto last = std::upper_bound(first, set.points.end(), hi,
                                     [](double x, T q) { return x < static_cast<double>(q); });
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(last - first));
  for (auto it = first; it != last; ++it) {
    const double d = std::abs(static_cast<double>(*it) - base);
    if (d > 0.0 && d <= radius) values.push_back(d);
  }
  return DistanceMultiset(std::move(values), radius, {base});
}

inline DistanceMultiset truncated_distances(std::uint64_t base, const PrimeTable& table, double radius) {
  return truncated_distances(static_cast<double>(base), as_point_set(table), radius);
}

// Sum of the truncated measures of each base point (duplicates count twice).
template <typename T>
DistanceMultiset aggregate_distances(std::span<const double> bases, PointSet<T> set, double radius) {
  DistanceMultiset total({}, radius);
  for (const double b : bases) total += truncated_distances(b, set, radius);
  return total;
}

inline DistanceMultiset aggregate_distances(std::span<const std::uint64_t> bases, const PrimeTable& table,
                                            double radius) {
  DistanceMultiset total({}, radius);
  for (const auto b : bases) total += truncated_distances(b, table, radius);
  return total;
}

}  // namespace logent
