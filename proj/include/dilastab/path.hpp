#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dilastab {

// Strictly increasing, non-empty sequence of times.
//
// Lookups by time are tolerant to a relative mismatch of kMatchTolerance so
// that points produced by exp/log round trips still resolve to the grid point
// they came from.
class TimeGrid {
 public:
  static constexpr double kMatchTolerance = 1e-10;

  explicit TimeGrid(std::vector<double> points);

  static TimeGrid linear(double first, double last, std::size_t count);
  static TimeGrid geometric(double first, double last, std::size_t count);
  // Sorts and removes exact duplicates before validating.
  static TimeGrid from_unsorted(std::vector<double> points);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  std::span<const double> points() const noexcept { return points_; }

  std::optional<std::size_t> find(double t) const;
  // Like find() but throws Error(OffGrid).
  std::size_t index_of(double t) const;
  bool contains(double t) const { return find(t).has_value(); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> points_;
};

// Which process a discretized path represents.
enum class PathRole { L, Y, X, V, Z, D };

std::string_view to_string(PathRole role);

// Path values aligned to a grid, read as a right-continuous step function
// between grid points.
class SamplePath {
 public:
  SamplePath(TimeGrid grid, std::vector<double> values, PathRole role);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::vector<double>& mutable_values() noexcept { return values_; }
  PathRole role() const noexcept { return role_; }
  std::size_t size() const noexcept { return values_.size(); }

  double time(std::size_t i) const { return grid_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  double value_at(double t) const { return values_[grid_.index_of(t)]; }

 private:
  TimeGrid grid_;
  std::vector<double> values_;
  PathRole role_;
};

}  // namespace dilastab
