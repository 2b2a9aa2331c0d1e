#include "dilastab/path.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dilastab/error.hpp"

namespace dilastab {

namespace {

bool matches(double grid_point, double t) {
  return std::abs(grid_point - t) <=
         TimeGrid::kMatchTolerance * std::max(1.0, std::abs(t));
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::InvalidGrid, "time grid must not be empty");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) {
      throw Error(ErrorCode::InvalidGrid, "time grid contains a non-finite point");
    }
    if (i > 0 && !(points_[i] > points_[i - 1])) {
      std::ostringstream os;
      os << "time grid not strictly increasing at index " << i << " (" << points_[i - 1]
         << " >= " << points_[i] << ")";
      throw Error(ErrorCode::InvalidGrid, os.str());
    }
  }
}

TimeGrid TimeGrid::linear(double first, double last, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidGrid, "grid needs at least one point");
  if (count == 1) return TimeGrid({first});
  std::vector<double> pts(count);
  const double step = (last - first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = first + step * static_cast<double>(i);
  pts.back() = last;
  return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::geometric(double first, double last, std::size_t count) {
  if (!(first > 0.0) || !(last > 0.0)) {
    throw Error(ErrorCode::InvalidGrid, "geometric grid needs positive endpoints");
  }
  if (count == 0) throw Error(ErrorCode::InvalidGrid, "grid needs at least one point");
  if (count == 1) return TimeGrid({first});
  std::vector<double> pts(count);
  const double lo = std::log(first);
  const double step = (std::log(last) - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = std::exp(lo + step * static_cast<double>(i));
  pts.front() = first;
  pts.back() = last;
  return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::from_unsorted(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return TimeGrid(std::move(points));
}

std::optional<std::size_t> TimeGrid::find(double t) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), t);
  std::optional<std::size_t> best;
  double best_gap = 0.0;
  auto consider = [&](std::vector<double>::const_iterator c) {
    if (c == points_.end() || !matches(*c, t)) return;
    const double gap = std::abs(*c - t);
    if (!best || gap < best_gap) {
      best = static_cast<std::size_t>(c - points_.begin());
      best_gap = gap;
    }
  };
  consider(it);
  if (it != points_.begin()) consider(std::prev(it));
  return best;
}

std::size_t TimeGrid::index_of(double t) const {
  if (auto i = find(t)) return *i;
  std::ostringstream os;
  os.precision(17);
  os << "time " << t << " is not a grid point";
  throw Error(ErrorCode::OffGrid, os.str());
}

std::string_view to_string(PathRole role) {
  switch (role) {
    case PathRole::L: return "L";
    case PathRole::Y: return "Y";
    case PathRole::X: return "X";
    case PathRole::V: return "V";
    case PathRole::Z: return "Z";
    case PathRole::D: return "D";
  }
  return "?";
}

SamplePath::SamplePath(TimeGrid grid, std::vector<double> values, PathRole role)
    : grid_(std::move(grid)), values_(std::move(values)), role_(role) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCode::InvalidArgument, "path values and grid differ in length");
  }
  if (role_ == PathRole::X && grid_.front() == 0.0 && values_.front() != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "X path must vanish at t = 0");
  }
}

}  // namespace dilastab
