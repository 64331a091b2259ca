#pragma once

#include <vector>

namespace shiftstab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  Interval shifted(double dx) const { return {lo + dx, hi + dx}; }
};

/// Finite union of disjoint open intervals, sorted; touching or overlapping pieces are merged.
class SpectrumSet {
 public:
  SpectrumSet() = default;
  explicit SpectrumSet(std::vector<Interval> pieces);

  const std::vector<Interval>& intervals() const { return intervals_; }
  double measure() const { return measure_; }
  bool empty() const { return intervals_.empty(); }
  bool contains(double t) const;

 private:
  std::vector<Interval> intervals_;
  double measure_ = 0.0;
};

}  // namespace shiftstab
