#pragma once

#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/types.hpp"

namespace ietlab {

// Finite union of disjoint half-open intervals, kept sorted and merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {
    normalize();
  }
  static IntervalUnion single(Interval iv) { return IntervalUnion({iv}); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  double measure() const {
    double m = 0.0;
    for (const auto& p : parts_) m += p.length();
    return m;
  }

  IntervalUnion intersect(const IntervalUnion& o) const;
  IntervalUnion unite(const IntervalUnion& o) const;
  IntervalUnion subtract(const IntervalUnion& o) const;
  IntervalUnion translate(double t) const;
  bool contains(double x) const;
  bool disjoint_from(const IntervalUnion& o) const {
    return intersect(o).measure() == 0.0;
  }

  // Exact preimage/image through an interval exchange.
  static IntervalUnion preimage(const Iet<double>& T, const IntervalUnion& u);
  static IntervalUnion image(const Iet<double>& T, const IntervalUnion& u);

 private:
  void normalize();
  std::vector<Interval> parts_;
};

}  // namespace ietlab
