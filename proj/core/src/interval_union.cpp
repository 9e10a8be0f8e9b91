#include "ietlab/interval_union.hpp"

#include <algorithm>

namespace ietlab {

void IntervalUnion::normalize() {
  std::vector<Interval> keep;
  keep.reserve(parts_.size());
  for (const auto& p : parts_)
    if (!p.empty()) keep.push_back(p);
  std::sort(keep.begin(), keep.end(),
            [](const Interval& a, const Interval& b) { return a.a < b.a; });
  parts_.clear();
  for (const auto& p : keep) {
    if (!parts_.empty() && p.a <= parts_.back().b) {
      parts_.back().b = std::max(parts_.back().b, p.b);
    } else {
      parts_.push_back(p);
    }
  }
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& o) const {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < parts_.size() && j < o.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = o.parts_[j];
    double lo = std::max(a.a, b.a), hi = std::min(a.b, b.b);
    if (lo < hi) out.push_back({lo, hi});
    if (a.b < b.b)
      ++i;
    else
      ++j;
  }
  IntervalUnion r;
  r.parts_ = std::move(out);
  return r;
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& o) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), o.parts_.begin(), o.parts_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::subtract(const IntervalUnion& o) const {
  std::vector<Interval> out;
  for (const auto& a : parts_) {
    double pos = a.a;
    auto it = std::lower_bound(
        o.parts_.begin(), o.parts_.end(), pos,
        [](const Interval& iv, double x) { return iv.b <= x; });
    for (; it != o.parts_.end(); ++it) {
      const Interval& b = *it;
      if (b.a >= a.b) break;
      if (b.a > pos) out.push_back({pos, std::min(b.a, a.b)});
      pos = std::max(pos, b.b);
      if (pos >= a.b) break;
    }
    if (pos < a.b) out.push_back({pos, a.b});
  }
  IntervalUnion r;
  r.parts_ = std::move(out);
  return r;
}

IntervalUnion IntervalUnion::translate(double t) const {
  std::vector<Interval> out = parts_;
  for (auto& p : out) {
    p.a += t;
    p.b += t;
  }
  IntervalUnion r;
  r.parts_ = std::move(out);
  return r;
}

bool IntervalUnion::contains(double x) const {
  for (const auto& p : parts_)
    if (p.contains(x)) return true;
  return false;
}

IntervalUnion IntervalUnion::preimage(const Iet<double>& T, const IntervalUnion& u) {
  std::vector<Interval> out;
  for (int a = 0; a < T.d(); ++a) {
    const double w = T.translation(a);
    const Interval dom{T.left(a), T.right(a)};
    for (const auto& p : u.parts()) {
      double lo = std::max(p.a - w, dom.a);
      double hi = std::min(p.b - w, dom.b);
      if (lo < hi) out.push_back({lo, hi});
    }
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::image(const Iet<double>& T, const IntervalUnion& u) {
  std::vector<Interval> out;
  for (int a = 0; a < T.d(); ++a) {
    const double w = T.translation(a);
    const Interval dom{T.left(a), T.right(a)};
    for (const auto& p : u.parts()) {
      double lo = std::max(p.a, dom.a);
      double hi = std::min(p.b, dom.b);
      if (lo < hi) out.push_back({lo + w, hi + w});
    }
  }
  return IntervalUnion(std::move(out));
}

}  // namespace ietlab
