#include "geom.hpp"

#include <algorithm>
#include <limits>

namespace scn {

double wrap_angle(double a) {
  constexpr double kPi = 3.14159265358979323846;
  while (a > kPi) a -= 2.0 * kPi;
  while (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double heading_difference(double a, double b) { return std::abs(wrap_angle(a - b)); }

double interp_angle(double a, double b, double t) {
  return wrap_angle(a + wrap_angle(b - a) * t);
}

Polyline::Polyline(std::vector<Vec2> pts) : pts_(std::move(pts)) {
  cum_.resize(pts_.size(), 0.0);
  for (std::size_t i = 1; i < pts_.size(); ++i) {
    cum_[i] = cum_[i - 1] + distance(pts_[i - 1], pts_[i]);
  }
}

Vec2 Polyline::at_arc(double s) const {
  if (pts_.empty()) return {};
  if (pts_.size() == 1 || s <= 0.0) return pts_.front();
  if (s >= length()) return pts_.back();
  auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  if (i == 0) return pts_.front();
  if (i >= pts_.size()) return pts_.back();
  double seg = cum_[i] - cum_[i - 1];
  double t = seg > 0.0 ? (s - cum_[i - 1]) / seg : 0.0;
  return pts_[i - 1] + (pts_[i] - pts_[i - 1]) * t;
}

Vec2 Polyline::tangent_at(double s) const {
  if (pts_.size() < 2) return {1.0, 0.0};
  s = std::clamp(s, 0.0, length());
  auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
  std::size_t i = static_cast<std::size_t>(it - cum_.begin());
  i = std::clamp<std::size_t>(i, 1, pts_.size() - 1);
  Vec2 d = pts_[i] - pts_[i - 1];
  double n = d.norm();
  return n > 0.0 ? Vec2{d.x / n, d.y / n} : Vec2{1.0, 0.0};
}

Projection Polyline::project(const Vec2& p) const {
  Projection best;
  double best_d2 = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    Vec2 a = pts_[i], b = pts_[i + 1];
    Vec2 ab = b - a;
    double len2 = ab.dot(ab);
    double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    Vec2 foot = a + ab * t;
    double d2 = (p - foot).dot(p - foot);
    if (d2 < best_d2) {
      best_d2 = d2;
      best.segment = i;
      best.foot = foot;
      best.arc = cum_[i] + ab.norm() * t;
      best.lateral = ab.norm() > 0.0 ? ab.cross(p - a) / ab.norm() : 0.0;
    }
  }
  return best;
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    if (point_segment_distance(p, poly[j], poly[i]) < 1e-12) return true;
    bool crosses = (poly[i].y > p.y) != (poly[j].y > p.y);
    if (crosses) {
      double x = poly[j].x + (poly[i].x - poly[j].x) * (p.y - poly[j].y) / (poly[i].y - poly[j].y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double distance_to_polygon(const Vec2& p, const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return std::numeric_limits<double>::max();
  if (point_in_polygon(p, poly)) return 0.0;
  double best = std::numeric_limits<double>::max();
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    best = std::min(best, point_segment_distance(p, poly[j], poly[i]));
  }
  return best;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab = b - a;
  double len2 = ab.dot(ab);
  double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return distance(p, a + ab * t);
}

namespace {

int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  double v = (b - a).cross(c - a);
  if (v > 1e-12) return 1;
  if (v < -1e-12) return -1;
  return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

}  // namespace

bool segments_intersect(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2) {
  int o1 = orient(a1, a2, b1);
  int o2 = orient(a1, a2, b2);
  int o3 = orient(b1, b2, a1);
  int o4 = orient(b1, b2, a2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a1, a2, b1)) return true;
  if (o2 == 0 && on_segment(a1, a2, b2)) return true;
  if (o3 == 0 && on_segment(b1, b2, a1)) return true;
  if (o4 == 0 && on_segment(b1, b2, a2)) return true;
  return false;
}

bool polygon_is_simple(const std::vector<Vec2>& poly) {
  std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 a1 = poly[i], a2 = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip edges sharing a vertex
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      Vec2 b1 = poly[j], b2 = poly[(j + 1) % n];
      if (segments_intersect(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

}  // namespace scn
