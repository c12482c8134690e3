#ifndef SCNMINE_GEOM_HPP
#define SCNMINE_GEOM_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace scn {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

/// Absolute angular difference in [0, pi].
double heading_difference(double a, double b);

/// Shortest-path interpolation between two angles (t in [0,1]).
double interp_angle(double a, double b, double t);

struct Projection {
  double arc = 0.0;      // arc length along the polyline at the foot point
  double lateral = 0.0;  // signed offset, positive to the left of travel
  std::size_t segment = 0;
  Vec2 foot;
};

/// A polyline with cached cumulative arc lengths.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Vec2> pts);

  const std::vector<Vec2>& points() const { return pts_; }
  double length() const { return cum_.empty() ? 0.0 : cum_.back(); }
  std::size_t size() const { return pts_.size(); }

  /// Position at a given arc length (clamped to [0, length]).
  Vec2 at_arc(double s) const;
  /// Unit tangent at a given arc length.
  Vec2 tangent_at(double s) const;
  /// Closest-point projection of p onto the polyline.
  Projection project(const Vec2& p) const;

 private:
  std::vector<Vec2> pts_;
  std::vector<double> cum_;
};

/// Point-in-polygon test (even-odd rule); boundary points count as inside.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly);

/// Distance from a point to a polygon (0 if inside).
double distance_to_polygon(const Vec2& p, const std::vector<Vec2>& poly);

/// True if the closed polygon is simple (no self intersections).
bool polygon_is_simple(const std::vector<Vec2>& poly);

/// Proper or touching intersection of segments [a1,a2] and [b1,b2].
bool segments_intersect(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

}  // namespace scn

#endif
