// Copyright 2026 The Unimotion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unimotion/geom.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace unimotion {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * kPi;

// Sine of the turning angle below which three hull vertices count as
// collinear.
constexpr double kCollinearTolerance = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment_collinear(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                        const Vec2& b1) {
  const int o1 = orientation(a0, a1, b0);
  const int o2 = orientation(a0, a1, b1);
  const int o3 = orientation(b0, b1, a0);
  const int o4 = orientation(b0, b1, a1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment_collinear(a0, a1, b0)) return true;
  if (o2 == 0 && on_segment_collinear(a0, a1, b1)) return true;
  if (o3 == 0 && on_segment_collinear(b0, b1, a0)) return true;
  if (o4 == 0 && on_segment_collinear(b0, b1, a1)) return true;
  return false;
}

// Turning test with a scale-free collinearity tolerance. The tolerance only
// merges a that lies between o and b; when a doubles back past o (ties in the
// sort order) the exact sign decides, or a true vertex would be dropped.
bool turns_left(const Vec2& o, const Vec2& a, const Vec2& b) {
  const Vec2 u = a - o;
  const Vec2 v = b - o;
  const double c = cross(u, v);
  if (dot(u, v) < 0.0) return c > 0.0;
  return c > kCollinearTolerance * norm(u) * norm(v);
}

bool inside_polygon(const Vec2& p, const Polygon& poly) {
  if (!poly.has_interior()) return false;
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(v[(i + 1) % n] - v[i], p - v[i]) < 0.0) return false;
  }
  return true;
}

template <class Fn>
void for_each_edge(const Polygon& poly, Fn&& fn) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  if (n == 1) {
    fn(v[0], v[0]);
  } else if (n == 2) {
    fn(v[0], v[1]);
  } else {
    for (std::size_t i = 0; i < n; ++i) fn(v[i], v[(i + 1) % n]);
  }
}

template <class Fn>
void for_each_chain_segment(const PointChain& chain, Fn&& fn) {
  const auto& p = chain.points;
  if (p.size() == 1) {
    fn(p[0], p[0]);
  } else {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) fn(p[i], p[i + 1]);
  }
}

double distance_point_polygon(const Vec2& p, const Polygon& poly) {
  if (poly.empty()) return kInf;
  if (inside_polygon(p, poly)) return 0.0;
  double best = kInf;
  for_each_edge(poly, [&](const Vec2& a, const Vec2& b) {
    best = std::min(best, distance_point_to_segment(p, a, b));
  });
  return best;
}

double distance_segment_polygon(const Vec2& a, const Vec2& b,
                                const Polygon& poly) {
  if (poly.empty()) return kInf;
  if (inside_polygon(a, poly) || inside_polygon(b, poly)) return 0.0;
  double best = kInf;
  for_each_edge(poly, [&](const Vec2& e0, const Vec2& e1) {
    best = std::min(best, distance_segment_to_segment(a, b, e0, e1));
  });
  return best;
}

double distance_polygon_polygon(const Polygon& a, const Polygon& b) {
  if (a.empty() || b.empty()) return kInf;
  if (inside_polygon(a.vertices().front(), b) ||
      inside_polygon(b.vertices().front(), a)) {
    return 0.0;
  }
  double best = kInf;
  for_each_edge(a, [&](const Vec2& a0, const Vec2& a1) {
    for_each_edge(b, [&](const Vec2& b0, const Vec2& b1) {
      best = std::min(best, distance_segment_to_segment(a0, a1, b0, b1));
    });
  });
  return best;
}

double distance_point_chain(const Vec2& p, const PointChain& chain) {
  double best = kInf;
  for_each_chain_segment(chain, [&](const Vec2& a, const Vec2& b) {
    best = std::min(best, distance_point_to_segment(p, a, b));
  });
  return best;
}

// Convex pieces whose union is the set: a disk plus a polygon at most.
struct Pieces {
  const Disk* disk = nullptr;
  Polygon polygon;
  bool has_polygon = false;
};

Pieces convex_pieces(const ConvexSet& set) {
  Pieces out;
  std::visit(Overloaded{
                 [&](const Disk& d) { out.disk = &d; },
                 [&](const Polygon& p) {
                   out.polygon = p;
                   out.has_polygon = true;
                 },
                 [&](const ConeHull& c) {
                   out.disk = &c.disk;
                   if (!c.apex_inside_disk()) {
                     out.polygon = c.triangle();
                     out.has_polygon = true;
                   }
                 },
                 [&](const PointChain&) {},
             },
             set);
  return out;
}

double distance_disk_disk(const Disk& a, const Disk& b) {
  return std::max(0.0, distance(a.center, b.center) - a.radius - b.radius);
}

double distance_pieces(const Pieces& a, const Pieces& b) {
  double best = kInf;
  if (a.disk && b.disk) best = std::min(best, distance_disk_disk(*a.disk, *b.disk));
  if (a.disk && b.has_polygon) {
    best = std::min(best, std::max(0.0, distance_point_polygon(a.disk->center,
                                                               b.polygon) -
                                            a.disk->radius));
  }
  if (a.has_polygon && b.disk) {
    best = std::min(best, std::max(0.0, distance_point_polygon(b.disk->center,
                                                               a.polygon) -
                                            b.disk->radius));
  }
  if (a.has_polygon && b.has_polygon) {
    best = std::min(best, distance_polygon_polygon(a.polygon, b.polygon));
  }
  return best;
}

double distance_segment_pieces(const Vec2& s0, const Vec2& s1,
                               const Pieces& p) {
  double best = kInf;
  if (p.disk) {
    best = std::max(
        0.0, distance_point_to_segment(p.disk->center, s0, s1) - p.disk->radius);
  }
  if (p.has_polygon) {
    best = std::min(best, distance_segment_polygon(s0, s1, p.polygon));
  }
  return best;
}

double distance_chain_set(const PointChain& chain, const ConvexSet& other) {
  double best = kInf;
  if (const auto* oc = std::get_if<PointChain>(&other)) {
    for_each_chain_segment(chain, [&](const Vec2& a0, const Vec2& a1) {
      for_each_chain_segment(*oc, [&](const Vec2& b0, const Vec2& b1) {
        best = std::min(best, distance_segment_to_segment(a0, a1, b0, b1));
      });
    });
    return best;
  }
  const Pieces pieces = convex_pieces(other);
  for_each_chain_segment(chain, [&](const Vec2& a, const Vec2& b) {
    if (best > 0.0) best = std::min(best, distance_segment_pieces(a, b, pieces));
  });
  return best;
}

double depth_in_polygon(const Vec2& p, const Polygon& poly) {
  if (!inside_polygon(p, poly)) return -distance_point_polygon(p, poly);
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  double depth = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v[(i + 1) % n] - v[i];
    depth = std::min(depth, cross(e, p - v[i]) / norm(e));
  }
  return depth;
}

double depth_in_cone_hull(const Vec2& p, const ConeHull& cone) {
  const Disk& disk = cone.disk;
  const double disk_depth = disk.radius - distance(p, disk.center);
  if (cone.apex_inside_disk()) return disk_depth;
  const Polygon tri = cone.triangle();
  const double outside =
      std::min(std::max(0.0, -disk_depth), distance_point_polygon(p, tri));
  if (outside > 0.0) return -outside;
  const auto [t1, t2] = cone.tangent_points();
  double depth = std::min(distance_point_to_segment(p, cone.apex, t1),
                          distance_point_to_segment(p, cone.apex, t2));
  // The far arc between the tangent points is the rest of the boundary.
  const Vec2 to_apex = cone.apex - disk.center;
  const double d = norm(to_apex);
  const Vec2 rel = p - disk.center;
  const double r = norm(rel);
  if (r == 0.0 || dot(rel, to_apex) / (r * d) <= disk.radius / d) {
    depth = std::min(depth, disk_depth);
  }
  return depth;
}

bool point_within(const Vec2& p, const ConvexSet& outer, double tol) {
  return distance_point_to_set(p, outer) <= tol;
}

bool disk_within(const Disk& d, const ConvexSet& outer, double tol) {
  if (std::holds_alternative<PointChain>(outer)) {
    return d.radius <= tol && distance_point_to_set(d.center, outer) <= tol - d.radius;
  }
  return depth_in_set(d.center, outer) >= d.radius - tol;
}

// Chain-in-chain test. Consecutive inner points usually sit next to the same
// outer segment, so the search starts at the previous hit.
bool chain_within_chain(const PointChain& inner, const PointChain& outer,
                        double tol) {
  const auto& q = outer.points;
  if (q.empty()) return inner.points.empty();
  const std::size_t segments = q.size() == 1 ? 1 : q.size() - 1;
  auto seg_distance = [&](const Vec2& p, std::size_t i) {
    if (q.size() == 1) return distance(p, q[0]);
    return distance_point_to_segment(p, q[i], q[i + 1]);
  };
  std::size_t hint = 0;
  for (const Vec2& p : inner.points) {
    bool found = false;
    for (std::size_t k = 0; k < segments && !found; ++k) {
      // Alternate forward and backward from the hint.
      const std::size_t step = (k + 1) / 2;
      std::size_t i;
      if (k % 2 == 1) {
        if (hint + step >= segments) continue;
        i = hint + step;
      } else {
        if (step > hint) continue;
        i = hint - step;
      }
      if (seg_distance(p, i) <= tol) {
        hint = i;
        found = true;
      }
    }
    if (!found) {
      // The alternating walk skips indices once one side runs out.
      for (std::size_t i = 0; i < segments && !found; ++i) {
        if (seg_distance(p, i) <= tol) {
          hint = i;
          found = true;
        }
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

double wrap_angle(double radians) {
  double m = std::fmod(radians + kPi, kTwoPi);
  if (m < 0.0) m += kTwoPi;
  double r = m - kPi;
  if (r >= kPi) r -= kTwoPi;
  return r;
}

Vec2 rotate(double theta, const Vec2& v) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 heading_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

Vec2 normal_vector(double theta) {
  return {-std::sin(theta), std::cos(theta)};
}

double angle_between(const Vec2& u, const Vec2& v) {
  if ((u.x == 0.0 && u.y == 0.0) || (v.x == 0.0 && v.y == 0.0)) {
    throw std::domain_error("angle_between: zero vector");
  }
  const double a = std::atan2(cross(u, v), dot(u, v));
  return a >= kPi ? a - 2.0 * kPi : a;
}

Vec2 closest_point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

double distance_point_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  return distance(p, closest_point_on_segment(p, a, b));
}

double distance_segment_to_segment(const Vec2& a0, const Vec2& a1,
                                   const Vec2& b0, const Vec2& b1) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  return std::min({distance_point_to_segment(a0, b0, b1),
                   distance_point_to_segment(a1, b0, b1),
                   distance_point_to_segment(b0, a0, a1),
                   distance_point_to_segment(b1, a0, a1)});
}

Vec2 reflect_across_line(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return p;
  const Vec2 foot = a + (dot(p - a, ab) / len2) * ab;
  return 2.0 * foot - p;
}

Polygon Polygon::hull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Polygon out;
  if (pts.size() <= 2) {
    out.vertices_ = std::move(pts);
    return out;
  }
  // Andrew's monotone chain.
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && !turns_left(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2& p = pts[i];
    while (k >= lower && !turns_left(h[k - 2], h[k - 1], p)) --k;
    h[k++] = p;
  }
  h.resize(k - 1);
  if (h.size() == 2 && h[0] == h[1]) h.resize(1);
  out.vertices_ = std::move(h);
  return out;
}

Polygon Polygon::from_convex_vertices(std::span<const Vec2> vertices) {
  const std::size_t n = vertices.size();
  if (n == 0) throw std::invalid_argument("polygon: no vertices");
  if (n >= 3) {
    int sign = 0;
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e0 = vertices[(i + 1) % n] - vertices[i];
      const Vec2 e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
      if (norm(e0) == 0.0 || norm(e1) == 0.0) continue;
      const double c = cross(e0, e1);
      if (std::abs(c) <= kCollinearTolerance * norm(e0) * norm(e1)) continue;
      const int s = c > 0.0 ? 1 : -1;
      if (sign != 0 && s != sign) {
        throw std::invalid_argument("polygon: vertices are not convex");
      }
      sign = s;
      turning += std::atan2(c, dot(e0, e1));
    }
    if (sign != 0 && std::abs(std::abs(turning) - kTwoPi) > 1e-6) {
      throw std::invalid_argument("polygon: vertices self-intersect");
    }
  }
  return hull(vertices);
}

double Polygon::area() const {
  const std::size_t n = vertices_.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(vertices_[i], vertices_[(i + 1) % n]);
  }
  return 0.5 * twice;
}

std::pair<Vec2, Vec2> ConeHull::tangent_points() const {
  const Vec2 axis = disk.center - apex;
  const double d = norm(axis);
  if (d == 0.0) return {apex, apex};
  const double alpha = std::asin(std::clamp(disk.radius / d, 0.0, 1.0));
  const double c = std::cos(alpha);
  return {apex + c * rotate(-alpha, axis), apex + c * rotate(alpha, axis)};
}

Polygon ConeHull::triangle() const {
  const auto [t1, t2] = tangent_points();
  const Vec2 pts[] = {apex, t1, t2};
  return Polygon::hull(pts);
}

double distance_point_to_set(const Vec2& p, const ConvexSet& set) {
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            return std::max(0.0, distance(p, d.center) - d.radius);
          },
          [&](const Polygon& poly) { return distance_point_polygon(p, poly); },
          [&](const ConeHull& c) {
            const double to_disk =
                std::max(0.0, distance(p, c.disk.center) - c.disk.radius);
            if (c.apex_inside_disk() || to_disk == 0.0) return to_disk;
            return std::min(to_disk, distance_point_polygon(p, c.triangle()));
          },
          [&](const PointChain& chain) { return distance_point_chain(p, chain); },
      },
      set);
}

double distance_between_sets(const ConvexSet& a, const ConvexSet& b) {
  if (const auto* chain = std::get_if<PointChain>(&a)) {
    return distance_chain_set(*chain, b);
  }
  if (const auto* chain = std::get_if<PointChain>(&b)) {
    return distance_chain_set(*chain, a);
  }
  return distance_pieces(convex_pieces(a), convex_pieces(b));
}

double depth_in_set(const Vec2& p, const ConvexSet& set) {
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return d.radius - distance(p, d.center); },
          [&](const Polygon& poly) { return depth_in_polygon(p, poly); },
          [&](const ConeHull& c) { return depth_in_cone_hull(p, c); },
          [&](const PointChain& chain) { return -distance_point_chain(p, chain); },
      },
      set);
}

double support(const ConvexSet& set, const Vec2& direction) {
  auto max_over = [&](const std::vector<Vec2>& pts) {
    double best = -kInf;
    for (const Vec2& p : pts) best = std::max(best, dot(direction, p));
    return best;
  };
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            return dot(direction, d.center) + d.radius * norm(direction);
          },
          [&](const Polygon& poly) { return max_over(poly.vertices()); },
          [&](const ConeHull& c) {
            return std::max(dot(direction, c.apex),
                            dot(direction, c.disk.center) +
                                c.disk.radius * norm(direction));
          },
          [&](const PointChain& chain) { return max_over(chain.points); },
      },
      set);
}

double max_distance_from(const ConvexSet& set, const Vec2& p) {
  auto max_over = [&](const std::vector<Vec2>& pts) {
    double best = 0.0;
    for (const Vec2& q : pts) best = std::max(best, distance(p, q));
    return best;
  };
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return distance(p, d.center) + d.radius; },
          [&](const Polygon& poly) { return max_over(poly.vertices()); },
          [&](const ConeHull& c) {
            return std::max(distance(p, c.apex),
                            distance(p, c.disk.center) + c.disk.radius);
          },
          [&](const PointChain& chain) { return max_over(chain.points); },
      },
      set);
}

bool contains_set(const ConvexSet& outer, const ConvexSet& inner,
                  double tolerance) {
  // Absorbs rounding in tangency configurations, e.g. a cone hull against
  // its own disk.
  const double tol =
      tolerance + 1e-13 * std::max(1.0, max_distance_from(inner, Vec2{}));
  if (const auto* outer_chain = std::get_if<PointChain>(&outer)) {
    if (const auto* inner_chain = std::get_if<PointChain>(&inner)) {
      return chain_within_chain(*inner_chain, *outer_chain, tol);
    }
  }
  return std::visit(
      Overloaded{
          [&](const Disk& d) { return disk_within(d, outer, tol); },
          [&](const Polygon& poly) {
            return std::all_of(poly.vertices().begin(), poly.vertices().end(),
                               [&](const Vec2& v) {
                                 return point_within(v, outer, tol);
                               });
          },
          [&](const ConeHull& c) {
            return point_within(c.apex, outer, tol) &&
                   disk_within(c.disk, outer, tol);
          },
          [&](const PointChain& chain) {
            return std::all_of(chain.points.begin(), chain.points.end(),
                               [&](const Vec2& v) {
                                 return point_within(v, outer, tol);
                               });
          },
      },
      inner);
}

}  // namespace unimotion
