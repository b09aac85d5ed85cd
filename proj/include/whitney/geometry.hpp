#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace whitney {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 lerp(Vec2 a, Vec2 b, double s) { return a + s * (b - a); }
inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Integer translation of the plane; deck transformations of the torus cover.
struct IVec2 {
  long a = 0;
  long b = 0;

  friend bool operator==(IVec2, IVec2) = default;
  friend auto operator<=>(IVec2, IVec2) = default;
};

inline IVec2 operator+(IVec2 p, IVec2 q) { return {p.a + q.a, p.b + q.b}; }
inline IVec2 operator-(IVec2 p, IVec2 q) { return {p.a - q.a, p.b - q.b}; }
inline IVec2 operator-(IVec2 p) { return {-p.a, -p.b}; }
inline Vec2 to_vec(IVec2 p) { return {static_cast<double>(p.a), static_cast<double>(p.b)}; }
inline IVec2 round_to_lattice(Vec2 v) { return {std::lround(v.x), std::lround(v.y)}; }

using Polyline = std::vector<Vec2>;

double polyline_length(std::span<const Vec2> pts);

// One transversal meeting of segment `first` of polyline A with segment
// `second` of polyline B (translated by -offset), i.e.
//   A[first] + first_frac * dA  ==  B[second] + second_frac * dB + offset.
// Fractions live in the half-open interval [0, 1).
struct SegmentHit {
  std::size_t first = 0;
  double first_frac = 0.0;
  std::size_t second = 0;
  double second_frac = 0.0;
  Vec2 location;  // on A
  IVec2 offset;
  double det = 0.0;        // cross(dA, dB)
  double sin_angle = 0.0;  // |det| / (|dA| |dB|)
};

// All meetings between segments of two open polylines. With `periodic`
// set, meetings are taken modulo the integer lattice (flat torus cover).
std::vector<SegmentHit> intersect_polylines(std::span<const Vec2> a,
                                            std::span<const Vec2> b,
                                            bool periodic);

// Self-meetings of a closed polyline given as N+1 vertices whose last vertex
// equals the first one translated by `closure`. Each crossing is reported
// once with first < second; adjacent segments are skipped.
std::vector<SegmentHit> self_intersections(std::span<const Vec2> closed,
                                           bool periodic, IVec2 closure = {});

}  // namespace whitney
