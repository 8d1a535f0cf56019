#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "polykernel/error.hpp"

namespace polykernel {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  friend bool operator==(const Point3&, const Point3&) = default;
};

using Vector3 = Point3;

inline Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator-(const Point3& a) { return {-a.x, -a.y, -a.z}; }
inline Point3 operator*(double s, const Point3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Point3 operator*(const Point3& a, double s) { return s * a; }

inline double dot(const Vector3& a, const Vector3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vector3 cross(const Vector3& a, const Vector3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vector3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }
inline bool is_finite(const Point3& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

using VertexId = std::uint32_t;

/// Vertex ids of one polygon, counter-clockwise seen from outside the solid.
using Face = std::vector<VertexId>;

struct Polyhedron {
  std::vector<Point3> verts;
  std::vector<Face> faces;

  bool empty() const { return faces.empty(); }
};

/// Oriented plane in Hessian form n.x = d, plus three points lying on it
/// that feed the exact orientation test. (p2-p1)x(p3-p1) points along n.
struct Plane {
  Vector3 n;
  double d = 0.0;
  Point3 p1, p2, p3;

  double signed_distance(const Point3& q) const { return dot(n, q) - d; }
};

enum class Sign : std::uint8_t { Below, Above, Inter };

using SignArray = std::vector<Sign>;

/// Axis-aligned bounding box of the vertices as an 8-vertex, 6-quad solid.
/// An axis of zero extent is inflated by 1e-10 * (1 + max |coordinate|).
Polyhedron aabb(const Polyhedron& p);
Polyhedron aabb(std::span<const Point3> points);

/// Componentwise extrema of the vertices of a box built by aabb().
struct Bounds {
  Point3 min, max;
  double volume() const { return (max.x - min.x) * (max.y - min.y) * (max.z - min.z); }
  bool contains(const Point3& q) const {
    return q.x >= min.x && q.x <= max.x && q.y >= min.y && q.y <= max.y && q.z >= min.z &&
           q.z <= max.z;
  }
};
Bounds bounds(std::span<const Point3> points);

/// Plane through face f with normal -outward_normal. Witness points are
/// face vertices, so the orientation predicate is exact on input data.
Plane plane_from_face(const Polyhedron& p, const Face& f, const Vector3& outward_normal);

/// Newell normal of a polygon, normalized. Throws DegenerateFace when the
/// polygon has no area.
Vector3 face_normal_newell(std::span<const Point3> pts);
Vector3 face_normal_newell(const Polyhedron& p, const Face& f);

/// True when every undirected edge is used by exactly two faces.
bool is_closed(const Polyhedron& p);

/// Volume by the divergence theorem, faces fanned from their first vertex.
/// Positive for outward winding. Throws NotClosed.
double signed_volume(const Polyhedron& p);

/// Checks that face indices are in range and not repeated within a face.
void validate(const Polyhedron& p);

Polyhedron reversed(Polyhedron p);

}  // namespace polykernel
