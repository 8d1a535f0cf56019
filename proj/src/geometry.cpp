#include "polykernel/geometry.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace polykernel {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::DegenerateCap: return "DegenerateCap";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::InputMismatch: return "InputMismatch";
    case ErrorCode::NoProperIntersection: return "NoProperIntersection";
    case ErrorCode::ParallelLine: return "ParallelLine";
    case ErrorCode::TooManyPlanes: return "TooManyPlanes";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Bounds bounds(std::span<const Point3> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "bounding box of an empty point set");
  Bounds b{points.front(), points.front()};
  double max_abs = 0.0;
  for (const Point3& q : points) {
    if (!is_finite(q)) throw Error(ErrorCode::InvalidArgument, "non-finite vertex coordinate");
    b.min = {std::min(b.min.x, q.x), std::min(b.min.y, q.y), std::min(b.min.z, q.z)};
    b.max = {std::max(b.max.x, q.x), std::max(b.max.y, q.y), std::max(b.max.z, q.z)};
    max_abs = std::max({max_abs, std::abs(q.x), std::abs(q.y), std::abs(q.z)});
  }
  const double eps = 1e-10 * (1.0 + max_abs);
  auto inflate = [eps](double& lo, double& hi) {
    if (hi - lo <= 0.0) {
      lo -= eps;
      hi += eps;
    }
  };
  inflate(b.min.x, b.max.x);
  inflate(b.min.y, b.max.y);
  inflate(b.min.z, b.max.z);
  return b;
}

Polyhedron aabb(std::span<const Point3> points) {
  const Bounds b = bounds(points);
  Polyhedron box;
  box.verts.reserve(8);
  // Vertex i takes max along x/y/z when bit 0/1/2 of i is set.
  for (int i = 0; i < 8; ++i) {
    box.verts.push_back({(i & 1) ? b.max.x : b.min.x, (i & 2) ? b.max.y : b.min.y,
                         (i & 4) ? b.max.z : b.min.z});
  }
  box.faces = {
      {0, 2, 3, 1},  // z min
      {4, 5, 7, 6},  // z max
      {0, 1, 5, 4},  // y min
      {2, 6, 7, 3},  // y max
      {0, 4, 6, 2},  // x min
      {1, 3, 7, 5},  // x max
  };
  return box;
}

Polyhedron aabb(const Polyhedron& p) { return aabb(std::span<const Point3>(p.verts)); }

Plane plane_from_face(const Polyhedron& p, const Face& f, const Vector3& outward_normal) {
  if (f.size() < 3) throw Error(ErrorCode::DegenerateFace, "face with fewer than 3 vertices");
  const double len = norm(outward_normal);
  if (!(len > 0.0) || !std::isfinite(len))
    throw Error(ErrorCode::InvalidArgument, "face normal has zero or non-finite length");

  Plane plane;
  plane.n = (-1.0 / len) * outward_normal;

  const Point3& v0 = p.verts[f[0]];
  // Pick the witness pair spanning the largest area along n. Large faces
  // only try consecutive pairs.
  const std::size_t k = f.size();
  double best = 0.0;
  std::size_t bi = 0, bj = 0;
  auto consider = [&](std::size_t i, std::size_t j) {
    const double a = dot(cross(p.verts[f[i]] - v0, p.verts[f[j]] - v0), plane.n);
    if (std::abs(a) > std::abs(best)) {
      best = a;
      bi = i;
      bj = j;
    }
  };
  if (k <= 64) {
    for (std::size_t i = 1; i + 1 < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) consider(i, j);
  } else {
    for (std::size_t i = 1; i + 1 < k; ++i) consider(i, i + 1);
  }
  if (best == 0.0)
    throw Error(ErrorCode::DegenerateFace,
                "face has no affinely independent vertex triple across the given normal");

  plane.p1 = v0;
  plane.p2 = p.verts[f[bi]];
  plane.p3 = p.verts[f[bj]];
  if (best < 0.0) std::swap(plane.p2, plane.p3);
  plane.d = dot(plane.n, v0);
  return plane;
}

Vector3 face_normal_newell(std::span<const Point3> pts) {
  if (pts.size() < 3) throw Error(ErrorCode::DegenerateFace, "polygon with fewer than 3 points");
  Vector3 n;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point3& a = pts[i];
    const Point3& b = pts[(i + 1) % pts.size()];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  const double len = norm(n);
  if (!(len >= 1e-14)) throw Error(ErrorCode::DegenerateFace, "polygon has (near) zero area");
  return (1.0 / len) * n;
}

Vector3 face_normal_newell(const Polyhedron& p, const Face& f) {
  std::vector<Point3> pts;
  pts.reserve(f.size());
  for (VertexId id : f) pts.push_back(p.verts[id]);
  return face_normal_newell(pts);
}

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

bool is_closed(const Polyhedron& p) {
  if (p.faces.empty()) return false;
  std::unordered_map<std::uint64_t, int> uses;
  for (const Face& f : p.faces)
    for (std::size_t i = 0; i < f.size(); ++i) ++uses[edge_key(f[i], f[(i + 1) % f.size()])];
  return std::all_of(uses.begin(), uses.end(), [](const auto& kv) { return kv.second == 2; });
}

double signed_volume(const Polyhedron& p) {
  if (!is_closed(p)) throw Error(ErrorCode::NotClosed, "polyhedron is not closed");
  double six_v = 0.0;
  for (const Face& f : p.faces) {
    const Point3& a = p.verts[f[0]];
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
      six_v += dot(a, cross(p.verts[f[i]], p.verts[f[i + 1]]));
  }
  return six_v / 6.0;
}

void validate(const Polyhedron& p) {
  for (const Point3& v : p.verts)
    if (!is_finite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite vertex coordinate");
  for (std::size_t fi = 0; fi < p.faces.size(); ++fi) {
    const Face& f = p.faces[fi];
    if (f.size() < 3)
      throw Error(ErrorCode::DegenerateFace,
                  "face " + std::to_string(fi) + " has fewer than 3 vertices");
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] >= p.verts.size())
        throw Error(ErrorCode::IndexOutOfRange,
                    "face " + std::to_string(fi) + " references vertex " + std::to_string(f[i]));
      for (std::size_t j = 0; j < i; ++j)
        if (f[i] == f[j])
          throw Error(ErrorCode::DegenerateFace,
                      "face " + std::to_string(fi) + " repeats vertex " + std::to_string(f[i]));
    }
  }
}

Polyhedron reversed(Polyhedron p) {
  for (Face& f : p.faces) std::reverse(f.begin(), f.end());
  return p;
}

}  // namespace polykernel
