#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polykernel/geometry.hpp"
#include "polykernel/predicates.hpp"

namespace polykernel {

struct KernelOptions {
  bool shuffle = false;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  /// Label kernel vertices that coincide exactly with a vertex of the
  /// cutting face as INTER without running the predicate.
  bool mark_face_vertices = false;
};

enum class KernelStatus { NonEmpty, Empty };

struct KernelResult {
  KernelStatus status = KernelStatus::Empty;
  std::optional<Polyhedron> kernel;
  std::size_t iterations = 0;
  double volume = 0.0;

  bool star_shaped() const { return status == KernelStatus::NonEmpty; }
};

/// Kernel of a closed polyhedron: the AABB clipped by the inner half-space
/// of every face plane. `outward_normals` holds one outward normal per face.
KernelResult polyhedron_kernel(const Polyhedron& p, std::span<const Vector3> outward_normals,
                               const KernelOptions& opts = {});

/// Part of the convex polyhedron `p` on the normal side of `plane`, closed
/// with a cap face. `signs` classifies p.verts against the plane.
Polyhedron polyhedron_plane_intersection(const Polyhedron& p, std::span<const Sign> signs,
                                         const Plane& plane);

/// One vertex of a clipped polygon: either an existing id, or a new point
/// on the edge (edge_from, edge_to).
struct ClipVertex {
  VertexId id = 0;
  bool fresh = false;
  VertexId edge_from = 0;
  VertexId edge_to = 0;
};

/// Edge walk over `face`, keeping the part on the normal side of the plane.
/// Throws NoProperIntersection when no vertex of the face is ABOVE.
std::vector<ClipVertex> clip_polygon(std::span<const Sign> signs, const Face& face);

struct ClippedPolygon {
  std::vector<Point3> verts;
  Face face;
};

/// Standalone polygon clipping. The result keeps the original vertex
/// array and appends one point per crossing edge; new ids start at
/// verts.size().
ClippedPolygon polygon_plane_intersection(std::span<const Point3> verts, const Face& face,
                                          std::span<const Sign> signs, const Plane& plane);

/// v1 + t (v2 - v1) with t = -n.(v1 - p1) / n.(v2 - v1). Throws
/// ParallelLine when the denominator is zero.
Point3 line_plane_intersection(const Point3& v1, const Point3& v2, const Plane& plane);

/// Counter-clockwise cycle over points lying on `plane`, wound so its
/// normal is -plane.n. Returns indices into `pts`. Throws DegenerateCap.
Face sort_cap_ccw(std::span<const Point3> pts, const Plane& plane);

}  // namespace polykernel
