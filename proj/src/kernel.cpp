#include "polykernel/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

namespace polykernel {

namespace {

constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

bool same_vertex_set(Face a, Face b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

Point3 line_plane_intersection(const Point3& v1, const Point3& v2, const Plane& plane) {
  const double num = dot(plane.n, v1 - plane.p1);
  const double den = dot(plane.n, v2 - v1);
  if (den == 0.0) throw Error(ErrorCode::ParallelLine, "segment is parallel to the cutting plane");
  const double t = -num / den;
  return v1 + t * (v2 - v1);
}

std::vector<ClipVertex> clip_polygon(std::span<const Sign> signs, const Face& face) {
  if (std::none_of(face.begin(), face.end(), [&](VertexId id) { return signs[id] == Sign::Above; }))
    throw Error(ErrorCode::NoProperIntersection, "polygon has no vertex above the plane");

  std::vector<ClipVertex> out;
  out.reserve(face.size() + 1);
  const std::size_t k = face.size();
  for (std::size_t i = 0; i < k; ++i) {
    const VertexId id1 = face[i];
    const VertexId id2 = face[(i + 1) % k];
    const Sign s1 = signs[id1];
    const Sign s2 = signs[id2];
    switch (classify_edge(s1, s2)) {
      case Sign::Below:
        if (s2 == Sign::Inter) out.push_back({id2});
        break;
      case Sign::Above:
        out.push_back({id2});
        break;
      case Sign::Inter:
        out.push_back({0, true, id1, id2});
        if (s1 == Sign::Below) out.push_back({id2});
        break;
    }
  }
  return out;
}

ClippedPolygon polygon_plane_intersection(std::span<const Point3> verts, const Face& face,
                                          std::span<const Sign> signs, const Plane& plane) {
  ClippedPolygon result;
  result.verts.assign(verts.begin(), verts.end());
  for (const ClipVertex& cv : clip_polygon(signs, face)) {
    if (!cv.fresh) {
      result.face.push_back(cv.id);
      continue;
    }
    result.face.push_back(static_cast<VertexId>(result.verts.size()));
    result.verts.push_back(line_plane_intersection(verts[cv.edge_from], verts[cv.edge_to], plane));
  }
  return result;
}

Face sort_cap_ccw(std::span<const Point3> pts, const Plane& plane) {
  if (pts.size() < 3) throw Error(ErrorCode::DegenerateCap, "cap with fewer than 3 points");

  // Project along the dominant normal axis; (u, v, axis) is right-handed,
  // so increasing polar angle winds around +axis.
  int axis = 0;
  if (std::abs(plane.n.y) > std::abs(plane.n[axis])) axis = 1;
  if (std::abs(plane.n.z) > std::abs(plane.n[axis])) axis = 2;
  const int u = (axis + 1) % 3;
  const int v = (axis + 2) % 3;

  double cu = 0.0, cv = 0.0;
  for (const Point3& q : pts) {
    cu += q[u];
    cv += q[v];
  }
  cu /= static_cast<double>(pts.size());
  cv /= static_cast<double>(pts.size());

  std::vector<double> angle(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    angle[i] = std::atan2(pts[i][v] - cv, pts[i][u] - cu);

  Face order(pts.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return angle[a] < angle[b]; });

  double area2 = 0.0;
  double extent = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point3& a = pts[order[i]];
    const Point3& b = pts[order[(i + 1) % order.size()]];
    area2 += (a[u] - cu) * (b[v] - cv) - (b[u] - cu) * (a[v] - cv);
    extent = std::max({extent, std::abs(a[u] - cu), std::abs(a[v] - cv)});
  }
  if (!(area2 > 1e-14 * extent * extent))
    throw Error(ErrorCode::DegenerateCap, "cap points are collinear");

  if (-plane.n[axis] < 0.0) std::reverse(order.begin(), order.end());
  return order;
}

Polyhedron polyhedron_plane_intersection(const Polyhedron& p, std::span<const Sign> signs,
                                         const Plane& plane) {
  Polyhedron a;
  SignArray a_signs;
  std::vector<VertexId> remap(p.verts.size(), kNoVertex);
  std::unordered_map<std::uint64_t, VertexId> fresh;

  auto keep = [&](VertexId id) {
    if (remap[id] == kNoVertex) {
      remap[id] = static_cast<VertexId>(a.verts.size());
      a.verts.push_back(p.verts[id]);
      a_signs.push_back(signs[id]);
    }
    return remap[id];
  };

  auto crossing = [&](VertexId from, VertexId to) {
    auto [it, inserted] = fresh.try_emplace(edge_key(from, to), kNoVertex);
    if (inserted) {
      // Same endpoint order for both faces sharing the edge.
      const VertexId lo = std::min(from, to), hi = std::max(from, to);
      it->second = static_cast<VertexId>(a.verts.size());
      a.verts.push_back(line_plane_intersection(p.verts[lo], p.verts[hi], plane));
      a_signs.push_back(Sign::Inter);
    }
    return it->second;
  };

  std::vector<Sign> face_signs;
  for (const Face& f : p.faces) {
    face_signs.clear();
    bool any_above = false;
    for (VertexId id : f) {
      face_signs.push_back(signs[id]);
      any_above |= signs[id] == Sign::Above;
    }

    Face out;
    switch (classify_face(face_signs)) {
      case Sign::Below:
        continue;
      case Sign::Above:
        out.reserve(f.size());
        for (VertexId id : f) out.push_back(keep(id));
        break;
      case Sign::Inter:
        // Touches the plane from below only.
        if (!any_above) continue;
        for (const ClipVertex& cv : clip_polygon(signs, f))
          out.push_back(cv.fresh ? crossing(cv.edge_from, cv.edge_to) : keep(cv.id));
        break;
    }
    if (out.size() >= 3) a.faces.push_back(std::move(out));
  }

  std::vector<VertexId> cap_ids;
  std::vector<Point3> cap_pts;
  for (VertexId i = 0; i < a.verts.size(); ++i) {
    if (a_signs[i] == Sign::Inter) {
      cap_ids.push_back(i);
      cap_pts.push_back(a.verts[i]);
    }
  }
  if (cap_ids.size() < 3) return a;

  Face cap;
  try {
    cap = sort_cap_ccw(cap_pts, plane);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateCap) throw;
    return a;
  }
  for (VertexId& id : cap) id = cap_ids[id];

  const bool duplicate =
      std::any_of(a.faces.begin(), a.faces.end(), [&](const Face& f) { return same_vertex_set(f, cap); });
  if (!duplicate) a.faces.push_back(std::move(cap));
  return a;
}

KernelResult polyhedron_kernel(const Polyhedron& p, std::span<const Vector3> outward_normals,
                               const KernelOptions& opts) {
  if (!(opts.tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
  if (outward_normals.size() != p.faces.size())
    throw Error(ErrorCode::InputMismatch, "expected one normal per face (" +
                                              std::to_string(p.faces.size()) + "), got " +
                                              std::to_string(outward_normals.size()));
  if (p.verts.empty()) throw Error(ErrorCode::EmptyInput, "polyhedron has no vertices");
  validate(p);

  std::vector<Plane> planes;
  planes.reserve(p.faces.size());
  for (std::size_t i = 0; i < p.faces.size(); ++i)
    planes.push_back(plane_from_face(p, p.faces[i], outward_normals[i]));

  std::vector<std::size_t> order(p.faces.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (opts.shuffle) {
    std::mt19937_64 rng(opts.seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }

  Polyhedron k = aabb(p);
  const double empty_volume = 1e-12 * bounds(p.verts).volume();

  KernelResult result;
  SignArray signs;
  for (std::size_t fi : order) {
    ++result.iterations;
    const Plane& plane = planes[fi];
    signs = classify_points(plane, k.verts, opts.tolerance);
    if (opts.mark_face_vertices) {
      for (VertexId fv : p.faces[fi])
        for (std::size_t i = 0; i < k.verts.size(); ++i)
          if (k.verts[i] == p.verts[fv]) signs[i] = Sign::Inter;
    }
    if (std::none_of(signs.begin(), signs.end(), [](Sign s) { return s == Sign::Below; })) continue;

    k = polyhedron_plane_intersection(k, signs, plane);
    if (k.faces.size() < 3) return result;
  }

  if (k.faces.size() < 4 || k.verts.size() < 4) return result;
  const double volume = signed_volume(k);
  if (volume <= empty_volume) return result;

  result.status = KernelStatus::NonEmpty;
  result.volume = volume;
  result.kernel = std::move(k);
  return result;
}

}  // namespace polykernel
