#include "polykernel/oracle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "polykernel/predicates.hpp"

namespace polykernel::oracle {

namespace {

using Rational = mpq_class;
using ExactVector = std::array<Rational, 3>;

/// Inner half-space a.x >= d, with exact coefficients.
struct HalfSpace {
  ExactVector a;
  Rational d;
  double inv_norm = 1.0;
};

ExactVector exact(const Point3& p) { return {Rational(p.x), Rational(p.y), Rational(p.z)}; }

Rational exact_dot(const ExactVector& a, const ExactVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

ExactVector exact_cross(const ExactVector& a, const ExactVector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

HalfSpace make_halfspace(ExactVector a, Rational d) {
  HalfSpace h;
  const double nx = a[0].get_d(), ny = a[1].get_d(), nz = a[2].get_d();
  h.inv_norm = 1.0 / std::sqrt(nx * nx + ny * ny + nz * nz);
  h.a = std::move(a);
  h.d = std::move(d);
  return h;
}

// Exact Newell vector of the face, flipped to point inward.
HalfSpace face_halfspace(const Polyhedron& p, const Face& f, const Vector3& outward) {
  ExactVector nrm{Rational(0), Rational(0), Rational(0)};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ExactVector a = exact(p.verts[f[i]]);
    const ExactVector b = exact(p.verts[f[(i + 1) % f.size()]]);
    nrm[0] += (a[1] - b[1]) * (a[2] + b[2]);
    nrm[1] += (a[2] - b[2]) * (a[0] + b[0]);
    nrm[2] += (a[0] - b[0]) * (a[1] + b[1]);
  }
  if (nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0)
    throw Error(ErrorCode::DegenerateFace, "face has zero area");
  const double along = nrm[0].get_d() * outward.x + nrm[1].get_d() * outward.y +
                       nrm[2].get_d() * outward.z;
  if (along > 0.0)
    for (Rational& c : nrm) c = -c;
  Rational d = exact_dot(nrm, exact(p.verts[f[0]]));
  return make_halfspace(std::move(nrm), std::move(d));
}

constexpr double kFeasibleTol = 1e-9;
constexpr double kMergeTol = 1e-9;

bool feasible(const std::vector<HalfSpace>& hs, const ExactVector& x, const Point3& xd) {
  for (const HalfSpace& h : hs) {
    const double approx =
        (h.a[0].get_d() * xd.x + h.a[1].get_d() * xd.y + h.a[2].get_d() * xd.z - h.d.get_d()) *
        h.inv_norm;
    if (approx > -kFeasibleTol + 1e-12) continue;
    if (approx < -kFeasibleTol - 1e-12) return false;
    const Rational s = exact_dot(h.a, x) - h.d;
    if (s >= 0) continue;
    if (s.get_d() * h.inv_norm < -kFeasibleTol) return false;
  }
  return true;
}

struct Hull {
  Polyhedron poly;
  double volume = 0.0;
};

// Facet enumeration over all point triples. Quartic, fine for the few dozen
// vertices a desk-scale kernel has.
Hull brute_force_hull(const std::vector<Point3>& pts) {
  const std::size_t n = pts.size();
  Point3 c;
  for (const Point3& q : pts) c = c + q;
  c = (1.0 / static_cast<double>(n)) * c;

  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> faces;
  std::vector<Vector3> normals;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Vector3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
        const double len = norm(nrm);
        if (len < 1e-12) continue;
        nrm = (1.0 / len) * nrm;
        const double off = dot(nrm, pts[i]);
        std::size_t pos = 0, neg = 0;
        std::vector<std::size_t> on;
        for (std::size_t m = 0; m < n; ++m) {
          const double s = dot(nrm, pts[m]) - off;
          if (s > kMergeTol)
            ++pos;
          else if (s < -kMergeTol)
            ++neg;
          else
            on.push_back(m);
        }
        if ((pos > 0 && neg > 0) || (pos == 0 && neg == 0)) continue;
        if (!seen.insert(on).second) continue;
        if (pos > 0) nrm = -nrm;
        faces.push_back(std::move(on));
        normals.push_back(nrm);
      }
    }
  }

  Hull hull;
  std::vector<VertexId> remap(n, std::numeric_limits<VertexId>::max());
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& ids = faces[fi];
    const Vector3& nrm = normals[fi];
    Point3 fc;
    for (std::size_t id : ids) fc = fc + pts[id];
    fc = (1.0 / static_cast<double>(ids.size())) * fc;
    Vector3 e1 = std::abs(nrm.x) < 0.9 ? cross(nrm, {1, 0, 0}) : cross(nrm, {0, 1, 0});
    e1 = (1.0 / norm(e1)) * e1;
    const Vector3 e2 = cross(nrm, e1);
    std::vector<std::pair<double, std::size_t>> by_angle;
    for (std::size_t id : ids)
      by_angle.emplace_back(std::atan2(dot(pts[id] - fc, e2), dot(pts[id] - fc, e1)), id);
    std::sort(by_angle.begin(), by_angle.end());

    Face f;
    Vector3 area2;
    for (std::size_t m = 0; m < by_angle.size(); ++m) {
      const std::size_t id = by_angle[m].second;
      const std::size_t next = by_angle[(m + 1) % by_angle.size()].second;
      area2 = area2 + cross(pts[id] - fc, pts[next] - fc);
      if (remap[id] == std::numeric_limits<VertexId>::max()) {
        remap[id] = static_cast<VertexId>(hull.poly.verts.size());
        hull.poly.verts.push_back(pts[id]);
      }
      f.push_back(remap[id]);
    }
    hull.volume += dot(area2, nrm) * 0.5 * dot(nrm, fc - c) / 3.0;
    hull.poly.faces.push_back(std::move(f));
  }
  return hull;
}

}  // namespace

bool kernel_membership(const Polyhedron& p, std::span<const Vector3> outward_normals,
                       const Point3& q, double tol) {
  if (outward_normals.size() != p.faces.size())
    throw Error(ErrorCode::InputMismatch, "expected one normal per face");
  if (!bounds(p.verts).contains(q)) return false;
  for (std::size_t i = 0; i < p.faces.size(); ++i) {
    const Plane plane = plane_from_face(p, p.faces[i], outward_normals[i]);
    if (classify_point(plane, q, tol) == Sign::Below) return false;
  }
  return true;
}

std::optional<BruteForceKernel> brute_force_kernel(const Polyhedron& p,
                                                   std::span<const Vector3> outward_normals) {
  if (outward_normals.size() != p.faces.size())
    throw Error(ErrorCode::InputMismatch, "expected one normal per face");
  if (p.faces.size() + 6 > kMaxPlanes)
    throw Error(ErrorCode::TooManyPlanes, std::to_string(p.faces.size() + 6) +
                                              " planes exceed the brute-force limit of " +
                                              std::to_string(kMaxPlanes));
  validate(p);

  std::vector<HalfSpace> hs;
  hs.reserve(p.faces.size() + 6);
  for (std::size_t i = 0; i < p.faces.size(); ++i)
    hs.push_back(face_halfspace(p, p.faces[i], outward_normals[i]));
  const Bounds box = bounds(p.verts);
  for (int axis = 0; axis < 3; ++axis) {
    ExactVector lo{Rational(0), Rational(0), Rational(0)};
    lo[axis] = 1;
    hs.push_back(make_halfspace(lo, Rational(box.min[axis])));
    ExactVector hi{Rational(0), Rational(0), Rational(0)};
    hi[axis] = -1;
    hs.push_back(make_halfspace(hi, Rational(-box.max[axis])));
  }

  std::vector<Point3> candidates;
  const std::size_t m = hs.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const ExactVector cij = exact_cross(hs[i].a, hs[j].a);
      for (std::size_t k = j + 1; k < m; ++k) {
        const Rational det = exact_dot(hs[k].a, cij);
        if (det == 0) continue;
        const ExactVector cjk = exact_cross(hs[j].a, hs[k].a);
        const ExactVector cki = exact_cross(hs[k].a, hs[i].a);
        ExactVector x;
        for (int c = 0; c < 3; ++c) x[c] = (hs[i].d * cjk[c] + hs[j].d * cki[c] + hs[k].d * cij[c]) / det;
        const Point3 xd{x[0].get_d(), x[1].get_d(), x[2].get_d()};
        if (!feasible(hs, x, xd)) continue;
        const bool dup = std::any_of(candidates.begin(), candidates.end(),
                                     [&](const Point3& c) { return distance(c, xd) <= kMergeTol; });
        if (!dup) candidates.push_back(xd);
      }
    }
  }
  if (candidates.size() < 4) return std::nullopt;

  Hull hull = brute_force_hull(candidates);
  if (hull.poly.faces.size() < 4 || hull.volume <= 1e-12 * box.volume()) return std::nullopt;
  return BruteForceKernel{std::move(hull.poly), hull.volume};
}

VolumeEstimate monte_carlo_volume(const std::function<bool(const Point3&)>& member,
                                  const Polyhedron& box, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  const Bounds b = bounds(box.verts);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point3 q{b.min.x + unit(rng) * (b.max.x - b.min.x),
                   b.min.y + unit(rng) * (b.max.y - b.min.y),
                   b.min.z + unit(rng) * (b.max.z - b.min.z)};
    if (member(q)) ++hits;
  }
  const double h = static_cast<double>(hits) / static_cast<double>(samples);
  const double v = b.volume();
  return {v * h, v * std::sqrt(h * (1.0 - h) / static_cast<double>(samples))};
}

double hausdorff(std::span<const Point3> a, std::span<const Point3> b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](std::span<const Point3> from, std::span<const Point3> to) {
    double worst = 0.0;
    for (const Point3& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point3& y : to) best = std::min(best, distance(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

Comparison compare_with_kernel(const Polyhedron& p, std::span<const Vector3> outward_normals,
                               const KernelOptions& opts) {
  Comparison c;
  const std::optional<BruteForceKernel> brute = brute_force_kernel(p, outward_normals);
  const KernelResult k = polyhedron_kernel(p, outward_normals, opts);
  c.kernel_nonempty = k.star_shaped();
  c.oracle_nonempty = brute.has_value();
  c.kernel_volume = k.volume;
  c.oracle_volume = brute ? brute->volume : 0.0;
  if (c.kernel_nonempty != c.oracle_nonempty) {
    c.hausdorff = std::numeric_limits<double>::infinity();
    c.volume_rel_diff = std::numeric_limits<double>::infinity();
  } else if (c.kernel_nonempty) {
    c.hausdorff = hausdorff(k.kernel->verts, brute->hull.verts);
    c.volume_rel_diff = std::abs(c.kernel_volume - c.oracle_volume) / c.oracle_volume;
  }
  return c;
}

}  // namespace polykernel::oracle
