#pragma once

#include <span>

#include "polykernel/geometry.hpp"

namespace polykernel {

inline constexpr double kDefaultTolerance = 1e-8;

/// Exact sign of det[p2-p1, p3-p1, q-p1]. +1 when q lies on the side of
/// (p2-p1)x(p3-p1). A floating-point filter answers most calls; the rest
/// fall back to exact expansion arithmetic, so the sign is never wrong.
int orient(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& q);

/// INTER when q is exactly on the plane or within `tol` of it (Hessian
/// distance); otherwise ABOVE/BELOW from the exact orientation.
Sign classify_point(const Plane& p, const Point3& q, double tol = kDefaultTolerance);

SignArray classify_points(const Plane& p, std::span<const Point3> pts,
                          double tol = kDefaultTolerance);

/// BELOW when both ends are BELOW or INTER, ABOVE when both are ABOVE or
/// INTER, INTER when one is ABOVE and the other BELOW. BELOW is tested first.
constexpr Sign classify_edge(Sign s1, Sign s2) {
  if (s1 != Sign::Above && s2 != Sign::Above) return Sign::Below;
  if (s1 != Sign::Below && s2 != Sign::Below) return Sign::Above;
  return Sign::Inter;
}

/// BELOW iff all BELOW, ABOVE iff none BELOW, INTER otherwise.
Sign classify_face(std::span<const Sign> signs);

}  // namespace polykernel
