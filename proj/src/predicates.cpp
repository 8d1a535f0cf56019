#include "polykernel/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace polykernel {

namespace {

// Floating-point expansions: sums of non-overlapping doubles ordered by
// increasing magnitude, with zero components removed. The most significant
// component carries the sign of the exact value.
using Expansion = std::vector<double>;

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

Expansion grow(const Expansion& e, double b) {
  Expansion h;
  h.reserve(e.size() + 1);
  double q = b;
  for (double ei : e) {
    double sum, err;
    two_sum(q, ei, sum, err);
    if (err != 0.0) h.push_back(err);
    q = sum;
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

Expansion add(Expansion e, const Expansion& f) {
  for (double fi : f) e = grow(e, fi);
  return e;
}

Expansion negate(Expansion e) {
  for (double& c : e) c = -c;
  return e;
}

Expansion scale(const Expansion& e, double b) {
  Expansion h;
  if (e.empty() || b == 0.0) return h;
  h.reserve(2 * e.size());
  double q, hh;
  two_product(e[0], b, q, hh);
  if (hh != 0.0) h.push_back(hh);
  for (std::size_t i = 1; i < e.size(); ++i) {
    double p1, p0, sum;
    two_product(e[i], b, p1, p0);
    two_sum(q, p0, sum, hh);
    if (hh != 0.0) h.push_back(hh);
    two_sum(p1, sum, q, hh);
    if (hh != 0.0) h.push_back(hh);
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

Expansion multiply(const Expansion& e, const Expansion& f) {
  Expansion out;
  for (double fi : f) out = add(std::move(out), scale(e, fi));
  return out;
}

Expansion difference(double a, double b) {
  double x, y;
  two_diff(a, b, x, y);
  Expansion e;
  if (y != 0.0) e.push_back(y);
  if (x != 0.0) e.push_back(x);
  return e;
}

int sign_of(const Expansion& e) {
  if (e.empty()) return 0;
  return e.back() > 0.0 ? 1 : -1;
}

int orient_exact(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& q) {
  const Expansion ax = difference(p1.x, q.x), ay = difference(p1.y, q.y), az = difference(p1.z, q.z);
  const Expansion bx = difference(p2.x, q.x), by = difference(p2.y, q.y), bz = difference(p2.z, q.z);
  const Expansion cx = difference(p3.x, q.x), cy = difference(p3.y, q.y), cz = difference(p3.z, q.z);

  const Expansion m1 = add(multiply(by, cz), negate(multiply(bz, cy)));
  const Expansion m2 = add(multiply(bz, cx), negate(multiply(bx, cz)));
  const Expansion m3 = add(multiply(bx, cy), negate(multiply(by, cx)));
  const Expansion det = add(add(multiply(ax, m1), multiply(ay, m2)), multiply(az, m3));
  // det[p1-q, p2-q, p3-q] = -det[p2-p1, p3-p1, q-p1]
  return -sign_of(det);
}

constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kOrientBound = (7.0 + 56.0 * kEpsilon) * kEpsilon;

}  // namespace

int orient(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& q) {
  const double ax = p1.x - q.x, ay = p1.y - q.y, az = p1.z - q.z;
  const double bx = p2.x - q.x, by = p2.y - q.y, bz = p2.z - q.z;
  const double cx = p3.x - q.x, cy = p3.y - q.y, cz = p3.z - q.z;

  const double bycz = by * cz, bzcy = bz * cy;
  const double bzcx = bz * cx, bxcz = bx * cz;
  const double bxcy = bx * cy, bycx = by * cx;
  const double det = ax * (bycz - bzcy) + ay * (bzcx - bxcz) + az * (bxcy - bycx);

  const double permanent = std::abs(ax) * (std::abs(bycz) + std::abs(bzcy)) +
                           std::abs(ay) * (std::abs(bzcx) + std::abs(bxcz)) +
                           std::abs(az) * (std::abs(bxcy) + std::abs(bycx));
  const double bound = kOrientBound * permanent;
  if (det > bound) return -1;
  if (-det > bound) return 1;
  return orient_exact(p1, p2, p3, q);
}

Sign classify_point(const Plane& p, const Point3& q, double tol) {
  const int s = orient(p.p1, p.p2, p.p3, q);
  if (s == 0 || std::abs(p.signed_distance(q)) <= tol) return Sign::Inter;
  return s > 0 ? Sign::Above : Sign::Below;
}

SignArray classify_points(const Plane& p, std::span<const Point3> pts, double tol) {
  SignArray out;
  out.reserve(pts.size());
  for (const Point3& q : pts) out.push_back(classify_point(p, q, tol));
  return out;
}

Sign classify_face(std::span<const Sign> signs) {
  bool any_below = false;
  bool all_below = true;
  for (Sign s : signs) {
    if (s == Sign::Below)
      any_below = true;
    else
      all_below = false;
  }
  if (all_below) return Sign::Below;
  return any_below ? Sign::Inter : Sign::Above;
}

}  // namespace polykernel
