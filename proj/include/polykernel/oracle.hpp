#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "polykernel/geometry.hpp"
#include "polykernel/kernel.hpp"

namespace polykernel::oracle {

/// Face planes plus the six AABB planes must not exceed this.
inline constexpr std::size_t kMaxPlanes = 40;

/// q lies in the bounding box and on the inner side (or within tol) of
/// every face plane.
bool kernel_membership(const Polyhedron& p, std::span<const Vector3> outward_normals,
                       const Point3& q, double tol);

/// Vertex enumeration over all plane triples in exact rational arithmetic,
/// followed by a brute-force convex hull. Empty optional when the feasible
/// region has no volume.
struct BruteForceKernel {
  Polyhedron hull;
  double volume = 0.0;
};
std::optional<BruteForceKernel> brute_force_kernel(const Polyhedron& p,
                                                   std::span<const Vector3> outward_normals);

struct VolumeEstimate {
  double volume = 0.0;
  double std_error = 0.0;
};

VolumeEstimate monte_carlo_volume(const std::function<bool(const Point3&)>& member,
                                  const Polyhedron& box, std::size_t samples, std::uint64_t seed);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff(std::span<const Point3> a, std::span<const Point3> b);

/// Side-by-side run of polyhedron_kernel and brute_force_kernel.
struct Comparison {
  bool kernel_nonempty = false;
  bool oracle_nonempty = false;
  double kernel_volume = 0.0;
  double oracle_volume = 0.0;
  /// Between vertex sets; 0 when both are empty, infinity when only one is.
  double hausdorff = 0.0;
  double volume_rel_diff = 0.0;

  bool agrees(double hausdorff_tol = 1e-7, double volume_tol = 1e-6) const {
    return kernel_nonempty == oracle_nonempty && hausdorff <= hausdorff_tol &&
           volume_rel_diff <= volume_tol;
  }
};

Comparison compare_with_kernel(const Polyhedron& p, std::span<const Vector3> outward_normals,
                               const KernelOptions& opts = {});

}  // namespace polykernel::oracle
