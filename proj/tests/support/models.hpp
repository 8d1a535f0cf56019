#pragma once

// Test models: closed, outward-wound polyhedra with known kernels.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "polykernel/geometry.hpp"
#include "polykernel/mesh_io.hpp"

namespace polykernel::models {

struct Model {
  std::string name;
  Polyhedron poly;
  std::vector<Vector3> normals;
};

/// Attaches outward normals (repairing inward winding first).
Model with_normals(std::string name, Polyhedron p);

Polyhedron unit_cube();
Polyhedron tetrahedron();

/// Prism over a counter-clockwise polygon in the xy plane, z in [z0, z1].
Polyhedron extrude(const std::vector<std::array<double, 2>>& polygon, double z0 = 0.0,
                   double z1 = 1.0);

/// {(0,0),(2,0),(2,1),(1,1),(1,2),(0,2)} extruded to z in [0,1]; kernel [0,1]^3.
Polyhedron l_prism();

/// 3x3x1 box with a 1x1 square through-hole, 32 triangles. Empty kernel.
Polyhedron ring();

/// Triangulated torus with 2 * nu * nv faces. Empty kernel.
Polyhedron torus(int nu, int nv, double major = 2.0, double minor = 1.0);

/// Gable-roofed prism with two entrance notches of height `entrance`.
/// Kernel empty iff entrance >= tent_threshold(half_width, height).
Polyhedron tent(double entrance, double half_width = 0.5, double height = 2.0, double depth = 1.0);
double tent_threshold(double half_width = 0.5, double height = 2.0);

/// U-shaped prism: two arms, always an empty kernel.
Polyhedron u_prism(double arm, double gap, double depth, double rise);

/// Icosahedron with vertex i pushed to radius radii[i] (12 entries).
Polyhedron spiky_icosahedron(const std::vector<double>& radii);

/// Two tetrahedra glued along a triangle; star-shaped.
Polyhedron bipyramid(std::mt19937_64& rng);
Polyhedron random_tetrahedron(std::mt19937_64& rng);
Polyhedron random_star_prism(std::mt19937_64& rng, int sides);

/// Convex hull of points in general position (incremental, exact orientation).
Polyhedron convex_hull(const std::vector<Point3>& pts);
Polyhedron random_convex(std::mt19937_64& rng, int n_points);

/// Splits every face into a fan around its barycenter.
Polyhedron refine_midpoint(const Polyhedron& p);

/// Random simple polyhedra with at most 12 faces, mixing convex, star-shaped
/// and empty-kernel families.
std::vector<Model> random_small_polyhedra(std::size_t count, std::uint64_t seed);

/// Star-shaped models of several families.
std::vector<Model> star_shaped_models(std::size_t count, std::uint64_t seed);

double uniform(std::mt19937_64& rng, double lo, double hi);

}  // namespace polykernel::models
