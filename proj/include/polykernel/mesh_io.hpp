#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polykernel/geometry.hpp"

namespace polykernel {

Polyhedron read_off(std::istream& in);
Polyhedron read_off_file(const std::string& path);

/// Coordinates use 17 significant digits, so reading the output back
/// reproduces every double exactly.
void write_off(const Polyhedron& p, std::ostream& out);
void write_off_file(const Polyhedron& p, const std::string& path);

/// Outward unit normals per face. If the mesh is wound inward as a whole
/// (negative volume), normals of the reversed winding are returned.
std::vector<Vector3> compute_outward_normals(const Polyhedron& p);

/// Flips every face when the mesh is globally inward-wound. Returns true
/// when a flip happened.
bool orient_outward(Polyhedron& p);

struct MeshElement {
  std::string id;
  Polyhedron poly;
  std::vector<Vector3> normals;
};

struct MeshDataset {
  std::vector<MeshElement> elements;
};

/// Line-based collection format:
///   element <id>
///   verts <nv>      followed by nv lines "x y z"
///   faces <nf>      followed by nf lines "k i1 ... ik"
///   [normals <nf>   followed by nf lines "nx ny nz"]
/// Missing normals are computed, repairing inward winding.
MeshDataset read_collection(std::istream& in);
MeshDataset read_collection_file(const std::string& path);

void write_collection(const MeshDataset& ds, std::ostream& out, bool with_normals = true);
void write_collection_file(const MeshDataset& ds, const std::string& path,
                           bool with_normals = true);

}  // namespace polykernel
