#include "polykernel/polykernel.h"

#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "polykernel/batch.hpp"
#include "polykernel/kernel.hpp"
#include "polykernel/mesh_io.hpp"
#include "polykernel/oracle.hpp"

using namespace polykernel;

struct pk_polyhedron {
  Polyhedron poly;
};

struct pk_kernel {
  KernelResult result;
  pk_polyhedron kernel;
};

struct pk_dataset {
  MeshDataset ds;
};

struct pk_report {
  DatasetReport report;
};

namespace {

thread_local std::string g_last_error;

pk_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return PK_ERR_EMPTY_INPUT;
    case ErrorCode::DegenerateFace: return PK_ERR_DEGENERATE_FACE;
    case ErrorCode::DegenerateCap: return PK_ERR_DEGENERATE_CAP;
    case ErrorCode::NotClosed: return PK_ERR_NOT_CLOSED;
    case ErrorCode::InputMismatch: return PK_ERR_INPUT_MISMATCH;
    case ErrorCode::NoProperIntersection: return PK_ERR_NO_PROPER_INTERSECTION;
    case ErrorCode::ParallelLine: return PK_ERR_PARALLEL_LINE;
    case ErrorCode::TooManyPlanes: return PK_ERR_TOO_MANY_PLANES;
    case ErrorCode::ParseError: return PK_ERR_PARSE;
    case ErrorCode::IndexOutOfRange: return PK_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::IoError: return PK_ERR_IO;
    case ErrorCode::InvalidArgument: return PK_ERR_INVALID_ARGUMENT;
  }
  return PK_ERR_INTERNAL;
}

pk_status fail(pk_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class Fn>
pk_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return PK_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PK_ERR_INTERNAL, e.what());
  }
}

KernelOptions options_from(const pk_kernel_options* opts) {
  KernelOptions o;
  if (opts) {
    o.shuffle = opts->shuffle != 0;
    o.seed = opts->seed;
    o.tolerance = opts->tolerance;
  }
  return o;
}

std::vector<Vector3> normals_from(const Polyhedron& p, const double* normals) {
  if (!normals) return compute_outward_normals(p);
  std::vector<Vector3> out(p.faces.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = {normals[3 * i], normals[3 * i + 1], normals[3 * i + 2]};
  return out;
}

void fill(pk_verify_result* out, const oracle::Comparison& c) {
  out->kernel_star_shaped = c.kernel_nonempty;
  out->oracle_star_shaped = c.oracle_nonempty;
  out->kernel_volume = c.kernel_volume;
  out->oracle_volume = c.oracle_volume;
  out->hausdorff = c.hausdorff;
  out->volume_rel_diff = c.volume_rel_diff;
}

#define PK_REQUIRE(cond)                                                          \
  do {                                                                            \
    if (!(cond)) return fail(PK_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

#define PK_REQUIRE_INDEX(i, n)                                                      \
  do {                                                                              \
    if ((i) >= (n)) return fail(PK_ERR_INDEX_OUT_OF_RANGE, "index out of range: " #i); \
  } while (0)

}  // namespace

extern "C" {

const char* pk_status_name(pk_status status) {
  switch (status) {
    case PK_OK: return "OK";
    case PK_ERR_EMPTY_INPUT: return "EmptyInput";
    case PK_ERR_DEGENERATE_FACE: return "DegenerateFace";
    case PK_ERR_DEGENERATE_CAP: return "DegenerateCap";
    case PK_ERR_NOT_CLOSED: return "NotClosed";
    case PK_ERR_INPUT_MISMATCH: return "InputMismatch";
    case PK_ERR_NO_PROPER_INTERSECTION: return "NoProperIntersection";
    case PK_ERR_PARALLEL_LINE: return "ParallelLine";
    case PK_ERR_TOO_MANY_PLANES: return "TooManyPlanes";
    case PK_ERR_PARSE: return "ParseError";
    case PK_ERR_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case PK_ERR_IO: return "IoError";
    case PK_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PK_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* pk_last_error(void) { return g_last_error.c_str(); }

void pk_kernel_options_init(pk_kernel_options* opts) {
  if (!opts) return;
  opts->shuffle = 0;
  opts->seed = 0;
  opts->tolerance = kDefaultTolerance;
}

pk_status pk_polyhedron_create(const double* xyz, size_t n_verts, const uint32_t* face_sizes,
                               size_t n_faces, const uint32_t* indices, pk_polyhedron** out) {
  PK_REQUIRE(out);
  PK_REQUIRE(xyz || n_verts == 0);
  PK_REQUIRE((face_sizes && indices) || n_faces == 0);
  *out = nullptr;
  return guarded([&] {
    auto p = std::make_unique<pk_polyhedron>();
    p->poly.verts.reserve(n_verts);
    for (size_t i = 0; i < n_verts; ++i) p->poly.verts.push_back({xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]});
    size_t at = 0;
    for (size_t f = 0; f < n_faces; ++f) {
      p->poly.faces.emplace_back(indices + at, indices + at + face_sizes[f]);
      at += face_sizes[f];
    }
    validate(p->poly);
    *out = p.release();
  });
}

pk_status pk_polyhedron_read_off(const char* path, pk_polyhedron** out) {
  PK_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    auto p = std::make_unique<pk_polyhedron>();
    p->poly = read_off_file(path);
    *out = p.release();
  });
}

pk_status pk_polyhedron_write_off(const pk_polyhedron* p, const char* path) {
  PK_REQUIRE(p && path);
  return guarded([&] { write_off_file(p->poly, path); });
}

void pk_polyhedron_free(pk_polyhedron* p) { delete p; }

size_t pk_polyhedron_num_verts(const pk_polyhedron* p) { return p ? p->poly.verts.size() : 0; }

size_t pk_polyhedron_num_faces(const pk_polyhedron* p) { return p ? p->poly.faces.size() : 0; }

pk_status pk_polyhedron_get_verts(const pk_polyhedron* p, double* xyz_out) {
  PK_REQUIRE(p && (xyz_out || p->poly.verts.empty()));
  for (size_t i = 0; i < p->poly.verts.size(); ++i) {
    xyz_out[3 * i] = p->poly.verts[i].x;
    xyz_out[3 * i + 1] = p->poly.verts[i].y;
    xyz_out[3 * i + 2] = p->poly.verts[i].z;
  }
  return PK_OK;
}

pk_status pk_polyhedron_volume(const pk_polyhedron* p, double* out) {
  PK_REQUIRE(p && out);
  return guarded([&] { *out = signed_volume(p->poly); });
}

pk_status pk_polyhedron_outward_normals(const pk_polyhedron* p, double* out) {
  PK_REQUIRE(p && (out || p->poly.faces.empty()));
  return guarded([&] {
    const std::vector<Vector3> n = compute_outward_normals(p->poly);
    for (size_t i = 0; i < n.size(); ++i) {
      out[3 * i] = n[i].x;
      out[3 * i + 1] = n[i].y;
      out[3 * i + 2] = n[i].z;
    }
  });
}

pk_status pk_kernel_compute(const pk_polyhedron* p, const double* normals,
                            const pk_kernel_options* opts, pk_kernel** out) {
  PK_REQUIRE(p && out);
  *out = nullptr;
  return guarded([&] {
    auto k = std::make_unique<pk_kernel>();
    k->result = polyhedron_kernel(p->poly, normals_from(p->poly, normals), options_from(opts));
    if (k->result.kernel) k->kernel.poly = *k->result.kernel;
    *out = k.release();
  });
}

void pk_kernel_free(pk_kernel* k) { delete k; }

int pk_kernel_star_shaped(const pk_kernel* k) { return k && k->result.star_shaped() ? 1 : 0; }

size_t pk_kernel_iterations(const pk_kernel* k) { return k ? k->result.iterations : 0; }

double pk_kernel_volume(const pk_kernel* k) { return k ? k->result.volume : 0.0; }

const pk_polyhedron* pk_kernel_polyhedron(const pk_kernel* k) {
  return k && k->result.star_shaped() ? &k->kernel : nullptr;
}

pk_status pk_polyhedron_verify(const pk_polyhedron* p, const double* normals,
                               const pk_kernel_options* opts, pk_verify_result* out) {
  PK_REQUIRE(p && out);
  return guarded([&] {
    fill(out, oracle::compare_with_kernel(p->poly, normals_from(p->poly, normals), options_from(opts)));
  });
}

pk_status pk_dataset_read(const char* path, pk_dataset** out) {
  PK_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] {
    auto d = std::make_unique<pk_dataset>();
    d->ds = read_collection_file(path);
    *out = d.release();
  });
}

pk_status pk_dataset_clone_cyclic(const pk_dataset* ds, size_t n, pk_dataset** out) {
  PK_REQUIRE(ds && out);
  *out = nullptr;
  return guarded([&] {
    auto d = std::make_unique<pk_dataset>();
    d->ds = clone_cyclic(ds->ds, n);
    *out = d.release();
  });
}

void pk_dataset_free(pk_dataset* ds) { delete ds; }

size_t pk_dataset_size(const pk_dataset* ds) { return ds ? ds->ds.elements.size() : 0; }

const char* pk_dataset_element_id(const pk_dataset* ds, size_t i) {
  if (!ds || i >= ds->ds.elements.size()) return nullptr;
  return ds->ds.elements[i].id.c_str();
}

size_t pk_dataset_element_num_faces(const pk_dataset* ds, size_t i) {
  if (!ds || i >= ds->ds.elements.size()) return 0;
  return ds->ds.elements[i].poly.faces.size();
}

pk_status pk_dataset_element_kernel(const pk_dataset* ds, size_t i, const pk_kernel_options* opts,
                                    pk_kernel** out) {
  PK_REQUIRE(ds && out);
  PK_REQUIRE_INDEX(i, ds->ds.elements.size());
  *out = nullptr;
  return guarded([&] {
    const MeshElement& el = ds->ds.elements[i];
    auto k = std::make_unique<pk_kernel>();
    k->result = polyhedron_kernel(el.poly, el.normals, options_from(opts));
    if (k->result.kernel) k->kernel.poly = *k->result.kernel;
    *out = k.release();
  });
}

pk_status pk_dataset_element_verify(const pk_dataset* ds, size_t i, const pk_kernel_options* opts,
                                    pk_verify_result* out) {
  PK_REQUIRE(ds && out);
  PK_REQUIRE_INDEX(i, ds->ds.elements.size());
  return guarded([&] {
    const MeshElement& el = ds->ds.elements[i];
    fill(out, oracle::compare_with_kernel(el.poly, el.normals, options_from(opts)));
  });
}

pk_status pk_batch_run(const pk_dataset* ds, const pk_kernel_options* opts, unsigned threads,
                       pk_report** out) {
  PK_REQUIRE(ds && out);
  *out = nullptr;
  return guarded([&] {
    auto r = std::make_unique<pk_report>();
    r->report = run_batch(ds->ds, options_from(opts), threads);
    *out = r.release();
  });
}

void pk_report_free(pk_report* r) { delete r; }

size_t pk_report_num_rows(const pk_report* r) { return r ? r->report.rows.size() : 0; }

size_t pk_report_num_errors(const pk_report* r) { return r ? r->report.error_count() : 0; }

pk_status pk_report_get_row(const pk_report* r, size_t i, pk_report_row* out) {
  PK_REQUIRE(r && out);
  PK_REQUIRE_INDEX(i, r->report.rows.size());
  const ReportRow& row = r->report.rows[i];
  *out = {row.id.c_str(), row.n_verts,    row.n_faces,    row.status.c_str(),
          row.kernel_volume, row.iterations, row.wall_time_s};
  return PK_OK;
}

pk_status pk_report_write_csv(const pk_report* r, const char* path) {
  PK_REQUIRE(r && path);
  return guarded([&] {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, std::string("cannot open '") + path + "' for writing");
    write_report_csv(r->report, out);
  });
}

}  // extern "C"
