/*
 * C interface to the polyhedron kernel library.
 *
 * All objects are opaque handles created by pk_*_create/read/compute and
 * released with the matching pk_*_free. Functions returning pk_status leave
 * a human readable message for the calling thread in pk_last_error().
 */
#ifndef POLYKERNEL_H
#define POLYKERNEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(PK_BUILDING_LIBRARY)
#define PK_API __attribute__((visibility("default")))
#else
#define PK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pk_status {
  PK_OK = 0,
  PK_ERR_EMPTY_INPUT,
  PK_ERR_DEGENERATE_FACE,
  PK_ERR_DEGENERATE_CAP,
  PK_ERR_NOT_CLOSED,
  PK_ERR_INPUT_MISMATCH,
  PK_ERR_NO_PROPER_INTERSECTION,
  PK_ERR_PARALLEL_LINE,
  PK_ERR_TOO_MANY_PLANES,
  PK_ERR_PARSE,
  PK_ERR_INDEX_OUT_OF_RANGE,
  PK_ERR_IO,
  PK_ERR_INVALID_ARGUMENT,
  PK_ERR_INTERNAL
} pk_status;

typedef struct pk_polyhedron pk_polyhedron;
typedef struct pk_kernel pk_kernel;
typedef struct pk_dataset pk_dataset;
typedef struct pk_report pk_report;

typedef struct pk_kernel_options {
  int shuffle;        /* visit faces in seeded random order */
  uint64_t seed;
  double tolerance;   /* INTER band around each plane, default 1e-8 */
} pk_kernel_options;

typedef struct pk_report_row {
  const char* id;     /* valid while the report lives */
  size_t n_verts;
  size_t n_faces;
  const char* status; /* "NON_EMPTY", "EMPTY" or "ERROR:<name>" */
  double kernel_volume;
  size_t iterations;
  double wall_time_s;
} pk_report_row;

typedef struct pk_verify_result {
  int kernel_star_shaped;
  int oracle_star_shaped;
  double kernel_volume;
  double oracle_volume;
  double hausdorff;       /* INFINITY when only one side is empty */
  double volume_rel_diff;
} pk_verify_result;

PK_API const char* pk_status_name(pk_status status);
PK_API const char* pk_last_error(void);

PK_API void pk_kernel_options_init(pk_kernel_options* opts);

/* Polyhedra. `indices` concatenates the vertex ids of all faces;
 * `face_sizes[i]` is the vertex count of face i. */
PK_API pk_status pk_polyhedron_create(const double* xyz, size_t n_verts, const uint32_t* face_sizes,
                                      size_t n_faces, const uint32_t* indices, pk_polyhedron** out);
PK_API pk_status pk_polyhedron_read_off(const char* path, pk_polyhedron** out);
PK_API pk_status pk_polyhedron_write_off(const pk_polyhedron* p, const char* path);
PK_API void pk_polyhedron_free(pk_polyhedron* p);
PK_API size_t pk_polyhedron_num_verts(const pk_polyhedron* p);
PK_API size_t pk_polyhedron_num_faces(const pk_polyhedron* p);
PK_API pk_status pk_polyhedron_get_verts(const pk_polyhedron* p, double* xyz_out);
PK_API pk_status pk_polyhedron_volume(const pk_polyhedron* p, double* out);
/* 3 * num_faces doubles; repairs globally inward winding. */
PK_API pk_status pk_polyhedron_outward_normals(const pk_polyhedron* p, double* out);

/* Kernel. `normals` holds 3 * num_faces outward normals, or NULL to have
 * them computed from the face winding. `opts` may be NULL for defaults. */
PK_API pk_status pk_kernel_compute(const pk_polyhedron* p, const double* normals,
                                   const pk_kernel_options* opts, pk_kernel** out);
PK_API void pk_kernel_free(pk_kernel* k);
PK_API int pk_kernel_star_shaped(const pk_kernel* k);
PK_API size_t pk_kernel_iterations(const pk_kernel* k);
PK_API double pk_kernel_volume(const pk_kernel* k);
/* Owned by `k`; NULL when the kernel is empty. */
PK_API const pk_polyhedron* pk_kernel_polyhedron(const pk_kernel* k);

/* Kernel against the brute-force oracle (at most 34 faces). */
PK_API pk_status pk_polyhedron_verify(const pk_polyhedron* p, const double* normals,
                                      const pk_kernel_options* opts, pk_verify_result* out);

/* Collections. */
PK_API pk_status pk_dataset_read(const char* path, pk_dataset** out);
PK_API pk_status pk_dataset_clone_cyclic(const pk_dataset* ds, size_t n, pk_dataset** out);
PK_API void pk_dataset_free(pk_dataset* ds);
PK_API size_t pk_dataset_size(const pk_dataset* ds);
PK_API const char* pk_dataset_element_id(const pk_dataset* ds, size_t i);
PK_API size_t pk_dataset_element_num_faces(const pk_dataset* ds, size_t i);
PK_API pk_status pk_dataset_element_kernel(const pk_dataset* ds, size_t i,
                                           const pk_kernel_options* opts, pk_kernel** out);
PK_API pk_status pk_dataset_element_verify(const pk_dataset* ds, size_t i,
                                           const pk_kernel_options* opts, pk_verify_result* out);

/* Batch runs. threads == 0 uses every hardware thread. */
PK_API pk_status pk_batch_run(const pk_dataset* ds, const pk_kernel_options* opts, unsigned threads,
                              pk_report** out);
PK_API void pk_report_free(pk_report* r);
PK_API size_t pk_report_num_rows(const pk_report* r);
PK_API size_t pk_report_num_errors(const pk_report* r);
PK_API pk_status pk_report_get_row(const pk_report* r, size_t i, pk_report_row* out);
PK_API pk_status pk_report_write_csv(const pk_report* r, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* POLYKERNEL_H */
