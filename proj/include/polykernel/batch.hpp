#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polykernel/kernel.hpp"
#include "polykernel/mesh_io.hpp"

namespace polykernel {

struct ReportRow {
  std::string id;
  std::size_t n_verts = 0;
  std::size_t n_faces = 0;
  /// "NON_EMPTY", "EMPTY" or "ERROR:<code>".
  std::string status;
  double kernel_volume = 0.0;
  std::size_t iterations = 0;
  double wall_time_s = 0.0;
};

struct DatasetReport {
  std::vector<ReportRow> rows;

  std::size_t error_count() const;
};

inline constexpr const char* kReportHeader =
    "id,n_verts,n_faces,status,kernel_volume,iterations,wall_time_s";

/// Kernels of every element, computed independently. threads == 0 picks the
/// hardware concurrency. Rows come back in input order; wall time covers the
/// kernel computation only.
DatasetReport run_batch(const MeshDataset& ds, const KernelOptions& opts, unsigned threads = 0);

void write_report_csv(const DatasetReport& report, std::ostream& out);

/// Dataset of n elements cycling through the elements of `src`; ids get a
/// "#k" suffix to stay unique.
MeshDataset clone_cyclic(const MeshDataset& src, std::size_t n);

}  // namespace polykernel
