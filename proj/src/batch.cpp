#include "polykernel/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <thread>

namespace polykernel {

std::size_t DatasetReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) {
    return r.status.starts_with("ERROR");
  }));
}

namespace {

ReportRow process(const MeshElement& el, const KernelOptions& opts) {
  ReportRow row;
  row.id = el.id;
  row.n_verts = el.poly.verts.size();
  row.n_faces = el.poly.faces.size();
  const auto start = std::chrono::steady_clock::now();
  try {
    const KernelResult r = polyhedron_kernel(el.poly, el.normals, opts);
    row.status = r.star_shaped() ? "NON_EMPTY" : "EMPTY";
    row.kernel_volume = r.volume;
    row.iterations = r.iterations;
  } catch (const Error& e) {
    row.status = "ERROR:" + std::string(to_string(e.code()));
  }
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

DatasetReport run_batch(const MeshDataset& ds, const KernelOptions& opts, unsigned threads) {
  DatasetReport report;
  report.rows.resize(ds.elements.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, ds.elements.size()));

  if (threads <= 1) {
    for (std::size_t i = 0; i < ds.elements.size(); ++i) report.rows[i] = process(ds.elements[i], opts);
    return report;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ds.elements.size(); i = next++)
      report.rows[i] = process(ds.elements[i], opts);
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  return report;
}

void write_report_csv(const DatasetReport& report, std::ostream& out) {
  out << kReportHeader << '\n';
  char num[64];
  for (const ReportRow& r : report.rows) {
    out << r.id << ',' << r.n_verts << ',' << r.n_faces << ',' << r.status << ',';
    std::snprintf(num, sizeof num, "%.17g", r.kernel_volume);
    out << num << ',' << r.iterations << ',';
    std::snprintf(num, sizeof num, "%.9f", r.wall_time_s);
    out << num << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "report write failed");
}

MeshDataset clone_cyclic(const MeshDataset& src, std::size_t n) {
  MeshDataset out;
  if (src.elements.empty()) return out;
  out.elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    MeshElement el = src.elements[i % src.elements.size()];
    el.id += "#" + std::to_string(i);
    out.elements.push_back(std::move(el));
  }
  return out;
}

}  // namespace polykernel
