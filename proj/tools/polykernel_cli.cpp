// Command-line front end. Talks to the library through the C interface only.
//
// Exit codes: 0 success, 2 empty kernel / not star-shaped, 1 error.

#include <polykernel/polykernel.h>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitEmpty = 2;

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Polyhedron = std::unique_ptr<pk_polyhedron, Deleter<pk_polyhedron, pk_polyhedron_free>>;
using Kernel = std::unique_ptr<pk_kernel, Deleter<pk_kernel, pk_kernel_free>>;
using Dataset = std::unique_ptr<pk_dataset, Deleter<pk_dataset, pk_dataset_free>>;
using Report = std::unique_ptr<pk_report, Deleter<pk_report, pk_report_free>>;

struct Settings {
  bool shuffle = false;
  uint64_t seed = 0;
  double tolerance = 1e-8;
  unsigned threads = 0;
  std::string output;
  std::string report;
  std::size_t repeats = 1;
  std::vector<std::size_t> sizes;

  pk_kernel_options options() const {
    pk_kernel_options o;
    pk_kernel_options_init(&o);
    o.shuffle = shuffle;
    o.seed = seed;
    o.tolerance = tolerance;
    return o;
  }
};

int report_error(pk_status s, const std::string& context) {
  std::cerr << "error: " << context << ": " << pk_status_name(s) << ": " << pk_last_error() << '\n';
  return kExitError;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Loaded {
  Polyhedron poly;
  std::vector<double> normals;
};

pk_status load(const std::string& path, Loaded& out) {
  pk_polyhedron* raw = nullptr;
  if (pk_status s = pk_polyhedron_read_off(path.c_str(), &raw); s != PK_OK) return s;
  out.poly.reset(raw);
  out.normals.resize(3 * pk_polyhedron_num_faces(raw));
  return pk_polyhedron_outward_normals(raw, out.normals.data());
}

int cmd_kernel(const std::string& input, Settings settings, bool check_star) {
  Loaded in;
  if (pk_status s = load(input, in); s != PK_OK) return report_error(s, input);

  if (check_star) settings.shuffle = true;
  const pk_kernel_options opts = settings.options();
  pk_kernel* raw = nullptr;
  const auto start = std::chrono::steady_clock::now();
  const pk_status s = pk_kernel_compute(in.poly.get(), in.normals.data(), &opts, &raw);
  const double elapsed = seconds_since(start);
  if (s != PK_OK) return report_error(s, input);
  Kernel kernel(raw);

  const bool star = pk_kernel_star_shaped(kernel.get());
  const std::size_t faces = pk_polyhedron_num_faces(in.poly.get());
  if (check_star) {
    std::printf("%s\n", star ? "STAR-SHAPED" : "NOT STAR-SHAPED");
    std::printf("iterations: %zu of %zu faces\n", pk_kernel_iterations(kernel.get()), faces);
    std::printf("time_s: %.6f\n", elapsed);
    return star ? kExitOk : kExitEmpty;
  }

  std::printf("status: %s\n", star ? "NON_EMPTY" : "EMPTY");
  std::printf("volume: %.17g\n", pk_kernel_volume(kernel.get()));
  std::printf("iterations: %zu of %zu faces\n", pk_kernel_iterations(kernel.get()), faces);
  std::printf("time_s: %.6f\n", elapsed);
  if (!star) {
    std::printf("kernel is empty, nothing written\n");
    return kExitEmpty;
  }
  if (!settings.output.empty()) {
    if (pk_status ws = pk_polyhedron_write_off(pk_kernel_polyhedron(kernel.get()), settings.output.c_str());
        ws != PK_OK)
      return report_error(ws, settings.output);
    std::printf("kernel written to %s\n", settings.output.c_str());
  }
  return kExitOk;
}

pk_status load_dataset(const std::string& path, Dataset& out) {
  pk_dataset* raw = nullptr;
  const pk_status s = pk_dataset_read(path.c_str(), &raw);
  out.reset(raw);
  return s;
}

int cmd_batch(const std::string& input, const Settings& settings) {
  Dataset ds;
  if (pk_status s = load_dataset(input, ds); s != PK_OK) return report_error(s, input);
  const pk_kernel_options opts = settings.options();
  pk_report* raw = nullptr;
  if (pk_status s = pk_batch_run(ds.get(), &opts, settings.threads, &raw); s != PK_OK)
    return report_error(s, input);
  Report report(raw);
  if (pk_status s = pk_report_write_csv(report.get(), settings.report.c_str()); s != PK_OK)
    return report_error(s, settings.report);

  std::size_t nonempty = 0;
  for (std::size_t i = 0; i < pk_report_num_rows(report.get()); ++i) {
    pk_report_row row;
    pk_report_get_row(report.get(), i, &row);
    if (std::string(row.status) == "NON_EMPTY") ++nonempty;
  }
  const std::size_t errors = pk_report_num_errors(report.get());
  std::printf("elements: %zu, non-empty: %zu, errors: %zu\n", pk_report_num_rows(report.get()),
              nonempty, errors);
  return errors == 0 ? kExitOk : kExitError;
}

int cmd_verify(const std::string& input, const Settings& settings) {
  Dataset ds;
  if (pk_status s = load_dataset(input, ds); s != PK_OK) return report_error(s, input);
  const pk_kernel_options opts = settings.options();

  constexpr double kHausdorffTol = 1e-7;
  constexpr double kVolumeTol = 1e-6;
  std::size_t failures = 0;
  double worst_h = 0.0, worst_v = 0.0;
  std::printf("id,kernel,oracle,hausdorff,volume_rel_diff,result\n");
  for (std::size_t i = 0; i < pk_dataset_size(ds.get()); ++i) {
    const char* id = pk_dataset_element_id(ds.get(), i);
    pk_verify_result r;
    if (pk_status s = pk_dataset_element_verify(ds.get(), i, &opts, &r); s != PK_OK) {
      std::printf("%s,,,,,%s\n", id, pk_status_name(s));
      ++failures;
      continue;
    }
    const bool ok = r.kernel_star_shaped == r.oracle_star_shaped && r.hausdorff <= kHausdorffTol &&
                    r.volume_rel_diff <= kVolumeTol;
    failures += ok ? 0 : 1;
    worst_h = std::max(worst_h, r.hausdorff);
    worst_v = std::max(worst_v, r.volume_rel_diff);
    std::printf("%s,%s,%s,%.3e,%.3e,%s\n", id, r.kernel_star_shaped ? "NON_EMPTY" : "EMPTY",
                r.oracle_star_shaped ? "NON_EMPTY" : "EMPTY", r.hausdorff, r.volume_rel_diff,
                ok ? "ok" : "MISMATCH");
  }
  std::fprintf(stderr, "verified %zu elements, %zu failures, max hausdorff %.3e, max volume diff %.3e\n",
               pk_dataset_size(ds.get()), failures, worst_h, worst_v);
  return failures == 0 ? kExitOk : kExitError;
}

int cmd_bench(const std::vector<std::string>& inputs, const Settings& settings) {
  struct Row {
    std::string dataset;
    std::size_t elements;
    double min_time;
  };
  std::vector<Row> rows;
  const pk_kernel_options opts = settings.options();

  auto time_dataset = [&](const std::string& label, const pk_dataset* ds) -> pk_status {
    if (pk_dataset_size(ds) == 0) return PK_OK;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < settings.repeats; ++r) {
      pk_report* raw = nullptr;
      const auto start = std::chrono::steady_clock::now();
      const pk_status s = pk_batch_run(ds, &opts, settings.threads, &raw);
      const double elapsed = seconds_since(start);
      Report report(raw);
      if (s != PK_OK) return s;
      best = std::min(best, elapsed);
    }
    rows.push_back({label, pk_dataset_size(ds), best});
    return PK_OK;
  };

  for (const std::string& input : inputs) {
    Dataset ds;
    if (pk_status s = load_dataset(input, ds); s != PK_OK) return report_error(s, input);
    if (settings.sizes.empty()) {
      if (pk_status s = time_dataset(input, ds.get()); s != PK_OK) return report_error(s, input);
      continue;
    }
    for (std::size_t n : settings.sizes) {
      pk_dataset* raw = nullptr;
      if (pk_status s = pk_dataset_clone_cyclic(ds.get(), n, &raw); s != PK_OK)
        return report_error(s, input);
      Dataset cloned(raw);
      if (pk_status s = time_dataset(input, cloned.get()); s != PK_OK) return report_error(s, input);
    }
  }

  std::ofstream out(settings.report);
  if (!out) {
    std::cerr << "error: cannot open '" << settings.report << "' for writing\n";
    return kExitError;
  }
  out << "dataset,n_elements,repeats,min_wall_time_s\n";
  char buf[64];
  for (const Row& r : rows) {
    std::snprintf(buf, sizeof buf, "%.9f", r.min_time);
    out << r.dataset << ',' << r.elements << ',' << settings.repeats << ',' << buf << '\n';
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    std::printf("%zu -> %zu elements: time ratio %.2f\n", rows[i - 1].elements, rows[i].elements,
                rows[i].min_time / rows[i - 1].min_time);
  return kExitOk;
}

void add_kernel_flags(CLI::App* cmd, Settings& s) {
  cmd->add_flag("--shuffle", s.shuffle, "Visit faces in random order");
  cmd->add_option("--seed", s.seed, "Seed for --shuffle")->default_val(0);
  cmd->add_option("--tolerance", s.tolerance, "Distance below which a point lies on a plane")
      ->default_val(1e-8)
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric kernel of polyhedra"};
  app.require_subcommand(1);
  Settings settings;
  std::string input;
  std::vector<std::string> inputs;

  auto* kernel = app.add_subcommand("kernel", "Compute the kernel of an OFF polyhedron");
  kernel->add_option("input", input, "Input OFF file")->required();
  kernel->add_option("--output,-o", settings.output, "Write the kernel as OFF");
  add_kernel_flags(kernel, settings);

  auto* batch = app.add_subcommand("batch", "Kernels of every element of a collection");
  batch->add_option("input", input, "Collection file")->required();
  batch->add_option("--report", settings.report, "CSV report path")->required();
  batch->add_option("--threads", settings.threads, "Worker threads (0 = all cores)");
  add_kernel_flags(batch, settings);

  auto* check = app.add_subcommand("check-star", "Star-shapedness test in shuffle mode");
  check->add_option("input", input, "Input OFF file")->required();
  check->add_option("--seed", settings.seed, "Shuffle seed")->default_val(0);
  check->add_option("--tolerance", settings.tolerance, "Plane tolerance")
      ->default_val(1e-8)
      ->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Cross-check kernels against the brute-force oracle");
  verify->add_option("input", input, "Collection file")->required();
  add_kernel_flags(verify, settings);

  auto* bench = app.add_subcommand("bench", "Time batch runs over collections");
  bench->add_option("inputs", inputs, "Collection files")->required();
  bench->add_option("--repeats", settings.repeats, "Runs per dataset; the minimum is reported")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  bench->add_option("--report", settings.report, "CSV report path")->required();
  bench->add_option("--sizes", settings.sizes, "Clone each collection to these element counts")
      ->delimiter(',');
  bench->add_option("--threads", settings.threads, "Worker threads (0 = all cores)");
  add_kernel_flags(bench, settings);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*kernel) return cmd_kernel(input, settings, false);
  if (*check) return cmd_kernel(input, settings, true);
  if (*batch) return cmd_batch(input, settings);
  if (*verify) return cmd_verify(input, settings);
  if (*bench) return cmd_bench(inputs, settings);
  return kExitError;
}
