// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "models.hpp"
#include "polykernel/batch.hpp"
#include "polykernel/kernel.hpp"
#include "polykernel/mesh_io.hpp"
#include "polykernel/oracle.hpp"
#include "polykernel/predicates.hpp"

using namespace polykernel;
namespace oc = polykernel::oracle;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <class F>
double timed(F&& f) {
  const auto start = Clock::now();
  f();
  return seconds_since(start);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

KernelResult kernel_of(const models::Model& m, const KernelOptions& opts = {}) {
  return polyhedron_kernel(m.poly, m.normals, opts);
}

// 1. Kernel of a convex polyhedron is the polyhedron.
Outcome convex_identity() {
  std::mt19937_64 rng(1001);
  std::vector<models::Model> hulls;
  for (int i = 0; i < 50; ++i) {
    const int n = 10 + static_cast<int>(rng() % 91);
    hulls.push_back(models::with_normals("hull", models::random_convex(rng, n)));
  }
  double worst = 0.0;
  int failures = 0;
  const double elapsed = timed([&] {
    for (const auto& h : hulls) {
      const KernelResult r = kernel_of(h);
      if (!r.star_shaped()) {
        ++failures;
        continue;
      }
      const double e = rel_diff(r.volume, signed_volume(h.poly));
      worst = std::max(worst, e);
      if (e > 1e-6) ++failures;
    }
  });
  return {failures == 0 && elapsed < 1.0,
          fmt("50 hulls, max rel volume error %.2e (tol 1e-6), %d failures, %.3f s (limit 1 s)", worst,
              failures, elapsed)};
}

// 2. Clipping and brute-force vertex enumeration agree.
Outcome oracle_equivalence() {
  const auto suite = models::random_small_polyhedra(240, 2002);
  std::size_t failures = 0, empty = 0, max_faces = 0;
  double worst_h = 0.0, worst_v = 0.0;
  const double elapsed = timed([&] {
    for (const auto& m : suite) {
      max_faces = std::max(max_faces, m.poly.faces.size());
      const oc::Comparison c = oc::compare_with_kernel(m.poly, m.normals);
      if (!c.agrees(1e-7, 1e-6)) ++failures;
      if (!c.oracle_nonempty) ++empty;
      if (c.kernel_nonempty && c.oracle_nonempty) {
        worst_h = std::max(worst_h, c.hausdorff);
        worst_v = std::max(worst_v, c.volume_rel_diff);
      }
    }
  });
  return {failures == 0 && max_faces <= 12 && elapsed < 30.0,
          fmt("%zu models (%zu empty, <= %zu faces), %zu disagreements, max hausdorff %.2e (tol 1e-7), "
              "max rel volume %.2e (tol 1e-6), %.2f s (limit 30 s)",
              suite.size(), empty, max_faces, failures, worst_h, worst_v, elapsed)};
}

// 3. Tent family: volumes shrink as the entrances rise; emptiness flips where
// the oracle says.
Outcome tent_family() {
  auto oracle_empty = [](double t) {
    const Polyhedron p = models::tent(t);
    return !oc::brute_force_kernel(p, compute_outward_normals(p)).has_value();
  };
  double lo = 0.0, hi = 1.0;
  if (oracle_empty(lo) || !oracle_empty(hi)) return {false, "oracle does not bracket a threshold in [0, 1]"};
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (oracle_empty(mid) ? hi : lo) = mid;
  }
  const double threshold = 0.5 * (lo + hi);

  constexpr int kSteps = 40;
  std::vector<double> volumes;
  std::vector<bool> star;
  std::vector<models::Model> tents;
  for (int i = 0; i <= kSteps; ++i) tents.push_back(models::with_normals("tent", models::tent(0.02 + 0.025 * i)));
  const double elapsed = timed([&] {
    for (const auto& m : tents) {
      const KernelResult r = kernel_of(m);
      volumes.push_back(r.volume);
      star.push_back(r.star_shaped());
    }
  });

  bool monotone = true;
  for (std::size_t i = 1; i < volumes.size(); ++i) monotone &= volumes[i] <= volumes[i - 1];
  bool flips_at_threshold = true;
  int flips = 0;
  for (std::size_t i = 0; i < star.size(); ++i) {
    const double t = 0.02 + 0.025 * static_cast<double>(i);
    flips_at_threshold &= star[i] == (t < threshold);
    if (i > 0 && star[i] != star[i - 1]) ++flips;
  }
  // Closed form for the default tent: H w / (1 + w) = 2/3.
  const double analytic = models::tent_threshold();
  return {monotone && flips_at_threshold && flips == 1 && elapsed < 1.0,
          fmt("%d entrance heights, volumes non-increasing: %s, single flip at oracle threshold %.9f: %s "
              "(closed form %.9f), %.3f s (limit 1 s)",
              kSteps + 1, monotone ? "yes" : "no", threshold, flips_at_threshold && flips == 1 ? "yes" : "no",
              analytic, elapsed)};
}

// 4. Midpoint refinement leaves the kernel unchanged; cost grows linearly.
Outcome refinement_invariance() {
  std::mt19937_64 rng(4004);
  std::vector<double> radii(12);
  for (double& r : radii) r = models::uniform(rng, 0.8, 1.6);
  Polyhedron p = models::spiky_icosahedron(radii);
  if (p.faces.size() != 20) return {false, "base model does not have 20 faces"};

  std::vector<Point3> base;
  double worst_h = 0.0, worst_ratio = 0.0;
  std::vector<double> times;
  bool all_star = true;
  std::string faces_list;
  const double total = timed([&] {
    for (int level = 0; level <= 4; ++level) {
      if (level > 0) p = models::refine_midpoint(p);
      const std::vector<Vector3> n = compute_outward_normals(p);
      KernelResult r;
      // Repeat small levels so the timings are not dominated by clock noise.
      const int reps = std::max(1, 2000 / static_cast<int>(p.faces.size()));
      double best = 1e300;
      for (int rep = 0; rep < 3; ++rep) {
        const double t = timed([&] {
          for (int k = 0; k < reps; ++k) r = polyhedron_kernel(p, n);
        });
        best = std::min(best, t / reps);
      }
      times.push_back(best);
      faces_list += (faces_list.empty() ? "" : "/") + std::to_string(p.faces.size());
      if (!r.star_shaped()) {
        all_star = false;
        continue;
      }
      if (level == 0)
        base = r.kernel->verts;
      else
        worst_h = std::max(worst_h, oc::hausdorff(r.kernel->verts, base));
    }
  });
  for (std::size_t i = 1; i < times.size(); ++i) worst_ratio = std::max(worst_ratio, times[i] / times[i - 1]);
  // Faces triple per level: linear growth allows a ratio of 3, with 2x slack.
  return {all_star && worst_h <= 1e-9 && worst_ratio <= 6.0 && total < 10.0,
          fmt("faces %s, max hausdorff to level 0 %.2e (tol 1e-9), max per-level time ratio %.2f "
              "(limit 6 = 3x faces with 2x slack), %.2f s (limit 10 s)",
              faces_list.c_str(), worst_h, worst_ratio, total)};
}

// 5. Shuffled visiting order detects the empty kernel of a ring-shaped model
// after a handful of faces.
Outcome empty_early_exit() {
  const auto torus = models::with_normals("torus", models::torus(100, 50));
  KernelResult r;
  const double elapsed = timed([&] { r = kernel_of(torus, {.shuffle = true, .seed = 0}); });
  const double limit = 0.01 * static_cast<double>(torus.poly.faces.size());
  return {!r.star_shaped() && static_cast<double>(r.iterations) <= limit && elapsed < 1.0,
          fmt("torus with %zu faces: %s after %zu iterations (limit %.0f), %.4f s (limit 1 s)",
              torus.poly.faces.size(), r.star_shaped() ? "NON_EMPTY" : "EMPTY", r.iterations, limit, elapsed)};
}

// 6. Batch time is linear in the number of elements.
Outcome batch_scaling() {
  MeshDataset base;
  for (const auto& m : models::random_small_polyhedra(60, 6006)) base.elements.push_back({m.name, m.poly, m.normals});
  std::vector<double> times;
  const double total = timed([&] {
    for (std::size_t n : {100u, 1000u, 10000u}) {
      const MeshDataset ds = clone_cyclic(base, n);
      double best = 1e300;
      for (int rep = 0; rep < 3; ++rep) best = std::min(best, timed([&] { run_batch(ds, {}, 1); }));
      times.push_back(best);
    }
  });
  const double r1 = times[1] / times[0], r2 = times[2] / times[1];
  const bool in_range = r1 >= 5 && r1 <= 20 && r2 >= 5 && r2 <= 20;
  return {in_range && total < 60.0,
          fmt("1e2/1e3/1e4 elements: %.4f/%.4f/%.4f s, ratios %.2f and %.2f (range [5, 20]), %.2f s (limit 60 s)",
              times[0], times[1], times[2], r1, r2, total)};
}

// 7. Face order does not change the result.
Outcome shuffle_invariance() {
  const auto suite = models::star_shaped_models(20, 7007);
  int failures = 0;
  double worst = 0.0;
  for (const auto& m : suite) {
    const KernelResult ref = kernel_of(m, {.shuffle = true, .seed = 0});
    for (std::uint64_t seed = 1; seed < 10; ++seed) {
      const KernelResult r = kernel_of(m, {.shuffle = true, .seed = seed});
      if (r.status != ref.status) {
        ++failures;
        continue;
      }
      if (!r.star_shaped()) continue;
      const double e = rel_diff(r.volume, ref.volume);
      worst = std::max(worst, e);
      if (e > 1e-9) ++failures;
    }
  }
  return {failures == 0, fmt("20 star-shaped models x 10 seeds, %d mismatches, max rel volume diff %.2e (tol 1e-9)",
                             failures, worst)};
}

// 8. The orientation predicate is exact.
int rational_sign(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& q) {
  auto d = [](double a, double b) -> mpq_class { return mpq_class(a) - mpq_class(b); };
  const mpq_class ax = d(p2.x, p1.x), ay = d(p2.y, p1.y), az = d(p2.z, p1.z);
  const mpq_class bx = d(p3.x, p1.x), by = d(p3.y, p1.y), bz = d(p3.z, p1.z);
  const mpq_class cx = d(q.x, p1.x), cy = d(q.y, p1.y), cz = d(q.z, p1.z);
  const mpq_class det = cx * (ay * bz - az * by) + cy * (az * bx - ax * bz) + cz * (ax * by - ay * bx);
  return sgn(det);
}

Outcome predicate_exactness() {
  std::mt19937_64 rng(8008);
  std::uniform_int_distribution<int> coord(-1000000, 1000000);
  std::uniform_int_distribution<int> weight(-1024, 1024);
  int coplanar_failures = 0, perturbed_failures = 0, perturbed = 0;
  for (int i = 0; i < 10000; ++i) {
    // Integer corners and dyadic weights: q is an exact affine combination.
    const Point3 a{double(coord(rng)), double(coord(rng)), double(coord(rng))};
    const Point3 b{double(coord(rng)), double(coord(rng)), double(coord(rng))};
    const Point3 c{double(coord(rng)), double(coord(rng)), double(coord(rng))};
    const double s = weight(rng) / 256.0, t = weight(rng) / 256.0;
    const Point3 q = a + s * (b - a) + t * (c - a);
    if (orient(a, b, c, q) != 0 || rational_sign(a, b, c, q) != 0) ++coplanar_failures;

    // Shift q to the origin (exact: all coordinates are multiples of 1/256
    // below 2^31), then nudge it by 1e-30 along the axis the plane normal
    // leans on most.
    const Point3 a0 = a - q, b0 = b - q, c0 = c - q;
    const Vector3 n = cross(b0 - a0, c0 - a0);
    int axis = 0;
    if (std::abs(n.y) > std::abs(n[axis])) axis = 1;
    if (std::abs(n.z) > std::abs(n[axis])) axis = 2;
    if (n[axis] == 0.0) continue;
    const double delta = (rng() & 1) ? 1e-30 : -1e-30;
    const Point3 q1{axis == 0 ? delta : 0.0, axis == 1 ? delta : 0.0, axis == 2 ? delta : 0.0};
    const int expected = rational_sign(a0, b0, c0, q1);
    ++perturbed;
    if (expected == 0 || orient(a0, b0, c0, q1) != expected) ++perturbed_failures;
  }
  return {coplanar_failures == 0 && perturbed_failures == 0 && perturbed == 10000,
          fmt("10000 coplanar quadruples: %d failures; %d quadruples perturbed by 1e-30: %d failures",
              coplanar_failures, perturbed, perturbed_failures)};
}

// 9. OFF output reads back bit for bit.
bool bit_equal(const Polyhedron& a, const Polyhedron& b) {
  return a.faces == b.faces && a.verts.size() == b.verts.size() &&
         std::memcmp(a.verts.data(), b.verts.data(), a.verts.size() * sizeof(Point3)) == 0;
}

Outcome round_trip() {
  std::vector<Polyhedron> all;
  std::size_t fixtures = 0;
  for (const auto& entry : std::filesystem::directory_iterator(POLYKERNEL_FIXTURES)) {
    if (entry.path().extension() == ".off") {
      all.push_back(read_off_file(entry.path().string()));
      ++fixtures;
    } else if (entry.path().extension() == ".coll") {
      for (auto& el : read_collection_file(entry.path().string()).elements) {
        all.push_back(std::move(el.poly));
        ++fixtures;
      }
    }
  }
  std::size_t kernels = 0;
  const std::size_t n_inputs = all.size();
  for (std::size_t i = 0; i < n_inputs; ++i) {
    const Polyhedron p = all[i];
    const KernelResult r = polyhedron_kernel(p, compute_outward_normals(p));
    if (r.star_shaped()) {
      all.push_back(*r.kernel);
      ++kernels;
    }
  }
  for (const auto& m : models::star_shaped_models(40, 9009)) {
    all.push_back(*kernel_of(m).kernel);
    ++kernels;
  }
  std::size_t failures = 0;
  for (const Polyhedron& p : all) {
    std::stringstream buf;
    write_off(p, buf);
    if (!bit_equal(read_off(buf), p)) ++failures;
  }
  return {failures == 0 && fixtures > 0,
          fmt("%zu fixture polyhedra and %zu kernels, %zu not bit-exact", fixtures, kernels, failures)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"convex identity", convex_identity},
      {"oracle equivalence", oracle_equivalence},
      {"tent family", tent_family},
      {"refinement invariance", refinement_invariance},
      {"empty-kernel early exit", empty_early_exit},
      {"linear batch scaling", batch_scaling},
      {"shuffle invariance", shuffle_invariance},
      {"predicate exactness", predicate_exactness},
      {"round-trip I/O", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
