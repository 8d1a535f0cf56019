#include "polykernel/mesh_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string_view>

namespace polykernel {

namespace {

// Splits a stream into whitespace-separated tokens per line, dropping '#'
// comments and blank lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next() {
    while (std::getline(in_, line_)) {
      ++number_;
      if (const auto hash = line_.find('#'); hash != std::string::npos) line_.erase(hash);
      tokens_.clear();
      std::string_view rest(line_);
      while (true) {
        const auto start = rest.find_first_not_of(" \t\r\f\v");
        if (start == std::string_view::npos) break;
        rest.remove_prefix(start);
        const auto end = rest.find_first_of(" \t\r\f\v");
        tokens_.push_back(rest.substr(0, end));
        if (end == std::string_view::npos) break;
        rest.remove_prefix(end);
      }
      if (!tokens_.empty()) return true;
    }
    ++number_;
    tokens_.clear();
    return false;
  }

  const std::vector<std::string_view>& tokens() const { return tokens_; }
  std::size_t line() const { return number_; }

  [[noreturn]] void fail(const std::string& what, ErrorCode code = ErrorCode::ParseError) const {
    throw ParseError(code, number_, what);
  }

  double real(std::size_t i) const {
    double v = 0.0;
    const std::string_view t = tokens_.at(i);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
      fail("expected a real number, got '" + std::string(t) + "'");
    return v;
  }

  std::size_t count(std::size_t i) const {
    std::size_t v = 0;
    const std::string_view t = tokens_.at(i);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
      fail("expected a non-negative integer, got '" + std::string(t) + "'");
    return v;
  }

 private:
  std::istream& in_;
  std::string line_;
  std::vector<std::string_view> tokens_;
  std::size_t number_ = 0;
};

Point3 read_vertex(LineReader& r) {
  if (!r.next()) r.fail("unexpected end of input, expected a vertex line");
  if (r.tokens().size() < 3) r.fail("vertex line needs 3 coordinates");
  const Point3 p{r.real(0), r.real(1), r.real(2)};
  if (!is_finite(p)) r.fail("non-finite vertex coordinate");
  return p;
}

Face read_face(LineReader& r, std::size_t n_verts) {
  if (!r.next()) r.fail("unexpected end of input, expected a face line");
  const std::size_t k = r.count(0);
  if (k < 3) r.fail("face needs at least 3 vertices");
  if (r.tokens().size() < k + 1) r.fail("face line lists fewer indices than declared");
  Face f;
  f.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t id = r.count(i + 1);
    if (id >= n_verts)
      r.fail("vertex index " + std::to_string(id) + " out of range", ErrorCode::IndexOutOfRange);
    for (VertexId prev : f)
      if (prev == id) r.fail("face repeats vertex " + std::to_string(id));
    f.push_back(static_cast<VertexId>(id));
  }
  return f;
}

void put_point(std::ostream& out, const Point3& p) {
  char buf[96];
  const int n = std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.z);
  out.write(buf, n);
}

void put_face(std::ostream& out, const Face& f) {
  out << f.size();
  for (VertexId id : f) out << ' ' << id;
  out << '\n';
}

}  // namespace

Polyhedron read_off(std::istream& in) {
  LineReader r(in);
  if (!r.next() || r.tokens()[0] != "OFF") r.fail("missing OFF header");

  // Counts may share the header line.
  std::size_t first = 1;
  if (r.tokens().size() == 1) {
    if (!r.next()) r.fail("missing counts line");
    first = 0;
  }
  if (r.tokens().size() < first + 2) r.fail("counts line needs 'nv nf ne'");
  const std::size_t nv = r.count(first);
  const std::size_t nf = r.count(first + 1);

  Polyhedron p;
  p.verts.reserve(nv);
  p.faces.reserve(nf);
  for (std::size_t i = 0; i < nv; ++i) p.verts.push_back(read_vertex(r));
  for (std::size_t i = 0; i < nf; ++i) p.faces.push_back(read_face(r, nv));
  return p;
}

Polyhedron read_off_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_off(in);
}

void write_off(const Polyhedron& p, std::ostream& out) {
  out << "OFF\n" << p.verts.size() << ' ' << p.faces.size() << " 0\n";
  for (const Point3& v : p.verts) put_point(out, v);
  for (const Face& f : p.faces) put_face(out, f);
  if (!out) throw Error(ErrorCode::IoError, "write failed");
}

void write_off_file(const Polyhedron& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write_off(p, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::vector<Vector3> compute_outward_normals(const Polyhedron& p) {
  const double flip = signed_volume(p) < 0.0 ? -1.0 : 1.0;
  std::vector<Vector3> normals;
  normals.reserve(p.faces.size());
  for (const Face& f : p.faces) normals.push_back(flip * face_normal_newell(p, f));
  return normals;
}

bool orient_outward(Polyhedron& p) {
  if (signed_volume(p) >= 0.0) return false;
  p = reversed(std::move(p));
  return true;
}

MeshDataset read_collection(std::istream& in) {
  LineReader r(in);
  MeshDataset ds;
  std::set<std::string, std::less<>> ids;
  bool pending = r.next();
  while (pending) {
    const auto& t = r.tokens();
    if (t[0] != "element" || t.size() < 2) r.fail("expected 'element <id>'");
    MeshElement el;
    el.id = std::string(t[1]);
    if (!ids.insert(el.id).second) r.fail("duplicate element id '" + el.id + "'");
    const std::string where = "element '" + el.id + "': ";

    try {
      if (!r.next() || r.tokens()[0] != "verts" || r.tokens().size() < 2)
        r.fail("expected 'verts <nv>'");
      const std::size_t nv = r.count(1);
      for (std::size_t i = 0; i < nv; ++i) el.poly.verts.push_back(read_vertex(r));

      if (!r.next() || r.tokens()[0] != "faces" || r.tokens().size() < 2)
        r.fail("expected 'faces <nf>'");
      const std::size_t nf = r.count(1);
      for (std::size_t i = 0; i < nf; ++i) el.poly.faces.push_back(read_face(r, nv));

      pending = r.next();
      if (pending && r.tokens()[0] == "normals") {
        if (r.tokens().size() < 2 || r.count(1) != nf) r.fail("normals count must match faces");
        for (std::size_t i = 0; i < nf; ++i) {
          const Point3 n = read_vertex(r);
          const double len = norm(n);
          if (!(len > 0.0)) r.fail("zero-length normal");
          el.normals.push_back((1.0 / len) * n);
        }
        pending = r.next();
      } else {
        orient_outward(el.poly);
        el.normals = compute_outward_normals(el.poly);
      }
    } catch (const ParseError& e) {
      throw ParseError(e.code(), e.line(), where + e.detail());
    } catch (const Error& e) {
      throw ParseError(e.code(), r.line(), where + e.what());
    }
    ds.elements.push_back(std::move(el));
  }
  return ds;
}

MeshDataset read_collection_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_collection(in);
}

void write_collection(const MeshDataset& ds, std::ostream& out, bool with_normals) {
  for (const MeshElement& el : ds.elements) {
    out << "element " << el.id << '\n' << "verts " << el.poly.verts.size() << '\n';
    for (const Point3& v : el.poly.verts) put_point(out, v);
    out << "faces " << el.poly.faces.size() << '\n';
    for (const Face& f : el.poly.faces) put_face(out, f);
    if (with_normals && el.normals.size() == el.poly.faces.size()) {
      out << "normals " << el.normals.size() << '\n';
      for (const Vector3& n : el.normals) put_point(out, n);
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed");
}

void write_collection_file(const MeshDataset& ds, const std::string& path, bool with_normals) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write_collection(ds, out, with_normals);
}

}  // namespace polykernel
