#include "dualtaylor/sets.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "dualtaylor/errors.hpp"

namespace dualtaylor {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_impl(const SetSpec& spec, const std::string& path) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DiskSpec>) {
          if (!is_finite(s.center)) {
            throw ValidationError(path + ".center: not finite");
          }
          if (!is_finite(s.radius) || s.radius <= 0) {
            throw ValidationError(path + ".radius: must be > 0");
          }
        } else if constexpr (std::is_same_v<T, SegmentSpec>) {
          if (!is_finite(s.a) || !is_finite(s.b)) {
            throw ValidationError(path + ": endpoint not finite");
          }
          if (s.a == s.b) {
            throw ValidationError(path + ": endpoints coincide");
          }
        } else if constexpr (std::is_same_v<T, PolygonSpec>) {
          if (s.vertices.size() < 3) {
            throw ValidationError(path + ".vertices: need at least 3");
          }
          for (const auto& v : s.vertices) {
            if (!is_finite(v)) {
              throw ValidationError(path + ".vertices: vertex not finite");
            }
          }
          // Non-collinearity: some triple spans nonzero area.
          double scale = 0;
          for (std::size_t i = 1; i < s.vertices.size(); ++i) {
            scale = std::max(scale, std::abs(s.vertices[i] - s.vertices[0]));
          }
          bool collinear = true;
          for (std::size_t i = 2; i < s.vertices.size() && collinear; ++i) {
            const ComplexScalar u = s.vertices[1] - s.vertices[0];
            const ComplexScalar v = s.vertices[i] - s.vertices[0];
            const double cross =
                u.real() * v.imag() - u.imag() * v.real();
            if (std::abs(cross) > 1e-14 * scale * scale) collinear = false;
          }
          if (collinear) {
            throw ValidationError(path + ".vertices: all collinear");
          }
        } else if constexpr (std::is_same_v<T, UnionSpec>) {
          if (s.members.empty()) {
            throw ValidationError(path + ".members: empty union");
          }
          for (std::size_t i = 0; i < s.members.size(); ++i) {
            validate_impl(s.members[i],
                          path + ".members[" + std::to_string(i) + "]");
          }
        }
      },
      spec.shape);
}

double point_segment_distance(ComplexScalar z, ComplexScalar a,
                              ComplexScalar b) {
  const ComplexScalar ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0) return std::abs(z - a);
  double t = ((z.real() - a.real()) * ab.real() +
              (z.imag() - a.imag()) * ab.imag()) /
             len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

bool point_in_polygon(ComplexScalar z, const std::vector<ComplexScalar>& v) {
  // Even-odd crossing rule; callers keep query points away from edges.
  bool inside = false;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const bool cross = (v[i].imag() > z.imag()) != (v[j].imag() > z.imag());
    if (!cross) continue;
    const double x = v[j].real() + (v[i].real() - v[j].real()) *
                                       (z.imag() - v[j].imag()) /
                                       (v[i].imag() - v[j].imag());
    if (z.real() < x) inside = !inside;
  }
  return inside;
}

double polygon_boundary_distance(ComplexScalar z,
                                 const std::vector<ComplexScalar>& v) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    d = std::min(d, point_segment_distance(z, v[j], v[i]));
  }
  return d;
}

void sample_segment_into(ComplexScalar a, ComplexScalar b, double density,
                         bool skip_last, std::vector<ComplexScalar>& out) {
  const double len = std::abs(b - a);
  const int n = std::max(1, static_cast<int>(std::ceil(len * density)));
  const int last = skip_last ? n - 1 : n;
  for (int k = 0; k <= last; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    out.push_back(a + t * (b - a));
  }
}

// Interior lattice: spacing h = 1/sqrt(density), offsets (i+1/2)h from the
// anchor, points kept when at least h/2 inside the boundary. The margin
// makes membership tests unambiguous and keeps very coarse grids empty.
void sample_disk_interior(const DiskSpec& d, double density,
                          std::vector<ComplexScalar>& out) {
  const double h = 1.0 / std::sqrt(density);
  const double reach = d.radius - h / 2;
  if (reach <= 0) return;
  const int m = static_cast<int>(std::ceil(d.radius / h));
  for (int j = -m; j < m; ++j) {
    const double y = (j + 0.5) * h;
    for (int i = -m; i < m; ++i) {
      const double x = (i + 0.5) * h;
      if (x * x + y * y <= reach * reach) {
        out.push_back(d.center + ComplexScalar(x, y));
      }
    }
  }
}

void sample_polygon_interior(const PolygonSpec& p, double density,
                             std::vector<ComplexScalar>& out) {
  const double h = 1.0 / std::sqrt(density);
  double xmin = p.vertices[0].real(), xmax = xmin;
  double ymin = p.vertices[0].imag(), ymax = ymin;
  for (const auto& v : p.vertices) {
    xmin = std::min(xmin, v.real());
    xmax = std::max(xmax, v.real());
    ymin = std::min(ymin, v.imag());
    ymax = std::max(ymax, v.imag());
  }
  // Lattice anchored at the bounding-box corner so sampling commutes with
  // translation.
  const int ni = static_cast<int>(std::ceil((xmax - xmin) / h));
  const int nj = static_cast<int>(std::ceil((ymax - ymin) / h));
  for (int j = 0; j < nj; ++j) {
    const double y = ymin + (j + 0.5) * h;
    for (int i = 0; i < ni; ++i) {
      const double x = xmin + (i + 0.5) * h;
      const ComplexScalar z(x, y);
      if (polygon_boundary_distance(z, p.vertices) >= h / 2 &&
          point_in_polygon(z, p.vertices)) {
        out.push_back(z);
      }
    }
  }
}

void sample_into(const SetSpec& spec, double density,
                 std::vector<ComplexScalar>& out) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DiskSpec>) {
          const int m = std::max(
              1, static_cast<int>(std::ceil(2 * kPi * s.radius * density)));
          for (int k = 0; k < m; ++k) {
            const double theta = 2 * kPi * k / m;
            out.push_back(s.center + s.radius * ComplexScalar(std::cos(theta),
                                                              std::sin(theta)));
          }
          sample_disk_interior(s, density, out);
        } else if constexpr (std::is_same_v<T, SegmentSpec>) {
          sample_segment_into(s.a, s.b, density, /*skip_last=*/false, out);
        } else if constexpr (std::is_same_v<T, PolygonSpec>) {
          const std::size_t n = s.vertices.size();
          for (std::size_t i = 0; i < n; ++i) {
            sample_segment_into(s.vertices[i], s.vertices[(i + 1) % n],
                                density, /*skip_last=*/true, out);
          }
          if (s.filled) sample_polygon_interior(s, density, out);
        } else if constexpr (std::is_same_v<T, UnionSpec>) {
          for (const auto& m : s.members) sample_into(m, density, out);
        }
      },
      spec.shape);
}

}  // namespace

void validate(const SetSpec& spec) { validate_impl(spec, "set"); }

SetSpec translate(const SetSpec& spec, ComplexScalar delta) {
  if (!is_finite(delta)) throw ValidationError("translate: delta not finite");
  return std::visit(
      [&](const auto& s) -> SetSpec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DiskSpec>) {
          return SetSpec::disk(s.center + delta, s.radius);
        } else if constexpr (std::is_same_v<T, SegmentSpec>) {
          return SetSpec::segment(s.a + delta, s.b + delta);
        } else if constexpr (std::is_same_v<T, PolygonSpec>) {
          std::vector<ComplexScalar> v = s.vertices;
          for (auto& z : v) z += delta;
          return SetSpec::polygon(std::move(v), s.filled);
        } else {
          std::vector<SetSpec> members;
          members.reserve(s.members.size());
          for (const auto& m : s.members) members.push_back(translate(m, delta));
          return SetSpec::set_union(std::move(members));
        }
      },
      spec.shape);
}

bool contains_interior(const SetSpec& spec, ComplexScalar z) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DiskSpec>) {
          return std::abs(z - s.center) < s.radius;
        } else if constexpr (std::is_same_v<T, SegmentSpec>) {
          return false;
        } else if constexpr (std::is_same_v<T, PolygonSpec>) {
          return s.filled && point_in_polygon(z, s.vertices) &&
                 polygon_boundary_distance(z, s.vertices) > 1e-12;
        } else {
          for (const auto& m : s.members) {
            if (contains_interior(m, z)) return true;
          }
          return false;
        }
      },
      spec.shape);
}

SampledSet sample(const SetSpec& spec, double density) {
  validate(spec);
  if (!is_finite(density) || density <= 0) {
    throw ValidationError("sample.density: must be > 0");
  }
  SampledSet out;
  out.spec = spec;
  out.density = density;
  sample_into(spec, density, out.points);
  return out;
}

double discrete_sup_norm(const std::vector<ComplexScalar>& values) {
  if (values.empty()) {
    throw ValidationError("discrete_sup_norm: empty value list");
  }
  double m = 0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double min_pairwise_distance(const SampledSet& a, const SampledSet& b) {
  if (a.points.empty() || b.points.empty()) {
    throw ValidationError("min_pairwise_distance: empty grid");
  }
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : a.points) {
    for (const auto& q : b.points) {
      d = std::min(d, std::abs(p - q));
    }
  }
  return d;
}

void require_disjoint(const SampledSet& a, const SampledSet& b,
                      const std::string& what) {
  const double threshold = 10.0 / std::min(a.density, b.density);
  const double d = min_pairwise_distance(a, b);
  if (d < threshold) {
    throw ValidationError(
        what + ": grids are not certifiably disjoint (min distance " +
        format_double(d) + " < " + format_double(threshold) +
        "; raise the density or separate the sets)");
  }
}

void write_setspec(std::ostream& os, const SetSpec& spec) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DiskSpec>) {
          os << "disk " << format_complex(s.center) << " "
             << format_double(s.radius) << "\n";
        } else if constexpr (std::is_same_v<T, SegmentSpec>) {
          os << "segment " << format_complex(s.a) << " " << format_complex(s.b)
             << "\n";
        } else if constexpr (std::is_same_v<T, PolygonSpec>) {
          os << "polygon " << (s.filled ? 1 : 0) << " " << s.vertices.size();
          for (const auto& v : s.vertices) os << " " << format_complex(v);
          os << "\n";
        } else {
          os << "union " << s.members.size() << "\n";
          for (const auto& m : s.members) write_setspec(os, m);
        }
      },
      spec.shape);
}

SetSpec read_setspec(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("set spec: unexpected EOF");
  std::istringstream iss(line);
  std::string kind;
  iss >> kind;
  auto next = [&](const std::string& what) -> std::string {
    std::string tok;
    if (!(iss >> tok)) throw ParseError("set spec: missing " + what);
    return tok;
  };
  if (kind == "disk") {
    const double cre = parse_double(next("center.re"), "disk.center.re");
    const double cim = parse_double(next("center.im"), "disk.center.im");
    const double r = parse_double(next("radius"), "disk.radius");
    return SetSpec::disk({cre, cim}, r);
  }
  if (kind == "segment") {
    const double are = parse_double(next("a.re"), "segment.a.re");
    const double aim = parse_double(next("a.im"), "segment.a.im");
    const double bre = parse_double(next("b.re"), "segment.b.re");
    const double bim = parse_double(next("b.im"), "segment.b.im");
    return SetSpec::segment({are, aim}, {bre, bim});
  }
  if (kind == "polygon") {
    const long long filled = parse_integer(next("filled"), "polygon.filled");
    const long long n = parse_integer(next("count"), "polygon.count");
    if (n < 3 || n > 100000) throw ParseError("polygon.count: out of range");
    std::vector<ComplexScalar> v;
    v.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      const double re = parse_double(next("vertex.re"), "polygon.vertex.re");
      const double im = parse_double(next("vertex.im"), "polygon.vertex.im");
      v.emplace_back(re, im);
    }
    return SetSpec::polygon(std::move(v), filled != 0);
  }
  if (kind == "union") {
    const long long n = parse_integer(next("count"), "union.count");
    if (n < 1 || n > 10000) throw ParseError("union.count: out of range");
    std::vector<SetSpec> members;
    members.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) members.push_back(read_setspec(is));
    return SetSpec::set_union(std::move(members));
  }
  throw ParseError("set spec: unknown kind '" + kind + "'");
}

}  // namespace dualtaylor
