#pragma once

#include <iosfwd>
#include <variant>
#include <vector>

#include "dualtaylor/numio.hpp"

namespace dualtaylor {

struct SetSpec;

struct DiskSpec {
  ComplexScalar center{};
  double radius = 0;
};

struct SegmentSpec {
  ComplexScalar a{};
  ComplexScalar b{};
};

struct PolygonSpec {
  std::vector<ComplexScalar> vertices;
  bool filled = true;
};

struct UnionSpec {
  std::vector<SetSpec> members;
};

// Declarative geometry for a compact plane set. The built-in variants all
// have connected complement by construction; for unions that property is a
// documented user obligation and is not verified here.
struct SetSpec {
  std::variant<DiskSpec, SegmentSpec, PolygonSpec, UnionSpec> shape;

  SetSpec() = default;
  SetSpec(DiskSpec d) : shape(std::move(d)) {}
  SetSpec(SegmentSpec s) : shape(std::move(s)) {}
  SetSpec(PolygonSpec p) : shape(std::move(p)) {}
  SetSpec(UnionSpec u) : shape(std::move(u)) {}

  static SetSpec disk(ComplexScalar center, double radius) {
    return SetSpec(DiskSpec{center, radius});
  }
  static SetSpec segment(ComplexScalar a, ComplexScalar b) {
    return SetSpec(SegmentSpec{a, b});
  }
  static SetSpec polygon(std::vector<ComplexScalar> vertices, bool filled) {
    return SetSpec(PolygonSpec{std::move(vertices), filled});
  }
  static SetSpec set_union(std::vector<SetSpec> members) {
    return SetSpec(UnionSpec{std::move(members)});
  }
};

// Throws ValidationError naming the offending field.
void validate(const SetSpec& spec);

// Shifts every geometric datum by delta.
SetSpec translate(const SetSpec& spec, ComplexScalar delta);

// Strictly-inside test (open interior; false for segments and unfilled
// polygons).
bool contains_interior(const SetSpec& spec, ComplexScalar z);

// Deterministic discretization of a SetSpec. `density` is read as points
// per unit length on boundaries and points per unit area in filled
// interiors. Boundaries are always part of the grid; interior points are
// kept as a cross-check. Resampling with identical (spec, density)
// reproduces the identical point list.
struct SampledSet {
  SetSpec spec;
  double density = 0;
  std::vector<ComplexScalar> points;
};

SampledSet sample(const SetSpec& spec, double density);

// Max modulus over a non-empty value list. An empty list is a
// configuration bug, never a zero norm.
double discrete_sup_norm(const std::vector<ComplexScalar>& values);

double min_pairwise_distance(const SampledSet& a, const SampledSet& b);

// Separation guard: refuses (ValidationError) when the grids are too
// coarse to certify that the two sets are disjoint, i.e. when
// min_pairwise_distance < 10 / min(density_a, density_b).
void require_disjoint(const SampledSet& a, const SampledSet& b,
                      const std::string& what);

// Line-oriented spec serialization used inside certificate files.
void write_setspec(std::ostream& os, const SetSpec& spec);
SetSpec read_setspec(std::istream& is);

}  // namespace dualtaylor
