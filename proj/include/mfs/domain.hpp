#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mfs/vec3.hpp"

namespace mfs {

struct Box {
  Point3 lo, hi;
};
struct Ball {
  Point3 center;
  double radius = 1.0;
};
struct SphericalShell {
  Point3 center;
  double inner = 0.5;
  double outer = 1.0;
};
/// Annulus inner <= r <= outer around the vertical line through (cx, cy),
/// cut to z_lo <= z <= z_hi.
struct CylindricalShell {
  double cx = 0.0, cy = 0.0;
  double inner = 0.5, outer = 1.5;
  double z_lo = -1.0, z_hi = 1.0;
};

using Shape = std::variant<Box, Ball, SphericalShell, CylindricalShell>;

/// Region removed from a shape, typically a singular set of a field.
struct Exclusion {
  enum class Kind { kCylinderZ, kSlab };
  Kind kind = Kind::kSlab;
  // kCylinderZ: points with hypot(x - cx, y - cy) < radius.
  double cx = 0.0, cy = 0.0, radius = 0.0;
  // kSlab: points with lo < p[axis] < hi.
  int axis = 2;
  double lo = 0.0, hi = 0.0;

  static Exclusion cylinder_z(double cx, double cy, double radius);
  static Exclusion slab(int axis, double lo, double hi);
  bool excludes(const Point3& p) const;
};

/// A sampling region: one shape minus any number of exclusions.
class DomainSpec {
 public:
  DomainSpec() : DomainSpec(Ball{}) {}  // the unit ball at the origin
  static DomainSpec box(const Point3& lo, const Point3& hi);
  static DomainSpec ball(const Point3& center, double radius);
  static DomainSpec spherical_shell(const Point3& center, double inner, double outer);
  static DomainSpec cylindrical_shell(double cx, double cy, double inner, double outer, double z_lo,
                                      double z_hi);

  /// Parses the CLI syntax, e.g. "box:-1,1,-1,1,-1,1", "ball:0,0,0,1",
  /// "shell:0,0,0,0.4,1", "cylshell:0,0,0.5,1.5,-1,1", optionally followed by
  /// ";exclude=cyl:cx,cy,r" or ";exclude=slab:axis,lo,hi" clauses.
  static DomainSpec parse(const std::string& text);

  /// Returns a copy with `e` removed. Throws if nothing would remain.
  DomainSpec excluding(const Exclusion& e) const;

  bool in_shape(const Point3& p) const;
  bool contains(const Point3& p) const;
  std::pair<Point3, Point3> bounding_box() const;
  /// Volume of the shape, ignoring exclusions.
  double shape_volume() const;

  const Shape& shape() const { return shape_; }
  const std::vector<Exclusion>& exclusions() const { return exclusions_; }
  std::string str() const;

 private:
  explicit DomainSpec(Shape s);
  Shape shape_;
  std::vector<Exclusion> exclusions_;
};

enum class SamplerKind { kHalton, kRandom };

struct SamplerConfig {
  SamplerKind kind = SamplerKind::kHalton;
  std::uint64_t seed = 0;
};

std::string to_string(SamplerKind kind);
SamplerKind parse_sampler_kind(const std::string& s);

/// Ordered sample points with the data needed to regenerate them.
struct SampleSet {
  std::vector<Point3> points;
  SamplerConfig sampler;
  DomainSpec domain;

  std::size_t size() const { return points.size(); }
};

/// Default sample count used by verification suites.
inline constexpr std::size_t kDefaultSamples = 1000;

/// Draws `count` points inside `domain` (shape minus exclusions) by
/// rejection from the bounding box. Halton uses bases (2, 3, 5) and starts
/// at index 1 + seed; random uses a 64-bit Mersenne twister seeded with
/// `seed`. Deterministic on every platform.
SampleSet sample_domain(const DomainSpec& domain, std::size_t count, SamplerConfig sampler = {});

/// Builds a SampleSet from explicit points; every point must lie in `domain`.
SampleSet explicit_samples(const DomainSpec& domain, std::vector<Point3> points);

/// Radical inverse of `index` in `base` (the 1-D Halton sequence).
double radical_inverse(std::uint64_t index, unsigned base);

}  // namespace mfs
