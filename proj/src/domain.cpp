#include "mfs/domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mfs {
namespace {

std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, end};
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("domain: empty number in '" + text + "'");
    item = item.substr(b, e - b + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw std::invalid_argument("domain: bad number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("domain: " + what);
}

void require_finite(const Point3& p) { require(all_finite(p), "non-finite coordinate"); }

}  // namespace

Exclusion Exclusion::cylinder_z(double cx, double cy, double radius) {
  require(radius > 0.0, "exclusion cylinder radius must be positive");
  Exclusion e;
  e.kind = Kind::kCylinderZ;
  e.cx = cx;
  e.cy = cy;
  e.radius = radius;
  return e;
}

Exclusion Exclusion::slab(int axis, double lo, double hi) {
  require(axis >= 0 && axis <= 2, "slab axis must be 0, 1 or 2");
  require(lo < hi, "slab needs lo < hi");
  Exclusion e;
  e.kind = Kind::kSlab;
  e.axis = axis;
  e.lo = lo;
  e.hi = hi;
  return e;
}

bool Exclusion::excludes(const Point3& p) const {
  if (kind == Kind::kCylinderZ) return std::hypot(p.x - cx, p.y - cy) < radius;
  return p[axis] > lo && p[axis] < hi;
}

DomainSpec::DomainSpec(Shape s) : shape_(std::move(s)) {}

DomainSpec DomainSpec::box(const Point3& lo, const Point3& hi) {
  require_finite(lo);
  require_finite(hi);
  require(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z, "box needs lo < hi on every axis");
  return DomainSpec(Box{lo, hi});
}

DomainSpec DomainSpec::ball(const Point3& center, double radius) {
  require_finite(center);
  require(radius > 0.0 && std::isfinite(radius), "ball radius must be positive");
  return DomainSpec(Ball{center, radius});
}

DomainSpec DomainSpec::spherical_shell(const Point3& center, double inner, double outer) {
  require_finite(center);
  require(inner >= 0.0 && inner < outer && std::isfinite(outer), "shell needs 0 <= inner < outer");
  return DomainSpec(SphericalShell{center, inner, outer});
}

DomainSpec DomainSpec::cylindrical_shell(double cx, double cy, double inner, double outer, double z_lo,
                                         double z_hi) {
  require(inner >= 0.0 && inner < outer && std::isfinite(outer), "cylindrical shell needs 0 <= inner < outer");
  require(z_lo < z_hi, "cylindrical shell needs z_lo < z_hi");
  return DomainSpec(CylindricalShell{cx, cy, inner, outer, z_lo, z_hi});
}

DomainSpec DomainSpec::excluding(const Exclusion& e) const {
  DomainSpec d = *this;
  d.exclusions_.push_back(e);
  // A coarse Halton probe; if nothing survives, the exclusion swallowed the shape.
  const auto [lo, hi] = d.bounding_box();
  for (std::uint64_t i = 1; i <= 4096; ++i) {
    const Point3 p(lo.x + (hi.x - lo.x) * radical_inverse(i, 2), lo.y + (hi.y - lo.y) * radical_inverse(i, 3),
                   lo.z + (hi.z - lo.z) * radical_inverse(i, 5));
    if (d.contains(p)) return d;
  }
  throw std::invalid_argument("domain: exclusion covers the whole shape");
}

bool DomainSpec::in_shape(const Point3& p) const {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return p.x >= s.lo.x && p.x <= s.hi.x && p.y >= s.lo.y && p.y <= s.hi.y && p.z >= s.lo.z &&
                 p.z <= s.hi.z;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return norm(p - s.center) < s.radius;
        } else if constexpr (std::is_same_v<T, SphericalShell>) {
          const double r = norm(p - s.center);
          return r > s.inner && r < s.outer;
        } else {
          const double r = std::hypot(p.x - s.cx, p.y - s.cy);
          return r >= s.inner && r <= s.outer && p.z >= s.z_lo && p.z <= s.z_hi;
        }
      },
      shape_);
}

bool DomainSpec::contains(const Point3& p) const {
  if (!in_shape(p)) return false;
  return std::none_of(exclusions_.begin(), exclusions_.end(), [&](const Exclusion& e) { return e.excludes(p); });
}

std::pair<Point3, Point3> DomainSpec::bounding_box() const {
  return std::visit(
      [](const auto& s) -> std::pair<Point3, Point3> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return {s.lo, s.hi};
        } else if constexpr (std::is_same_v<T, Ball>) {
          const Vec3 r(s.radius, s.radius, s.radius);
          return {s.center - r, s.center + r};
        } else if constexpr (std::is_same_v<T, SphericalShell>) {
          const Vec3 r(s.outer, s.outer, s.outer);
          return {s.center - r, s.center + r};
        } else {
          return {Point3(s.cx - s.outer, s.cy - s.outer, s.z_lo), Point3(s.cx + s.outer, s.cy + s.outer, s.z_hi)};
        }
      },
      shape_);
}

double DomainSpec::shape_volume() const {
  constexpr double pi = std::numbers::pi;
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return (s.hi.x - s.lo.x) * (s.hi.y - s.lo.y) * (s.hi.z - s.lo.z);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return 4.0 / 3.0 * pi * s.radius * s.radius * s.radius;
        } else if constexpr (std::is_same_v<T, SphericalShell>) {
          return 4.0 / 3.0 * pi * (s.outer * s.outer * s.outer - s.inner * s.inner * s.inner);
        } else {
          return pi * (s.outer * s.outer - s.inner * s.inner) * (s.z_hi - s.z_lo);
        }
      },
      shape_);
}

std::string DomainSpec::str() const {
  std::string out = std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Box>) {
          return "box:" + num(s.lo.x) + "," + num(s.hi.x) + "," + num(s.lo.y) + "," + num(s.hi.y) + "," +
                 num(s.lo.z) + "," + num(s.hi.z);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return "ball:" + num(s.center.x) + "," + num(s.center.y) + "," + num(s.center.z) + "," + num(s.radius);
        } else if constexpr (std::is_same_v<T, SphericalShell>) {
          return "shell:" + num(s.center.x) + "," + num(s.center.y) + "," + num(s.center.z) + "," +
                 num(s.inner) + "," + num(s.outer);
        } else {
          return "cylshell:" + num(s.cx) + "," + num(s.cy) + "," + num(s.inner) + "," + num(s.outer) + "," +
                 num(s.z_lo) + "," + num(s.z_hi);
        }
      },
      shape_);
  for (const Exclusion& e : exclusions_) {
    if (e.kind == Exclusion::Kind::kCylinderZ) {
      out += ";exclude=cyl:" + num(e.cx) + "," + num(e.cy) + "," + num(e.radius);
    } else {
      out += ";exclude=slab:" + std::to_string(e.axis) + "," + num(e.lo) + "," + num(e.hi);
    }
  }
  return out;
}

DomainSpec DomainSpec::parse(const std::string& text) {
  std::vector<std::string> clauses;
  {
    std::stringstream ss(text);
    std::string c;
    while (std::getline(ss, c, ';')) clauses.push_back(c);
  }
  require(!clauses.empty(), "empty domain string");
  const std::string& head = clauses.front();
  const auto colon = head.find(':');
  require(colon != std::string::npos, "expected <shape>:<numbers> in '" + head + "'");
  const std::string kind = head.substr(0, colon);
  const std::vector<double> v = parse_numbers(head.substr(colon + 1));
  auto arity = [&](std::size_t n) {
    require(v.size() == n, "'" + kind + "' takes " + std::to_string(n) + " numbers");
  };
  DomainSpec d = [&]() -> DomainSpec {
    if (kind == "box") {
      arity(6);
      return box({v[0], v[2], v[4]}, {v[1], v[3], v[5]});
    }
    if (kind == "ball") {
      arity(4);
      return ball({v[0], v[1], v[2]}, v[3]);
    }
    if (kind == "shell") {
      arity(5);
      return spherical_shell({v[0], v[1], v[2]}, v[3], v[4]);
    }
    if (kind == "cylshell") {
      arity(6);
      return cylindrical_shell(v[0], v[1], v[2], v[3], v[4], v[5]);
    }
    throw std::invalid_argument("domain: unknown shape '" + kind + "'");
  }();
  for (std::size_t i = 1; i < clauses.size(); ++i) {
    const std::string& c = clauses[i];
    const std::string prefix = "exclude=";
    require(c.rfind(prefix, 0) == 0, "unknown clause '" + c + "'");
    const std::string body = c.substr(prefix.size());
    const auto col = body.find(':');
    require(col != std::string::npos, "bad exclusion '" + c + "'");
    const std::string ek = body.substr(0, col);
    const std::vector<double> ev = parse_numbers(body.substr(col + 1));
    if (ek == "cyl") {
      require(ev.size() == 3, "cyl exclusion takes cx,cy,r");
      d = d.excluding(Exclusion::cylinder_z(ev[0], ev[1], ev[2]));
    } else if (ek == "slab") {
      require(ev.size() == 3 && ev[0] == std::floor(ev[0]), "slab exclusion takes axis,lo,hi");
      d = d.excluding(Exclusion::slab(static_cast<int>(ev[0]), ev[1], ev[2]));
    } else {
      throw std::invalid_argument("domain: unknown exclusion '" + ek + "'");
    }
  }
  return d;
}

std::string to_string(SamplerKind kind) { return kind == SamplerKind::kHalton ? "halton" : "random"; }

SamplerKind parse_sampler_kind(const std::string& s) {
  if (s == "halton") return SamplerKind::kHalton;
  if (s == "random") return SamplerKind::kRandom;
  throw std::invalid_argument("unknown sampler '" + s + "' (expected halton or random)");
}

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

SampleSet sample_domain(const DomainSpec& domain, std::size_t count, SamplerConfig sampler) {
  SampleSet out{{}, sampler, domain};
  out.points.reserve(count);
  const auto [lo, hi] = domain.bounding_box();
  const Vec3 span = hi - lo;
  const std::size_t budget = 1000 * count + 100000;

  std::mt19937_64 rng(sampler.seed);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::uint64_t index = 1 + sampler.seed;
  for (std::size_t attempt = 0; out.points.size() < count; ++attempt) {
    if (attempt >= budget) {
      throw std::runtime_error("sample_domain: rejection budget exhausted for " + domain.str());
    }
    double u[3];
    if (sampler.kind == SamplerKind::kHalton) {
      u[0] = radical_inverse(index, 2);
      u[1] = radical_inverse(index, 3);
      u[2] = radical_inverse(index, 5);
      ++index;
    } else {
      for (double& ui : u) ui = uniform();
    }
    const Point3 p(lo.x + span.x * u[0], lo.y + span.y * u[1], lo.z + span.z * u[2]);
    if (domain.contains(p)) out.points.push_back(p);
  }
  return out;
}

SampleSet explicit_samples(const DomainSpec& domain, std::vector<Point3> points) {
  for (const Point3& p : points) {
    if (!domain.contains(p)) throw std::invalid_argument("explicit_samples: point outside " + domain.str());
  }
  return SampleSet{std::move(points), SamplerConfig{}, domain};
}

}  // namespace mfs
