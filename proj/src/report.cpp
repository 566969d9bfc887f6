#include "mfs/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mfs/expr.hpp"
#include "mfs/parallel.hpp"

namespace mfs {

Provenance provenance_of(const SampleSet& s) {
  return Provenance{s.domain.str(), to_string(s.sampler.kind), s.sampler.seed, s.size()};
}

bool ResidualReport::passed() const {
  if (checks.empty()) return false;
  for (const CheckStats& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const CheckStats* ResidualReport::find(std::string_view name) const {
  for (const CheckStats& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const CheckStats& ResidualReport::check(std::string_view name) const {
  if (const CheckStats* c = find(name)) return *c;
  throw std::out_of_range("report has no check named '" + std::string(name) + "'");
}

void ResidualReport::append(const ResidualReport& other, const std::string& prefix) {
  for (CheckStats c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  for (const std::string& n : other.notes) notes.push_back(prefix + n);
}

namespace {

struct Slot {
  bool ok = false;
  std::string error;
};

CheckStats reduce(std::string name, const std::vector<Point3>& points, const std::vector<Slot>& slots,
                  const std::vector<double>& values, std::size_t stride, std::size_t offset, double tolerance,
                  CheckStats::Bound bound) {
  CheckStats c;
  c.name = std::move(name);
  c.bound = bound;
  c.tolerance = tolerance;
  double sum = 0.0, sum_sq = 0.0;
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  Point3 at_hi, at_lo;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].ok) {
      ++c.failed;
      if (c.first_error.empty()) c.first_error = slots[i].error;
      continue;
    }
    const double v = values[i * stride + offset];
    if (std::isnan(v)) {
      ++c.failed;
      if (c.first_error.empty()) c.first_error = "NaN value";
      continue;
    }
    ++c.evaluated;
    sum += v;
    sum_sq += v * v;
    if (v > hi) {
      hi = v;
      at_hi = points[i];
    }
    if (v < lo) {
      lo = v;
      at_lo = points[i];
    }
  }
  if (c.evaluated == 0) {
    c.pass = false;
    if (c.first_error.empty()) c.first_error = "no evaluable samples";
    return c;
  }
  const double n = static_cast<double>(c.evaluated);
  c.max = hi;
  c.min = lo;
  c.mean = sum / n;
  c.rms = std::sqrt(sum_sq / n);
  if (bound == CheckStats::Bound::kUpper) {
    c.worst = at_hi;
    c.pass = c.max < tolerance;
  } else if (bound == CheckStats::Bound::kAbsolute) {
    c.worst = std::abs(hi) >= std::abs(lo) ? at_hi : at_lo;
    c.pass = std::max(std::abs(hi), std::abs(lo)) < tolerance;
  } else {
    c.worst = at_lo;
    c.pass = c.min > tolerance;
  }
  return c;
}

}  // namespace

std::vector<CheckStats> compute_checks(const std::vector<std::string>& names, const SampleSet& samples,
                                       const std::function<void(const Point3&, double*)>& fn,
                                       const std::vector<double>& tolerances,
                                       const std::vector<CheckStats::Bound>& bounds) {
  if (tolerances.size() != names.size() || (!bounds.empty() && bounds.size() != names.size())) {
    throw std::invalid_argument("compute_checks: names, tolerances and bounds differ in length");
  }
  const std::size_t k = names.size();
  const std::size_t n = samples.size();
  std::vector<Slot> slots(n);
  std::vector<double> values(n * k, 0.0);
  parallel_for(n, [&](std::size_t i) {
    try {
      fn(samples.points[i], values.data() + i * k);
      slots[i].ok = true;
    } catch (const EvalError& e) {
      slots[i].error = e.what();
    } catch (const std::domain_error& e) {
      slots[i].error = e.what();
    }
  });
  std::vector<CheckStats> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    out.push_back(reduce(names[j], samples.points, slots, values, k, j, tolerances[j],
                         bounds.empty() ? CheckStats::Bound::kUpper : bounds[j]));
  }
  return out;
}

CheckStats compute_check(std::string name, const SampleSet& samples, const PointFn& fn, double tolerance,
                         CheckStats::Bound bound) {
  auto v = compute_checks({std::move(name)}, samples, [&](const Point3& p, double* out) { out[0] = fn(p); },
                          {tolerance}, {bound});
  return std::move(v.front());
}

CheckStats summarize_values(std::string name, const std::vector<Point3>& points,
                            const std::vector<std::optional<double>>& values, double tolerance,
                            CheckStats::Bound bound, const std::vector<std::string>& errors) {
  if (points.size() != values.size()) throw std::invalid_argument("summarize_values: size mismatch");
  std::vector<Slot> slots(points.size());
  std::vector<double> flat(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    slots[i].ok = values[i].has_value();
    if (slots[i].ok) {
      flat[i] = *values[i];
    } else {
      slots[i].error = i < errors.size() && !errors[i].empty() ? errors[i] : "evaluation failed";
    }
  }
  return reduce(std::move(name), points, slots, flat, 1, 0, tolerance, bound);
}

ConstructionError::ConstructionError(const std::string& what, ResidualReport report)
    : std::runtime_error(what), report_(std::move(report)) {}

nlohmann::ordered_json to_json(const Point3& p) { return nlohmann::ordered_json::array({p.x, p.y, p.z}); }
nlohmann::ordered_json to_json(const Vec3& v) { return nlohmann::ordered_json::array({v.x, v.y, v.z}); }

nlohmann::ordered_json to_json(const CheckStats& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["bound"] = c.bound == CheckStats::Bound::kUpper   ? "upper"
               : c.bound == CheckStats::Bound::kLower ? "lower"
                                                      : "absolute";
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  j["evaluated"] = c.evaluated;
  j["failed"] = c.failed;
  j["max"] = c.max;
  j["min"] = c.min;
  j["mean"] = c.mean;
  j["rms"] = c.rms;
  j["worst_point"] = to_json(c.worst);
  if (!c.first_error.empty()) j["first_error"] = c.first_error;
  return j;
}

nlohmann::ordered_json to_json(const Provenance& p) {
  nlohmann::ordered_json j;
  j["domain"] = p.domain;
  j["sampler"] = p.sampler;
  j["seed"] = p.seed;
  j["count"] = p.count;
  return j;
}

nlohmann::ordered_json to_json(const ResidualReport& r) {
  nlohmann::ordered_json j;
  j["subject"] = r.subject;
  j["pass"] = r.passed();
  j["samples"] = to_json(r.provenance);
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckStats& c : r.checks) j["checks"].push_back(to_json(c));
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

}  // namespace mfs
