#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mfs/domain.hpp"

namespace mfs {

/// Summary statistics of one pointwise quantity over a sample set.
struct CheckStats {
  enum class Bound {
    kUpper,  // passes when every value is below the tolerance
    kLower,  // passes when every value is above the tolerance
    kAbsolute,  // signed statistics; passes when every |value| is below the tolerance
  };

  std::string name;
  Bound bound = Bound::kUpper;
  double tolerance = 0.0;
  std::size_t evaluated = 0;
  std::size_t failed = 0;  // samples whose evaluation threw
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
  double rms = 0.0;
  Point3 worst;  // argmax (upper bound) or argmin (lower bound)
  std::string first_error;
  bool pass = false;
};

/// Where a report's samples came from; enough to regenerate them.
struct Provenance {
  std::string domain;
  std::string sampler;
  std::uint64_t seed = 0;
  std::size_t count = 0;
};

Provenance provenance_of(const SampleSet& s);

struct ResidualReport {
  std::string subject;
  Provenance provenance;
  std::vector<CheckStats> checks;
  /// Free-form findings (for example a sign convention that did not match).
  std::vector<std::string> notes;

  bool passed() const;
  const CheckStats& check(std::string_view name) const;
  const CheckStats* find(std::string_view name) const;
  void append(const ResidualReport& other, const std::string& prefix = "");
};

/// Pointwise quantity; may throw EvalError, which is counted as a failed
/// sample rather than aborting the report.
using PointFn = std::function<double(const Point3&)>;

/// Evaluates `fn` at every sample (in parallel) and reduces in sample order.
/// With no evaluable samples the check fails.
CheckStats compute_check(std::string name, const SampleSet& samples, const PointFn& fn, double tolerance,
                         CheckStats::Bound bound = CheckStats::Bound::kUpper);

/// Evaluates several quantities per point in one pass. `fn` fills one value
/// per name; a throw marks the point failed for all of them.
std::vector<CheckStats> compute_checks(const std::vector<std::string>& names, const SampleSet& samples,
                                       const std::function<void(const Point3&, double*)>& fn,
                                       const std::vector<double>& tolerances,
                                       const std::vector<CheckStats::Bound>& bounds = {});

/// Statistics of values computed elsewhere; std::nullopt marks a failed
/// point, with `errors[i]` (when given) saying why.
CheckStats summarize_values(std::string name, const std::vector<Point3>& points,
                            const std::vector<std::optional<double>>& values, double tolerance,
                            CheckStats::Bound bound = CheckStats::Bound::kUpper,
                            const std::vector<std::string>& errors = {});

/// Thrown by constructors that self-verify; carries the failing report.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, ResidualReport report);
  const ResidualReport& report() const { return report_; }

 private:
  ResidualReport report_;
};

nlohmann::ordered_json to_json(const CheckStats& c);
nlohmann::ordered_json to_json(const Provenance& p);
nlohmann::ordered_json to_json(const ResidualReport& r);
nlohmann::ordered_json to_json(const Point3& p);
nlohmann::ordered_json to_json(const Vec3& v);

}  // namespace mfs
