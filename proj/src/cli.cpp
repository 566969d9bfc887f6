#include "mfs/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mfs/beltrami.hpp"
#include "mfs/characteristics.hpp"
#include "mfs/composite.hpp"
#include "mfs/field_core.hpp"
#include "mfs/gradshafranov.hpp"
#include "mfs/lie_ops.hpp"
#include "mfs/parser.hpp"
#include "mfs/pressure.hpp"
#include "mfs/symmetry.hpp"

namespace mfs {
namespace {

using json = nlohmann::ordered_json;

/// Bad input detected before computing anything; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::size_t samples = 0;  // 0: the command's default
  std::uint64_t seed = 0;
  std::string sampler = "halton";
  std::optional<double> threshold;
  std::string domain;
  std::string format = "text";
  std::string out;

  std::size_t samples_or(std::size_t fallback) const { return samples ? samples : fallback; }
  SamplerConfig sampler_config() const { return {parse_sampler_kind(sampler), seed}; }
};

void add_common(CLI::App* app, Common& c, bool with_threshold = true) {
  app->add_option("--samples", c.samples, "number of sample points");
  app->add_option("--seed", c.seed, "sampler seed");
  app->add_option("--sampler", c.sampler, "halton or random")->check(CLI::IsMember({"halton", "random"}));
  if (with_threshold) app->add_option("--threshold", c.threshold, "tolerance / null-space threshold override");
  app->add_option("--domain", c.domain,
                  "box:x0,x1,y0,y1,z0,z1 | ball:cx,cy,cz,r | shell:cx,cy,cz,rin,rout | "
                  "cylshell:cx,cy,rin,rout,z0,z1 [;exclude=cyl:cx,cy,r | ;exclude=slab:axis,lo,hi]");
  app->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json", "csv"}));
  app->add_option("--out", c.out, "write the output to this file");
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

void write_report_text(std::ostream& os, const ResidualReport& r) {
  os << r.subject << "\n";
  os << "samples: " << r.provenance.count << " (" << r.provenance.sampler << ", seed " << r.provenance.seed
     << ") on " << r.provenance.domain << "\n";
  os << pad("check", 34) << pad("max", 12) << pad("mean", 12) << pad("tol", 12) << pad("failed", 8) << "result\n";
  for (const CheckStats& c : r.checks) {
    const bool lower = c.bound == CheckStats::Bound::kLower;
    os << pad(c.name, 34) << pad(sci(lower ? c.min : c.max), 12) << pad(sci(c.mean), 12)
       << pad((lower ? ">" : "<") + sci(c.tolerance), 12) << pad(std::to_string(c.failed), 8)
       << (c.pass ? "PASS" : "FAIL") << "\n";
    if (!c.first_error.empty()) os << "  first error: " << c.first_error << "\n";
  }
  for (const std::string& n : r.notes) os << "note: " << n << "\n";
  os << "overall: " << (r.passed() ? "PASS" : "FAIL") << "\n";
}

json envelope(const std::string& command) {
  json j;
  j["schema"] = "v1";
  j["command"] = command;
  return j;
}

/// Writes either the JSON document or the text rendering.
void emit(const Common& c, std::ostream& out, const json& j, const std::function<void(std::ostream&)>& text) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw std::runtime_error("cannot open " + c.out + " for writing");
    os = &file;
  }
  if (c.format == "json") {
    *os << j.dump(2) << "\n";
  } else {
    text(*os);
  }
}

// --- field resolution ------------------------------------------------------

struct InlineField {
  std::string wx, wy, wz;
  bool given() const { return !wx.empty() || !wy.empty() || !wz.empty(); }
  VectorField build() const {
    if (wx.empty() || wy.empty() || wz.empty()) throw UsageError("inline fields need all of --wx, --wy, --wz");
    return VectorField(parse_scalar(wx), parse_scalar(wy), parse_scalar(wz));
  }
  std::string str() const { return "[" + wx + ", " + wy + ", " + wz + "]"; }
};

void add_inline(CLI::App* app, InlineField& f) {
  app->add_option("--wx", f.wx, "x component of an inline field");
  app->add_option("--wy", f.wy, "y component of an inline field");
  app->add_option("--wz", f.wz, "z component of an inline field");
}

struct ResolvedField {
  std::string name;
  VectorField field;
  DomainSpec domain;
  std::optional<BeltramiRecord> beltrami;
  std::optional<ClebschSolution> pressure;
};

std::string known_names() {
  std::string s;
  for (const auto& n : beltrami_catalog_names()) s += (s.empty() ? "" : ", ") + n;
  for (const auto& n : pressure_catalog_names()) s += ", " + n;
  return s;
}

ResolvedField resolve(const std::string& name, const InlineField& inl, const Common& c) {
  ResolvedField r;
  if (!name.empty() && inl.given()) throw UsageError("give either a catalog name or an inline field, not both");
  if (inl.given()) {
    r.name = "inline";
    r.field = inl.build();
    r.domain = DomainSpec{};
  } else if (is_beltrami_name(name)) {
    r.beltrami = beltrami_catalog(name);
    r.name = name;
    r.field = r.beltrami->field;
    r.domain = r.beltrami->domain;
  } else if (is_pressure_name(name)) {
    r.pressure = pressure_catalog(name);
    r.name = name;
    r.field = r.pressure->field;
    r.domain = r.pressure->domain;
  } else if (name.empty()) {
    throw UsageError("no field given (catalog names: " + known_names() + ")");
  } else {
    throw UsageError("unknown field '" + name + "' (catalog names: " + known_names() + ")");
  }
  if (!c.domain.empty()) {
    r.domain = DomainSpec::parse(c.domain);
    if (r.beltrami) r.beltrami->domain = r.domain;
    if (r.pressure) r.pressure->domain = r.domain;
  }
  return r;
}

// --- catalog -----------------------------------------------------------------

json beltrami_json(const BeltramiRecord& r) {
  json j;
  j["name"] = r.name;
  j["kind"] = "beltrami";
  j["reference"] = r.reference;
  j["description"] = r.description;
  j["field"] = r.field.str();
  j["h"] = r.h.str();
  j["domain"] = r.domain.str();
  return j;
}

json pressure_json(const ClebschSolution& s) {
  json j;
  j["name"] = s.name;
  j["kind"] = "pressure";
  j["reference"] = s.reference;
  j["phi"] = s.phi.str();
  j["psi"] = s.clebsch_psi.str();
  j["exp_psi"] = s.exp_psi.str();
  j["field"] = s.field.str();
  j["chi"] = s.chi.str();
  j["domain"] = s.domain.str();
  return j;
}

int cmd_catalog(const std::string& show, const Common& c, std::ostream& out) {
  json j = envelope("catalog");
  if (!show.empty()) {
    json entry;
    if (is_beltrami_name(show)) {
      entry = beltrami_json(beltrami_catalog(show));
    } else if (is_pressure_name(show)) {
      entry = pressure_json(pressure_catalog(show));
    } else {
      throw UsageError("unknown field '" + show + "' (catalog names: " + known_names() + ")");
    }
    j["entry"] = entry;
    emit(c, out, j, [&](std::ostream& os) {
      for (const auto& [k, v] : entry.items()) os << pad(k, 12) << v.get<std::string>() << "\n";
    });
    return 0;
  }
  j["beltrami"] = json::array();
  j["pressure"] = json::array();
  for (const auto& n : beltrami_catalog_names()) j["beltrami"].push_back(beltrami_json(beltrami_catalog(n)));
  for (const auto& n : pressure_catalog_names()) j["pressure"].push_back(pressure_json(pressure_catalog(n)));
  emit(c, out, j, [&](std::ostream& os) {
    os << pad("name", 14) << pad("kind", 10) << pad("reference", 28) << pad("domain", 28) << "h / chi\n";
    for (const auto& e : j["beltrami"]) {
      os << pad(e["name"], 14) << pad("beltrami", 10) << pad(e["reference"], 28) << pad(e["domain"], 28)
         << "h = " << e["h"].get<std::string>() << "\n";
    }
    for (const auto& e : j["pressure"]) {
      os << pad(e["name"], 14) << pad("pressure", 10) << pad(e["reference"], 28) << pad(e["domain"], 28)
         << "chi = " << e["chi"].get<std::string>() << "\n";
    }
  });
  return 0;
}

// --- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string field;
  InlineField inl;
  std::string h;
  std::string chi;
};

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  ResolvedField f = resolve(a.field, a.inl, c);
  if (!a.h.empty() && f.pressure) throw UsageError("--h applies to Beltrami fields, not to " + f.name);
  if (!a.chi.empty() && f.beltrami) throw UsageError("--chi applies to pressure fields, not to " + f.name);
  if (f.name == "inline" && a.h.empty() == a.chi.empty()) {
    throw UsageError("an inline field needs exactly one of --h (Beltrami) or --chi (force balance)");
  }
  const SampleSet s = sample_domain(f.domain, c.samples_or(kDefaultSamples), c.sampler_config());
  ResidualReport report;
  std::string kind;
  if (f.pressure && a.chi.empty()) {
    kind = "pressure";
    ClebschTolerances tol;
    if (c.threshold) tol.force = *c.threshold;
    report = verify_clebsch(*f.pressure, s, tol);
  } else if (!a.chi.empty() || f.pressure) {
    kind = "force_balance";
    ForceBalanceTolerances tol;
    if (c.threshold) tol.force = *c.threshold;
    report = force_balance_residual(f.field, parse_scalar(a.chi), s, tol);
    report.subject = "force balance of " + f.name + " with chi = " + a.chi;
  } else {
    kind = "beltrami";
    BeltramiRecord rec = f.beltrami ? *f.beltrami : BeltramiRecord{};
    if (!f.beltrami) {
      rec.name = "inline";
      rec.field = f.field;
      rec.domain = f.domain;
    }
    if (!a.h.empty()) rec.h = parse_scalar(a.h);
    report = verify_beltrami(rec, s, c.threshold.value_or(kBeltramiTolerance));
    report.subject = "Beltrami suite for " + f.name + " with h = " + rec.h.str();
    const ResidualReport inv = verify_h_invariance(rec, s);
    report.checks.push_back(inv.check("h_invariance"));
    for (const auto& n : inv.notes) report.notes.push_back(n);
  }
  json j = envelope("verify");
  j["field"] = f.name;
  j["kind"] = kind;
  j["report"] = to_json(report);
  emit(c, out, j, [&](std::ostream& os) { write_report_text(os, report); });
  return report.passed() ? 0 : 1;
}

// --- symmetry ----------------------------------------------------------------

void write_killing_text(std::ostream& os, const std::string& name, const KillingReport& k) {
  os << "Killing scan of " << name << " on " << k.provenance.domain << " (" << k.provenance.count << " "
     << k.provenance.sampler << " samples, seed " << k.provenance.seed << ")\n";
  os << "relative singular values:";
  for (double r : k.relative) os << " " << sci(r);
  os << "\nthreshold " << sci(k.threshold) << ", null dimension " << k.null_dim << "\n";
  for (std::size_t i = 0; i < k.null_basis.size(); ++i) {
    os << "  null vector " << i + 1 << ": " << k.null_basis[i].str() << "  (out-of-sample "
       << sci(k.out_of_sample[i]) << ")\n";
  }
  if (k.degenerate_sampling) os << "warning: degenerate sampling\n";
  if (!k.note.empty()) os << "note: " << k.note << "\n";
}

int cmd_symmetry(const std::string& name, const InlineField& inl, const Common& c, std::ostream& out) {
  const ResolvedField f = resolve(name, inl, c);
  const KillingReport k = killing_scan(f.field, f.domain, c.samples_or(kDefaultSamples),
                                       c.threshold.value_or(kKillingThreshold), c.sampler_config());
  json j = envelope("symmetry");
  j["field"] = f.name;
  j["report"] = to_json(k);
  emit(c, out, j, [&](std::ostream& os) { write_killing_text(os, f.name, k); });
  return 0;
}

// --- orbit -------------------------------------------------------------------

int cmd_orbit(const std::string& name, const std::string& gen, int n, const Common& c, std::ostream& out) {
  const ResolvedField f = resolve(name, {}, c);
  if (!f.beltrami) throw UsageError("orbit needs a Beltrami field; " + f.name + " is not one");
  const KillingParams k = parse_generator(gen);
  OrbitOptions opt;
  opt.samples = c.samples_or(kDefaultSamples);
  opt.sampler = c.sampler_config();
  if (c.threshold) opt.beltrami_tolerance = *c.threshold;
  const LieOrbit orbit = lie_generate(*f.beltrami, k, n, opt);
  json j = envelope("orbit");
  j["field"] = f.name;
  j["orbit"] = to_json(orbit);
  bool ok = !orbit.truncated;
  for (const ResidualReport& r : orbit.reports) ok = ok && (r.passed() || orbit.terminal_null);
  emit(c, out, j, [&](std::ostream& os) {
    os << "orbit of " << f.name << " under " << k.str() << " (h = " << f.beltrami->h.str() << ")\n";
    for (std::size_t i = 0; i < orbit.members.size(); ++i) {
      os << "member " << i << ": max|w| " << sci(orbit.max_magnitude[i]);
      for (const CheckStats& s : orbit.reports[i].checks) os << ", " << s.name << " " << sci(s.max);
      os << (orbit.reports[i].passed() ? "  PASS" : "  FAIL") << "\n";
    }
    if (!orbit.note.empty()) os << "note: " << orbit.note << "\n";
  });
  return ok ? 0 : 1;
}

// --- Grad-Shafranov ------------------------------------------------------------

struct GsArgs {
  std::string chart = "translational";
  std::string theta;
  std::string chi = "0";
  std::string w3 = "0";
};

int cmd_gs(const GsArgs& a, const Common& c, std::ostream& out) {
  GSProblem prob{{parse_chart_kind(a.chart)}, parse_scalar(a.theta), parse_univariate(a.w3), parse_univariate(a.chi)};
  DomainSpec dom = prob.chart.kind == ChartKind::kTranslational
                       ? DomainSpec{}
                       : DomainSpec::cylindrical_shell(0, 0, 0.5, 1.5, -1, 1);
  if (!c.domain.empty()) dom = DomainSpec::parse(c.domain);
  const SampleSet s = sample_domain(dom, c.samples_or(kDefaultSamples), c.sampler_config());
  ResidualReport report = gs_residual(prob, s, c.threshold.value_or(1e-10));
  const GSReconstruction rec = gs_reconstruct(prob);
  const ResidualReport fb = force_balance_residual(rec.field, rec.chi, s, {1e-7, 1e-8});
  // The reconstruction is informational: its residual is bounded by the GS residual.
  json j = envelope("gs");
  j["problem"] = to_json(prob);
  j["report"] = to_json(report);
  j["reconstruction"] = {{"field", rec.field.str()}, {"chi", rec.chi.str()}, {"report", to_json(fb)}};
  emit(c, out, j, [&](std::ostream& os) {
    write_report_text(os, report);
    os << "\nreconstruction w = " << rec.field.str() << "\n";
    write_report_text(os, fb);
  });
  return report.passed() ? 0 : 1;
}

// --- GGSE ----------------------------------------------------------------------

struct GgseArgs {
  std::string field;
  InlineField inl;
  std::string theta, psi, phi, x1, x2;
};

int cmd_ggse(const GgseArgs& a, const Common& c, std::ostream& out) {
  GGSData data;
  std::string label;
  const bool custom = !a.theta.empty() || !a.psi.empty() || !a.x1.empty() || !a.x2.empty();
  if (!custom) {
    if (!a.field.empty() && a.field != "w4_1") {
      throw UsageError("built-in decomposition data exist for w4_1 only; give --theta --psi --x1 --x2 otherwise");
    }
    data = ggse_example_w4_1();
    label = "w4_1";
  } else {
    if (a.theta.empty() || a.psi.empty() || a.x1.empty() || a.x2.empty()) {
      throw UsageError("custom data need all of --theta, --psi, --x1, --x2");
    }
    data.theta = parse_scalar(a.theta);
    data.psi = parse_scalar(a.psi);
    data.x1 = parse_scalar(a.x1);
    data.x2 = parse_scalar(a.x2);
    if (!a.phi.empty()) data.phi = parse_scalar(a.phi);
    if (!a.field.empty() || a.inl.given()) data.field = resolve(a.field, a.inl, Common{}).field;
    if (!data.phi && !data.field) throw UsageError("give --phi or a field to integrate Phi from");
    label = a.field.empty() ? "inline" : a.field;
  }
  const DomainSpec dom = c.domain.empty() ? DomainSpec::box({-1, -1, 0.2}, {1, 1, 1}) : DomainSpec::parse(c.domain);
  const SampleSet s = sample_domain(dom, c.samples_or(500), c.sampler_config());
  GGSOptions opt;
  if (c.threshold) opt.tolerance = *c.threshold;
  const ResidualReport report = ggse_check(data, s, opt);
  json j = envelope("ggse");
  j["field"] = label;
  j["data"] = {{"theta", data.theta.str()}, {"psi", data.psi.str()}, {"x1", data.x1.str()}, {"x2", data.x2.str()}};
  j["report"] = to_json(report);
  emit(c, out, j, [&](std::ostream& os) { write_report_text(os, report); });
  return report.passed() ? 0 : 1;
}

// --- composite -----------------------------------------------------------------

struct CompositeArgs {
  std::string core = "w4_1";
  std::string shell = "exp_x3";
  double eps = 0.4;
  double radius = 1.0;
  std::size_t mc_points = 100000;
};

RegionSource region_source(const std::string& name) {
  if (is_pressure_name(name)) return pressure_catalog(name);
  if (is_beltrami_name(name)) return beltrami_catalog(name);
  throw UsageError("unknown field '" + name + "' (catalog names: " + known_names() + ")");
}

int cmd_composite(const CompositeArgs& a, const Common& c, std::ostream& out) {
  if (!is_beltrami_name(a.shell)) throw UsageError("the shell field must be a Beltrami catalog entry");
  const PiecewiseField pf = assemble(region_source(a.core), beltrami_catalog(a.shell), a.eps, a.radius);
  CompositeOptions opt;
  opt.samples_per_region = c.samples_or(kDefaultSamples);
  opt.sampler = c.sampler_config();
  opt.mc_points = a.mc_points;
  opt.mc_seed = c.seed;
  const CompositeReport r = verify_composite(pf, opt);
  json j = envelope("composite");
  j["assembly"] = to_json(pf);
  j["report"] = to_json(r);
  emit(c, out, j, [&](std::ostream& os) {
    for (const ResidualReport& rr : r.regions) {
      write_report_text(os, rr);
      os << "\n";
    }
    os << "L2 norm squared: " << sci(r.l2.integral) << " +/- " << sci(r.l2.standard_error) << " (relative "
       << sci(r.l2.relative_error) << ", " << r.l2.points << " points)" << (r.l2.finite ? "" : "  NOT FINITE") << "\n";
    for (const CheckStats& s : r.interface) os << pad(s.name, 24) << "max " << sci(s.max) << ", mean " << sci(s.mean) << "\n";
    os << "core null dimension: " << r.core_symmetry.null_dim << "\n";
    os << "overall: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  });
  return r.passed() ? 0 : 1;
}

// --- export --------------------------------------------------------------------

std::string g17(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_export(const std::string& name, const InlineField& inl, int grid, const Common& c, std::ostream& out) {
  if (grid < 1 || grid > 512) throw UsageError("--grid must be between 1 and 512");
  std::optional<PiecewiseField> composite;
  std::optional<ResolvedField> f;
  DomainSpec dom;
  if (name == "composite") {
    composite = default_composite();
    dom = composite->ambient;
  } else {
    f = resolve(name, inl, c);
    dom = f->domain;
  }
  if (!c.domain.empty()) dom = DomainSpec::parse(c.domain);
  const auto [lo, hi] = dom.bounding_box();
  const auto coord_at = [&](double a, double b, int i) {
    return grid == 1 ? 0.5 * (a + b) : a + (b - a) * static_cast<double>(i) / static_cast<double>(grid - 1);
  };
  std::optional<ScalarField> chi;
  if (f && f->pressure) chi = f->pressure->chi;
  std::vector<std::string> columns = {"x", "y", "z"};
  if (composite) columns.push_back("region");
  for (const char* s : {"wx", "wy", "wz"}) columns.emplace_back(s);
  if (chi) columns.emplace_back("chi");

  const std::size_t n = static_cast<std::size_t>(grid);
  std::vector<std::vector<double>> rows(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t jy = 0; jy < n; ++jy) {
      for (std::size_t k = 0; k < n; ++k) {
        const Point3 p(coord_at(lo.x, hi.x, static_cast<int>(i)), coord_at(lo.y, hi.y, static_cast<int>(jy)),
                       coord_at(lo.z, hi.z, static_cast<int>(k)));
        std::vector<double> row;
        row.reserve(columns.size());
        row.push_back(p.x);
        row.push_back(p.y);
        row.push_back(p.z);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        Vec3 w{nan, nan, nan};
        double chi_v = nan;
        try {
          if (composite) {
            const int region = composite->region_of(p);
            row.push_back(region);
            if (region >= 0) w = (*composite)(p);
          } else {
            w = f->field(p);
            if (chi) chi_v = (*chi)(p);
          }
        } catch (const EvalError&) {
        }
        row.push_back(w.x);
        row.push_back(w.y);
        row.push_back(w.z);
        if (chi) row.push_back(chi_v);
        rows[(i * n + jy) * n + k] = std::move(row);
      }
    }
  }
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw std::runtime_error("cannot open " + c.out + " for writing");
    os = &file;
  }
  if (c.format == "json") {
    json j = envelope("export");
    j["field"] = composite ? std::string("composite") : f->name;
    j["domain"] = dom.str();
    j["grid"] = grid;
    j["columns"] = columns;
    j["rows"] = json::array();
    for (const auto& row : rows) {
      json r = json::array();
      for (double v : row) r.push_back(std::isfinite(v) ? json(v) : json(nullptr));
      j["rows"].push_back(r);
    }
    *os << j.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < columns.size(); ++i) *os << (i ? "," : "") << columns[i];
    *os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) *os << (i ? "," : "") << g17(row[i]);
      *os << "\n";
    }
  }
  return 0;
}

// --- characteristics -------------------------------------------------------------

struct CharArgs {
  std::string target;
  std::string p = "y";
  std::string g = "0";
  std::string q = "0";
};

int cmd_characteristics(const CharArgs& a, const Common& c, std::ostream& out) {
  ResidualReport report;
  json j = envelope("characteristics");
  j["target"] = a.target;
  const double tol = c.threshold.value_or(1e-6);
  if (is_pressure_name(a.target)) {
    ClebschSolution s = pressure_catalog(a.target);
    if (!c.domain.empty()) s.domain = DomainSpec::parse(c.domain);
    const SampleSet targets = sample_domain(s.domain, c.samples_or(200), c.sampler_config());
    const PsiCharacteristicsResult r = psi_from_characteristics(s, targets, std::nullopt, tol);
    report = r.report;
    j["unknown"] = "psi";
    j["closed_form"] = s.clebsch_psi.str();
    j["sup_error"] = r.sup_error;
    j["failures"] = r.failures;
  } else if (a.target == "abc_minimal" || a.target == "cylindrical") {
    const ScalarField p = parse_scalar(a.p);
    const ScalarField g = parse_univariate(a.g);
    const ScalarField q = parse_univariate(a.q);
    const DomainSpec dom = c.domain.empty() ? alpha_domain(a.target) : DomainSpec::parse(c.domain);
    const SampleSet targets = sample_domain(dom, c.samples_or(200), c.sampler_config());
    const AlphaResult r = alpha_from_characteristics(a.target, p, g, q, targets, tol);
    report = r.report;
    j["unknown"] = "alpha";
    j["choices"] = {{"p", p.str()}, {"g", g.str()}, {"q", q.str()}};
    j["closed_form"] = r.closed_form.str();
    j["sup_error"] = r.sup_error;
    j["failures"] = r.failures;
  } else {
    throw UsageError("characteristics target must be a pressure example (w4_1 ... w4_4), abc_minimal or cylindrical");
  }
  j["report"] = to_json(report);
  emit(c, out, j, [&](std::ostream& os) { write_report_text(os, report); });
  return report.passed() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification toolkit for magnetofluidostatic fields", "mfs"};
  app.set_help_flag("--help", "print this help");  // -h would clash with --h
  app.require_subcommand(1);

  Common common;
  bool catalog_json = false;
  std::vector<std::string> show_words;
  auto* catalog = app.add_subcommand("catalog", "list built-in fields; 'catalog show NAME' for one entry");
  catalog->add_option("words", show_words, "show NAME")->expected(0, 2);
  catalog->add_flag("--json", catalog_json, "same as --format json");
  catalog->add_option("--format", common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  catalog->add_option("--out", common.out, "write the output to this file");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run a field's residual suite");
  verify->add_option("field", verify_args.field, "catalog name");
  add_inline(verify, verify_args.inl);
  verify->add_option("--h", verify_args.h, "proportionality factor h(x, y, z)");
  verify->add_option("--chi", verify_args.chi, "pressure-like potential chi(x, y, z) for a force-balance check");
  add_common(verify, common);

  std::string sym_field;
  InlineField sym_inline;
  auto* symmetry = app.add_subcommand("symmetry", "scan for continuous Euclidean symmetries");
  symmetry->add_option("field", sym_field, "catalog name");
  add_inline(symmetry, sym_inline);
  add_common(symmetry, common);

  std::string orbit_field;
  std::string orbit_gen;
  int orbit_n = 1;
  auto* orbit = app.add_subcommand("orbit", "generate fields by repeated Lie transport");
  orbit->add_option("field", orbit_field, "Beltrami catalog name")->required();
  orbit->add_option("--gen", orbit_gen, "tx|ty|tz|rot-x|rot-y|rot-z or a1,a2,a3,b1,b2,b3")->required();
  orbit->add_option("--n", orbit_n, "orbit length (0..4)");
  add_common(orbit, common);

  GsArgs gs_args;
  auto* gs = app.add_subcommand("gs", "Grad-Shafranov residual and 3D reconstruction");
  gs->add_option("--chart", gs_args.chart, "translational or axisymmetric");
  gs->add_option("--theta", gs_args.theta, "flux function Theta(x, y, z)")->required();
  gs->add_option("--chi", gs_args.chi, "chi(T)");
  gs->add_option("--w3", gs_args.w3, "covariant w3(T)");
  add_common(gs, common);

  GgseArgs ggse_args;
  auto* ggse = app.add_subcommand("ggse", "generalized Grad-Shafranov check");
  ggse->add_option("field", ggse_args.field, "catalog name (w4_1 has built-in data)");
  add_inline(ggse, ggse_args.inl);
  ggse->add_option("--theta", ggse_args.theta, "Theta(x, y, z)");
  ggse->add_option("--psi", ggse_args.psi, "Psi(x, y, z)");
  ggse->add_option("--phi", ggse_args.phi, "Phi(x, y, z); integrated from the field when absent");
  ggse->add_option("--x1", ggse_args.x1, "coordinate x1(x, y, z)");
  ggse->add_option("--x2", ggse_args.x2, "coordinate x2(x, y, z)");
  add_common(ggse, common);

  CompositeArgs comp_args;
  auto* composite = app.add_subcommand("composite", "piecewise core/shell assembly and checks");
  composite->add_option("--core", comp_args.core, "core field (catalog name)");
  composite->add_option("--shell", comp_args.shell, "shell Beltrami field (catalog name)");
  composite->add_option("--eps", comp_args.eps, "core radius");
  composite->add_option("--radius", comp_args.radius, "ambient ball radius");
  composite->add_option("--mc-points", comp_args.mc_points, "Monte Carlo points for the L2 estimate");
  add_common(composite, common, false);

  std::string export_field;
  InlineField export_inline;
  int export_grid = 16;
  auto* exp = app.add_subcommand("export", "sample a field on a regular grid");
  exp->add_option("field", export_field, "catalog name or 'composite'");
  add_inline(exp, export_inline);
  exp->add_option("--grid", export_grid, "points per axis");
  add_common(exp, common, false);

  CharArgs char_args;
  auto* chars = app.add_subcommand("characteristics", "solve a transport equation by characteristics");
  chars->add_option("target", char_args.target, "w4_1 ... w4_4 (psi) or abc_minimal / cylindrical (alpha)")->required();
  chars->add_option("--p", char_args.p, "p(theta, s), written in x (theta) and y (s)");
  chars->add_option("--g", char_args.g, "g(T)");
  chars->add_option("--q", char_args.q, "q(T), cylindrical only");
  add_common(chars, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (common.format == "csv" && !exp->parsed()) throw UsageError("csv output is only available for export");
    if (catalog->parsed()) {
      if (catalog_json) common.format = "json";
      std::string name;
      if (!show_words.empty()) {
        if (show_words[0] != "show" || show_words.size() != 2) throw UsageError("usage: catalog [show NAME]");
        name = show_words[1];
      }
      return cmd_catalog(name, common, out);
    }
    if (verify->parsed()) return cmd_verify(verify_args, common, out);
    if (symmetry->parsed()) return cmd_symmetry(sym_field, sym_inline, common, out);
    if (orbit->parsed()) return cmd_orbit(orbit_field, orbit_gen, orbit_n, common, out);
    if (gs->parsed()) return cmd_gs(gs_args, common, out);
    if (ggse->parsed()) return cmd_ggse(ggse_args, common, out);
    if (composite->parsed()) return cmd_composite(comp_args, common, out);
    if (exp->parsed()) {
      if (common.format == "text") common.format = "csv";
      return cmd_export(export_field, export_inline, export_grid, common, out);
    }
    if (chars->parsed()) return cmd_characteristics(char_args, common, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << "\n";
    write_report_text(err, e.report());
    return 1;
  } catch (const std::invalid_argument& e) {
    // Parse errors in expressions or domains, rejected parameters.
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mfs
