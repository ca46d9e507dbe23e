#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cli_build.hpp"

namespace pwdcli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitTolerance = 3;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string grid_text(const pwd::GridSpec& g) {
  std::string s;
  for (std::size_t a = 0; a < g.rank(); ++a) {
    const auto& ax = g.axis(a);
    if (a) s += ';';
    s += ax.name + ':' + num(ax.min) + ':' + num(ax.max) + ':' + std::to_string(ax.points);
  }
  return s;
}

std::string point_text(const pwd::GridPoint& p, std::size_t rank) {
  std::string s;
  for (std::size_t a = 0; a < rank; ++a) s += (a ? "," : "") + num(p[a]);
  return s;
}

/// Ordered key=value lines closed by STATUS=PASS|FAIL.
class Summary {
 public:
  void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value) { add(key, num(value)); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }

  void fail() { pass_ = false; }
  bool passed() const { return pass_; }

  std::string text() const {
    std::string s;
    for (const auto& [k, v] : rows_) s += k + '=' + v + '\n';
    s += std::string("STATUS=") + (pass_ ? "PASS" : "FAIL") + '\n';
    return s;
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
  bool pass_ = true;
};

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw pwd::Error(pwd::ErrorKind::numerical, what + " is not finite");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  pwd::require(static_cast<bool>(out), "cannot open '" + path + "' for writing",
               pwd::ErrorKind::io);
  out << content;
  pwd::require(static_cast<bool>(out), "write to '" + path + "' failed", pwd::ErrorKind::io);
}

double max_abs(const pwd::ScalarField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

/// The parsed document plus flag overrides, shared by every subcommand.
class Run {
 public:
  Run(json doc, Overrides ov) : doc_(std::move(doc)), ov_(ov) {
    const Node r = root();
    r.allow({"operator", "representation", "grid", "verify", "convergence", "output",
             "profile", "seed"});
    if (ov_.seed) {
      seed_ = *ov_.seed;
    } else if (r.has("seed")) {
      seed_ = r["seed"].count();
    }
    if (r.has("output"))
      r["output"].allow({"field_csv", "sinogram_csv", "profile_csv", "summary"});
    if (r.has("verify"))
      r["verify"].allow({"residual", "residual_order", "residual_tolerance", "coefficients",
                         "compare_against", "tolerance", "metric"});
  }

  Node root() const { return Node(doc_, ""); }
  const Overrides& overrides() const { return ov_; }
  std::uint64_t seed() const { return seed_; }

  pwd::GridSpec grid() const { return parse_grid(root()["grid"], ov_); }

  BuildContext context(const pwd::GridSpec& grid, Overrides ov, std::uint64_t seed) const {
    return {parse_operator(root()["operator"]), grid, ov, seed};
  }
  BuildContext context(const pwd::GridSpec& grid) const { return context(grid, ov_, seed_); }

  std::optional<std::string> output(const char* key) const {
    const Node r = root();
    if (!r.has("output") || !r["output"].has(key)) return std::nullopt;
    return r["output"][key].text();
  }

  std::optional<Node> verify() const { return root().find("verify"); }

 private:
  json doc_;
  Overrides ov_;
  std::uint64_t seed_ = 0;
};

void emit_outputs(const Run& run, const Built& b) {
  if (auto p = run.output("field_csv")) {
    std::ostringstream out;
    pwd::csv::write_field(out, b.field);
    write_file(*p, out.str());
  }
  if (auto p = run.output("sinogram_csv")) {
    if (!b.sinogram)
      run.root()["output"]["sinogram_csv"].fail("only radon representations produce a sinogram");
    std::ostringstream out;
    pwd::csv::write_sinogram(out, *b.sinogram);
    write_file(*p, out.str());
  }
}

int residual_order(const Run& run) {
  const auto v = run.verify();
  if (!v || !v->has("residual_order")) return 2;
  const std::size_t o = (*v)["residual_order"].count();
  if (o != 2 && o != 4) (*v)["residual_order"].fail("residual_order is 2 or 4");
  return static_cast<int>(o);
}

pwd::verify::AxisCoefficients residual_coefficients(const Run& run,
                                                    const pwd::spectral::OperatorSpec& op,
                                                    const pwd::GridSpec& grid) {
  const auto v = run.verify();
  if (v && v->has("coefficients")) {
    const Node cs = (*v)["coefficients"];
    cs.require_object();
    pwd::verify::AxisCoefficients out;
    for (auto it = cs.raw().begin(); it != cs.raw().end(); ++it)
      out[it.key()] = cs[it.key()].number();
    return out;
  }
  return at_node(v ? *v : run.root(), [&] { return pwd::verify::coefficients_for(op, grid); });
}

pwd::verify::ResidualReport residual_of(const Run& run, const pwd::spectral::OperatorSpec& op,
                                        const pwd::ScalarField& f) {
  const auto coeff = residual_coefficients(run, op, f.grid());
  const Node where = run.verify() ? *run.verify() : run.root();
  return at_node(where, [&] { return pwd::verify::fd_residual(f, coeff, residual_order(run)); });
}

/// Residual lines for `prefix`; breaches of residual_tolerance mark the run failed.
void residual_section(const Run& run, const pwd::spectral::OperatorSpec& op,
                      const pwd::ScalarField& f, const std::string& prefix, Summary& s) {
  const auto v = run.verify();
  if (!v || !v->flag("residual", false)) return;
  const auto r = residual_of(run, op, f);
  require_finite(r.linf, prefix + " residual");
  s.add(prefix + ".residual.order", static_cast<std::size_t>(residual_order(run)));
  s.add(prefix + ".residual.linf", r.linf);
  s.add(prefix + ".residual.l2", r.l2);
  if (v->has("residual_tolerance")) {
    const double tol = (*v)["residual_tolerance"].positive();
    s.add(prefix + ".residual.tolerance", tol);
    if (!(r.linf <= tol)) s.fail();
  }
}

std::string representation_type(const Node& rep) { return rep["type"].text(); }

void describe(Summary& s, const std::string& prefix, const Node& rep,
              const pwd::spectral::OperatorSpec& op) {
  s.add(prefix + ".representation", representation_type(rep));
  s.add(prefix + ".operator", op.name());
}

double metric_value(const pwd::ErrorReport& e, const std::string& metric, const Node& where) {
  if (metric == "linf_abs") return e.linf_abs;
  if (metric == "linf_rel") return e.linf_rel;
  if (metric == "l2_rel") return e.l2_rel;
  where.fail("metric is linf_abs, linf_rel or l2_rel");
}

void error_section(const pwd::ErrorReport& e, std::size_t rank, Summary& s) {
  require_finite(e.linf_abs, "comparison error");
  require_finite(e.l2_rel, "comparison error");
  s.add("compare.linf_abs", e.linf_abs);
  s.add("compare.linf_rel", e.linf_rel);
  s.add("compare.l2_rel", e.l2_rel);
  s.add("compare.worst_point", point_text(e.worst_point, rank));
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_build(const Run& run, Summary& s) {
  const pwd::GridSpec grid = run.grid();
  const BuildContext ctx = run.context(grid);
  const Node rep = run.root()["representation"];
  const Built b = build_representation(rep, ctx);
  const auto op = block_operator(rep, ctx.op);
  s.add("command", "build");
  describe(s, "field", rep, op);
  s.add("grid", grid_text(grid));
  s.add("nodes", grid.size());
  s.add("field.max_abs", max_abs(b.field));
  emit_outputs(run, b);
  residual_section(run, op, b.field, "field", s);
  return s.passed() ? kExitOk : kExitTolerance;
}

int cmd_verify(const Run& run, Summary& s) {
  const auto v = run.verify();
  if (!v) run.root().fail("verify needs a 'verify' block with 'compare_against'");
  const Node other = (*v)["compare_against"];
  const double tol = (*v)["tolerance"].positive();
  const std::string metric = v->text("metric", "linf_rel");
  const pwd::GridSpec grid = run.grid();
  const BuildContext ctx = run.context(grid);
  const Node rep = run.root()["representation"];
  const Built a = build_representation(rep, ctx);
  const Built b = build_representation(other, ctx);
  const auto op_a = block_operator(rep, ctx.op), op_b = block_operator(other, ctx.op);
  s.add("command", "verify");
  describe(s, "field", rep, op_a);
  describe(s, "reference", other, op_b);
  s.add("grid", grid_text(grid));
  s.add("nodes", grid.size());
  emit_outputs(run, a);
  const auto e = pwd::verify::compare_fields(a.field, b.field);
  error_section(e, grid.rank(), s);
  const double value = metric_value(e, metric, (*v)["tolerance"]);
  s.add("compare.metric", metric);
  s.add("compare.tolerance", tol);
  if (!(value <= tol)) s.fail();
  residual_section(run, op_a, a.field, "field", s);
  residual_section(run, op_b, b.field, "reference", s);
  return s.passed() ? kExitOk : kExitTolerance;
}

/// Grids for the residual study: either explicit point counts or spacings
/// that divide every axis evenly.
std::vector<pwd::GridSpec> study_grids(const Node& conv, const pwd::GridSpec& base) {
  std::vector<pwd::GridSpec> out;
  if (conv.has("points") == conv.has("spacings"))
    conv.fail("give exactly one of 'points' or 'spacings'");
  if (conv.has("points")) {
    const Node pts = conv["points"];
    for (std::size_t i = 0; i < pts.size(); ++i)
      out.push_back(at_node(pts.at(i), [&] { return with_points(base, pts.at(i).count()); }));
    return out;
  }
  const Node hs = conv["spacings"];
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double h = hs.at(i).positive();
    std::vector<pwd::Axis> axes = base.axes();
    for (auto& a : axes) {
      const double cells = (a.max - a.min) / h;
      const double whole = std::round(cells);
      if (whole < 1.0 || std::abs(cells - whole) > 1e-9 * std::max(1.0, cells))
        hs.at(i).fail("spacing does not divide axis '" + a.name + "' evenly");
      a.points = static_cast<std::size_t>(whole) + 1;
    }
    out.push_back(at_node(hs.at(i), [&] { return pwd::GridSpec(std::move(axes)); }));
  }
  return out;
}

double residual_measure(const pwd::verify::ResidualReport& r, const std::string& measure,
                        const Node& where) {
  if (measure == "linf") return r.linf;
  if (measure == "l2") return r.l2;
  if (measure == "centre") return std::abs(r.residual[r.residual.size() / 2]);
  where.fail("measure is linf, l2 or centre");
}

void slope_verdict(const Node& conv, double fitted, Summary& s) {
  const double target = conv["slope"].number();
  const double band = conv["band"].positive();
  s.add("slope", fitted);
  s.add("slope.target", target);
  s.add("slope.band", band);
  if (!(std::abs(fitted - target) <= band)) s.fail();
}

int convergence_residual(const Run& run, const Node& conv, Summary& s) {
  conv.allow({"mode", "points", "spacings", "measure", "slope", "band", "exact_floor"});
  const std::string measure = conv.text("measure", "linf");
  const double floor = conv.has("exact_floor") ? conv["exact_floor"].positive() : 1e-10;
  const auto grids = study_grids(conv, run.grid());
  if (grids.size() < 3) conv.fail("a convergence study needs at least 3 resolutions");
  const Node rep = run.root()["representation"];
  std::vector<std::pair<double, double>> series;
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const BuildContext ctx = run.context(grids[i]);
    const Built b = build_representation(rep, ctx);
    const auto r = residual_of(run, block_operator(rep, ctx.op), b.field);
    const double err = residual_measure(r, measure, conv);
    require_finite(err, "residual");
    const double h = grids[i].axis(0).spacing();
    s.add("row." + std::to_string(i) + ".h", h);
    s.add("row." + std::to_string(i) + ".residual", err);
    series.emplace_back(h, err);
  }
  bool all_exact = true, any_exact = false;
  for (const auto& [h, e] : series) {
    all_exact = all_exact && e <= floor;
    any_exact = any_exact || e <= floor;
  }
  if (all_exact) {
    s.add("slope", "exact");
    return kExitOk;
  }
  if (any_exact) {
    s.add("slope", "undefined");
    s.fail();
    return kExitTolerance;
  }
  slope_verdict(conv, pwd::verify::convergence_slope(series), s);
  return s.passed() ? kExitOk : kExitTolerance;
}

/// Error against the compare_against reference versus quadrature size, with
/// seeds seed, seed + 1, ... for the repeats at every size.
int convergence_monte_carlo(const Run& run, const Node& conv, Summary& s) {
  conv.allow({"mode", "nodes", "repeats", "metric", "slope", "band"});
  const auto v = run.verify();
  if (!v || !v->has("compare_against"))
    conv.fail("monte-carlo mode needs verify.compare_against as the reference");
  const std::string metric = conv.text("metric", "l2_rel");
  const std::size_t repeats = conv.count("repeats", 8);
  if (repeats == 0) conv["repeats"].fail("repeats must be >= 1");
  const Node sizes = conv["nodes"];
  if (sizes.size() < 3) sizes.fail("a convergence study needs at least 3 sizes");
  const pwd::GridSpec grid = run.grid();
  const Node rep = run.root()["representation"];
  const Built ref = build_representation((*v)["compare_against"], run.context(grid));
  std::vector<std::pair<double, double>> series;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Overrides ov = run.overrides();
    ov.quad_nodes = sizes.at(i).count();
    double sq = 0.0;
    for (std::size_t r = 0; r < repeats; ++r) {
      const Built b = build_representation(rep, run.context(grid, ov, run.seed() + r));
      const double e = metric_value(pwd::verify::compare_fields(b.field, ref.field), metric,
                                    conv);
      require_finite(e, "Monte Carlo error");
      sq += e * e;
    }
    const double rms = std::sqrt(sq / static_cast<double>(repeats));
    s.add("row." + std::to_string(i) + ".nodes", *ov.quad_nodes);
    s.add("row." + std::to_string(i) + ".error", rms);
    series.emplace_back(static_cast<double>(*ov.quad_nodes), rms);
  }
  for (const auto& [m, e] : series)
    if (!(e > 0.0)) {
      s.add("slope", "exact");
      return kExitOk;
    }
  slope_verdict(conv, pwd::verify::loglog_slope(series), s);
  return s.passed() ? kExitOk : kExitTolerance;
}

int cmd_convergence(const Run& run, Summary& s) {
  const Node conv = run.root()["convergence"];
  const std::string mode = conv.text("mode", "residual");
  s.add("command", "convergence");
  s.add("mode", mode);
  s.add("field.representation", representation_type(run.root()["representation"]));
  if (mode == "residual") return convergence_residual(run, conv, s);
  if (mode == "monte-carlo") return convergence_monte_carlo(run, conv, s);
  conv["mode"].fail("mode is residual or monte-carlo");
}

int cmd_radon(const Run& run, Summary& s) {
  const Node rep = run.root()["representation"];
  if (representation_type(rep) != "radon") rep["type"].fail("the radon command needs type 'radon'");
  const pwd::GridSpec grid = run.grid();
  const BuildContext ctx = run.context(grid);
  const Built b = build_representation(rep, ctx);
  s.add("command", "radon");
  s.add("grid", grid_text(grid));
  s.add("sinogram.directions", b.sinogram->directions.size());
  s.add("sinogram.dim", b.sinogram->directions.dim);
  s.add("sinogram.rho", b.sinogram->rho.name + ':' + num(b.sinogram->rho.min) + ':' +
                            num(b.sinogram->rho.max) + ':' +
                            std::to_string(b.sinogram->rho.points));
  s.add("sinogram.evenness_defect", pwd::radon::evenness_defect(*b.sinogram));
  emit_outputs(run, b);
  if (rep.has("field")) {
    const auto ref = at_node(rep["field"],
                             [&] { return pwd::sample_analytic(parse_family(rep["field"]), grid); });
    error_section(pwd::verify::compare_fields(b.field, ref), grid.rank(), s);
    const auto v = run.verify();
    if (v && v->has("tolerance")) {
      const std::string metric = v->text("metric", "l2_rel");
      const double tol = (*v)["tolerance"].positive();
      s.add("compare.metric", metric);
      s.add("compare.tolerance", tol);
      if (!(metric_value(pwd::verify::compare_fields(b.field, ref), metric, *v) <= tol))
        s.fail();
    }
  }
  return s.passed() ? kExitOk : kExitTolerance;
}

/// {"direction": [...], "xi": axis, "family" | "source"} -> profile CSV.
int cmd_profile(const Run& run, Summary& s, std::string& csv_out) {
  const Node p = run.root()["profile"];
  p.allow({"direction", "xi", "family", "source"});
  const auto comps = p["direction"].numbers();
  const pwd::rotations::Direction n = at_node(p["direction"], [&] {
    pwd::require(comps.size() == 2 || comps.size() == 3, "direction needs 2 or 3 components");
    return pwd::rotations::Direction(comps);
  });
  const pwd::Axis xi = parse_axis(p["xi"], "xi", run.overrides().grid_points);
  if (p.has("family") == p.has("source")) p.fail("give exactly one of 'family' or 'source'");
  pwd::csv::ProfileRecord rec{comps, pwd::UniformSeries{xi.min, xi.spacing(), {}}};
  if (p.has("family")) {
    const auto f = parse_family(p["family"]);
    const pwd::planewave::PlaneWaveProfile prof = at_node(p["family"], [&] {
      return pwd::planewave::PlaneWaveProfile(f);
    });
    for (std::size_t i = 0; i < xi.points; ++i) rec.series.values.push_back(prof.value(xi.coordinate(i)));
  } else {
    const auto amp = parse_amplitude(p["source"]);
    const auto prof = at_node(p, [&] {
      return n.dim() == 2 ? pwd::planewave::profile_from_source_2d(amp, n, xi)
                          : pwd::planewave::profile_from_source_3d(amp, n, xi);
    });
    rec.series = *prof.table();
  }
  for (const auto& v : rec.series.values) require_finite(std::abs(v), "profile sample");
  std::ostringstream out;
  pwd::csv::write_profile(out, rec);
  csv_out = out.str();
  s.add("command", "profile");
  s.add("direction", point_text({comps[0], comps[1], comps.size() > 2 ? comps[2] : 0.0, 0.0},
                                comps.size()));
  s.add("xi", xi.name + ':' + num(xi.min) + ':' + num(xi.max) + ':' + std::to_string(xi.points));
  return kExitOk;
}

int exit_code_for(const pwd::Error& e) {
  switch (e.kind()) {
    case pwd::ErrorKind::numerical:
    case pwd::ErrorKind::singular:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

unsigned thread_setting(const CLI::Option* flag, unsigned flag_value) {
  if (flag->count()) return flag_value;
  const char* env = std::getenv("PWD_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v > 4096)
    throw ConfigError("", "PWD_THREADS must be a non-negative integer");
  return static_cast<unsigned>(v);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Plane-wave superposition builder and verifier"};
  app.require_subcommand(1);
  std::string config;
  std::size_t grid_points = 0, quad_nodes = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  struct Flags {
    CLI::App* sub;
    CLI::Option* grid;
    CLI::Option* quad;
    CLI::Option* seed;
    CLI::Option* threads;
  };
  std::vector<Flags> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"build", "build one representation and write its field"},
      {"verify", "compare two representations on the same grid"},
      {"convergence", "fit a residual or Monte Carlo convergence slope"},
      {"radon", "Radon transform, profiles and reconstruction"},
      {"profile", "tabulate one plane-wave profile"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    Flags f{sub, nullptr, nullptr, nullptr, nullptr};
    f.grid = sub->add_option("--grid.points", grid_points, "points on every grid axis")
                 ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    f.quad = sub->add_option("--quad.nodes", quad_nodes, "quadrature node count")
                 ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 30));
    f.seed = sub->add_option("--seed", seed, "Monte Carlo seed");
    f.threads = sub->add_option("--threads", threads, "worker threads (0: hardware count)");
    subs.push_back(f);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  const Flags* active = nullptr;
  for (const auto& f : subs)
    if (f.sub->parsed()) active = &f;
  const std::string command = active->sub->get_name();

  try {
    pwd::set_thread_count(thread_setting(active->threads, threads));
    Overrides ov;
    if (active->grid->count()) ov.grid_points = grid_points;
    if (active->quad->count()) ov.quad_nodes = quad_nodes;
    if (active->seed->count()) ov.seed = seed;
    const Run run(load_json(config), ov);

    Summary s;
    std::string profile_csv;
    int rc = kExitOk;
    if (command == "build") rc = cmd_build(run, s);
    else if (command == "verify") rc = cmd_verify(run, s);
    else if (command == "convergence") rc = cmd_convergence(run, s);
    else if (command == "radon") rc = cmd_radon(run, s);
    else rc = cmd_profile(run, s, profile_csv);

    const auto summary_path = run.output("summary");
    if (command == "profile") {
      if (auto p = run.output("profile_csv")) write_file(*p, profile_csv);
      else std::cout << profile_csv;
      if (summary_path) write_file(*summary_path, s.text());
      else if (run.output("profile_csv")) std::cout << s.text();
    } else if (summary_path) {
      write_file(*summary_path, s.text());
    } else {
      std::cout << s.text();
    }
    return rc;
  } catch (const ConfigError& e) {
    std::cerr << "error: config " << e.what() << '\n';
    return kExitConfig;
  } catch (const pwd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace pwdcli

int main(int argc, char** argv) { return pwdcli::run_cli(argc, argv); }
