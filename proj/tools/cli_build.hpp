#ifndef PWD_TOOLS_CLI_BUILD_HPP
#define PWD_TOOLS_CLI_BUILD_HPP

#include <fstream>
#include <optional>
#include <string>

#include "cli_config.hpp"

namespace pwdcli {

/// Everything a representation block needs besides the block itself.
struct BuildContext {
  pwd::spectral::OperatorSpec op;
  pwd::GridSpec grid;
  Overrides ov;
  std::uint64_t seed = 0;
};

struct Built {
  pwd::ScalarField field;
  std::optional<pwd::radon::Sinogram> sinogram;  // raw transform, radon blocks only
  std::optional<pwd::ScalarField> source;         // sampled input, radon blocks only
};

namespace detail {

inline pwd::planewave::ProfileSet whittaker_profiles(const Node& rep,
                                                     const pwd::rotations::DirectionSet& q) {
  using namespace pwd::planewave;
  if (rep.has("profile") == rep.has("source"))
    rep.fail("give exactly one of 'profile' (a family) or 'source' (a spectral amplitude)");
  if (rep.has("profile")) return ProfileSet(parse_family(rep["profile"]));
  const auto amp = parse_amplitude(rep["source"]);
  const pwd::Axis xi = parse_axis(rep["xi"], "xi");
  return at_node(rep, [&] {
    std::vector<PlaneWaveProfile> per;
    per.reserve(q.size());
    for (const auto& n : q.nodes)
      per.push_back(q.dim == 2 ? profile_from_source_2d(amp, n, xi)
                               : profile_from_source_3d(amp, n, xi));
    return ProfileSet::per_node(std::move(per));
  });
}

inline Built build_whittaker(const Node& rep, const BuildContext& c) {
  using pwd::spectral::OperatorKind;
  rep.allow({"type", "operator", "form", "profile", "source", "xi", "quadrature"});
  const std::string form = rep.text("form", "plane-wave");
  if (form == "axis") {
    const auto f = parse_family(rep["profile"]);
    const auto q = parse_quadrature(rep["quadrature"], c.ov, c.seed, 2);
    return {at_node(rep, [&] { return pwd::planewave::axis_to_axisymmetric(f, q, c.grid); }),
            {}, {}};
  }
  if (form != "plane-wave") rep["form"].fail("form is 'plane-wave' or 'axis'");
  const bool three = c.op.kind() == OperatorKind::wave && c.op.dims() == 3;
  const auto q = parse_quadrature(rep["quadrature"], c.ov, c.seed, three ? 3 : 2);
  const auto profiles = whittaker_profiles(rep, q);
  return {at_node(rep,
                  [&] {
                    switch (c.op.kind()) {
                      case OperatorKind::laplace:
                        pwd::require(c.op.dims() == 3,
                                     "whittaker superposition needs laplace with dims 3");
                        return pwd::planewave::laplace3_whittaker(profiles, q, c.grid);
                      case OperatorKind::aniso_laplace:
                        pwd::require(c.op.alpha() == c.op.beta(),
                                     "whittaker superposition needs alpha == beta");
                        return pwd::planewave::aniso_whittaker(profiles, c.op.alpha(), q,
                                                               c.grid);
                      default:
                        if (c.op.dims() == 2)
                          return pwd::planewave::wave12_superpose(profiles, q, c.grid);
                        pwd::require(c.op.dims() == 3,
                                     "plane-wave superposition needs wave dims 2 or 3");
                        return pwd::planewave::wave13_superpose(profiles, q, c.grid);
                    }
                  }),
          {}, {}};
}

inline pwd::descent::SourceSampler parse_source(const Node& rep, std::size_t arity) {
  const auto fam = parse_family(rep["source"]);
  auto s = at_node(rep["source"],
                   [&] { return pwd::descent::SourceSampler::from_family(fam, arity); });
  if (auto box = rep.find("support")) {
    pwd::descent::SupportBox b;
    for (std::size_t i = 0; i < box->size(); ++i) {
      const auto lohi = box->at(i).numbers();
      if (lohi.size() != 2) box->at(i).fail("support intervals are written [lo, hi]");
      b.emplace_back(lohi[0], lohi[1]);
    }
    s = at_node(*box, [&] { return s.with_support(std::move(b)); });
  }
  return s;
}

inline Built build_descent(const Node& rep, const BuildContext& c) {
  using namespace pwd::descent;
  rep.allow({"type", "operator", "method", "source", "support", "quadrature", "radial",
             "angular", "panels", "order", "nodes"});
  const std::string method = rep["method"].text();
  const PanelRule panels{rep.count("panels", 8), rep.count("order", 10)};
  auto field = [&]() -> pwd::ScalarField {
    if (method == "kirchhoff" || method == "odd-n") {
      const auto psi = parse_source(rep, 3);
      const auto q = parse_quadrature(rep["quadrature"], c.ov, c.seed, 3);
      return at_node(rep, [&] {
        return method == "kirchhoff" ? kirchhoff13_field(psi, q, c.grid)
                                     : odd_n_solution(psi, 3, q, c.grid);
      });
    }
    if (method == "poisson") {
      const auto psi = parse_source(rep, 2);
      return at_node(rep, [&] {
        return poisson12_field(psi, c.grid, rep.count("radial", 48), rep.count("angular", 96));
      });
    }
    if (method == "laplace-source") {
      const auto g = parse_source(rep, 2);
      return at_node(rep, [&] { return laplace_source3(g, c.grid, panels); });
    }
    if (method == "line-source") {
      const auto g = parse_source(rep, 1);
      return at_node(rep, [&] { return axisym_line_source(g, c.grid, panels); });
    }
    if (method == "analytic-segment") {
      const auto g = parse_source(rep, 1);
      return at_node(rep, [&] { return axisym_analytic_segment(g, c.grid, rep.count("nodes", 64)); });
    }
    rep["method"].fail("unknown descent method '" + method +
                       "' (kirchhoff, odd-n, poisson, laplace-source, line-source, "
                       "analytic-segment)");
  };
  return {field(), {}, {}};
}

inline Built build_spectral(const Node& rep, const BuildContext& c) {
  rep.allow({"type", "operator", "amplitude", "kmax", "nk", "branch"});
  const auto amp = parse_amplitude(rep["amplitude"]);
  const double kmax = rep["kmax"].positive();
  const std::size_t nk = rep["nk"].count();
  const std::string branch = rep.text("branch", "positive");
  return {at_node(rep,
                  [&] {
                    if (branch == "sine")
                      return pwd::spectral::wave_sine_synthesize(amp, c.grid, kmax, nk);
                    if (branch != "positive" && branch != "negative")
                      rep["branch"].fail("branch is positive, negative or sine");
                    return pwd::spectral::synthesize(c.op, amp, c.grid, kmax, nk,
                                                     branch == "positive"
                                                         ? pwd::spectral::Branch::positive
                                                         : pwd::spectral::Branch::negative);
                  }),
          {}, {}};
}

inline Built build_twistor(const Node& rep, const BuildContext& c) {
  using pwd::planewave::TwistorCurve;
  rep.allow({"type", "operator", "integrand", "curve"});
  const auto h = at_node(rep["integrand"],
                         [&] { return pwd::planewave::twistor_integrand(parse_family(rep["integrand"])); });
  const Node cv = rep["curve"];
  cv.allow({"type", "center", "radius", "samples"});
  const std::string type = cv["type"].text();
  const std::size_t samples = c.ov.quad_nodes ? *c.ov.quad_nodes : cv["samples"].count();
  const TwistorCurve curve = at_node(cv, [&] {
    if (type == "circle")
      return TwistorCurve::circle(cv["center"].complex(), cv["radius"].number(), samples);
    if (type == "real-axis") return TwistorCurve::real_axis(samples);
    cv["type"].fail("curve type is circle or real-axis");
  });
  return {at_node(rep, [&] { return pwd::planewave::twistor_superpose(h, curve, c.grid); }),
          {}, {}};
}

inline pwd::radon::Sinogram read_sinogram_file(const std::string& path) {
  std::ifstream in(path);
  pwd::require(static_cast<bool>(in), "cannot open sinogram file '" + path + "'",
               pwd::ErrorKind::io);
  return pwd::csv::read_sinogram(in);
}

inline Built build_radon(const Node& rep, const BuildContext& c) {
  using namespace pwd::radon;
  rep.allow({"type", "operator", "field", "source_grid", "quadrature", "rho",
             "allow_truncation", "decay_tolerance", "resolution_tolerance", "input_sinogram"});
  Built out{pwd::ScalarField::zeros(c.grid), {}, {}};
  Sinogram sino;
  if (rep.has("input_sinogram")) {
    sino = read_sinogram_file(rep["input_sinogram"].text());
  } else {
    const auto fam = parse_family(rep["field"]);
    const pwd::GridSpec src_grid =
        rep.has("source_grid") ? parse_grid(rep["source_grid"], c.ov) : c.grid;
    const auto q = parse_quadrature(rep["quadrature"], c.ov, c.seed, 2);
    const pwd::Axis rho = parse_axis(rep["rho"], "rho");
    RadonOptions opt;
    opt.allow_truncation = rep.flag("allow_truncation", false);
    opt.decay_tolerance = rep.number("decay_tolerance", opt.decay_tolerance);
    out.source = at_node(rep["field"], [&] { return pwd::sample_analytic(fam, src_grid); });
    sino = at_node(rep, [&] { return radon_transform(*out.source, q, rho, opt); });
  }
  ProfileOptions popt;
  popt.resolution_tolerance = rep.number("resolution_tolerance", popt.resolution_tolerance);
  const int n = static_cast<int>(sino.directions.dim);
  const Sinogram profiles =
      at_node(rep, [&] { return planewave_profile_from_radon(sino, n, popt); });
  out.field = at_node(rep, [&] { return radon_reconstruct(profiles, c.grid); });
  out.sinogram = std::move(sino);
  return out;
}

inline Built build_analytic(const Node& rep, const BuildContext& c) {
  rep.allow({"type", "operator", "family"});
  const auto fam = parse_family(rep["family"]);
  return {at_node(rep, [&] { return pwd::sample_analytic(fam, c.grid); }), {}, {}};
}

}  // namespace detail

/// Operator in effect for a block: its own "operator" key, else the run's.
inline pwd::spectral::OperatorSpec block_operator(const Node& rep,
                                                  const pwd::spectral::OperatorSpec& run_op) {
  return rep.has("operator") ? parse_operator(rep["operator"]) : run_op;
}

/// Dispatches on "type": whittaker, descent, spectral, twistor, radon, analytic.
inline Built build_representation(const Node& rep, BuildContext c) {
  c.op = block_operator(rep, c.op);
  const std::string type = rep["type"].text();
  if (type == "whittaker") return detail::build_whittaker(rep, c);
  if (type == "descent") return detail::build_descent(rep, c);
  if (type == "spectral") return detail::build_spectral(rep, c);
  if (type == "twistor") return detail::build_twistor(rep, c);
  if (type == "radon") return detail::build_radon(rep, c);
  if (type == "analytic") return detail::build_analytic(rep, c);
  rep["type"].fail("unknown representation '" + type +
                   "' (whittaker, descent, spectral, twistor, radon, analytic)");
}

}  // namespace pwdcli

#endif  // PWD_TOOLS_CLI_BUILD_HPP
