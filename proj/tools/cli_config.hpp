#ifndef PWD_TOOLS_CLI_CONFIG_HPP
#define PWD_TOOLS_CLI_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwd/pwd.hpp"

namespace pwdcli {

using json = nlohmann::json;
using pwd::cplx;

/// Validation failure located at a JSON pointer inside the config.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error((where.empty() ? std::string("/") : where) + ": " + what) {}
};

/// Top-level scalars that command-line flags may replace.
struct Overrides {
  std::optional<std::size_t> grid_points;
  std::optional<std::size_t> quad_nodes;
  std::optional<std::uint64_t> seed;
};

/// A JSON value paired with its pointer path for diagnostics.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Node operator[](const std::string& key) const {
    require_object();
    if (!j_->contains(key)) fail("missing required key '" + key + "'");
    return Node(j_->at(key), path_ + "/" + key);
  }

  std::optional<Node> find(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return Node(j_->at(key), path_ + "/" + key);
  }

  Node at(std::size_t i) const { return Node(j_->at(i), path_ + "/" + std::to_string(i)); }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  void require_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  /// Rejects keys outside `known`, which catches misspelled options.
  void allow(std::initializer_list<const char*> known) const {
    require_object();
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      bool ok = false;
      for (const char* k : known) ok = ok || it.key() == k;
      if (!ok) Node(it.value(), path_ + "/" + it.key()).fail("unknown key");
    }
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("expected a value > 0");
    return v;
  }

  std::size_t count() const {
    if (!j_->is_number_integer() || j_->get<long long>() < 0)
      fail("expected a non-negative integer");
    return j_->get<std::size_t>();
  }

  bool flag() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  std::string text() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  /// A real number or a [re, im] pair.
  cplx complex() const {
    if (j_->is_array()) {
      if (j_->size() != 2) fail("complex values are written [re, im]");
      return {at(0).number(), at(1).number()};
    }
    return {number(), 0.0};
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? (*this)[key].number() : fallback;
  }
  std::size_t count(const std::string& key, std::size_t fallback) const {
    return has(key) ? (*this)[key].count() : fallback;
  }
  bool flag(const std::string& key, bool fallback) const {
    return has(key) ? (*this)[key].flag() : fallback;
  }
  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? (*this)[key].text() : fallback;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(path_, what); }

 private:
  const json* j_;
  std::string path_;
};

/// Runs `fn`, relabelling precondition failures with the config location.
template <typename Fn>
auto at_node(const Node& node, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const pwd::Error& e) {
    if (e.kind() == pwd::ErrorKind::invalid_argument) node.fail(e.what());
    throw;
  }
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("", path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                              ": malformed JSON (" + e.what() + ")");
  }
}

// ---------------------------------------------------------------------------
// Building blocks

inline pwd::spectral::OperatorSpec parse_operator(const Node& n) {
  n.allow({"kind", "dims", "alpha", "beta"});
  const std::string kind = n["kind"].text();
  return at_node(n, [&] {
    if (kind == "laplace") return pwd::spectral::OperatorSpec::laplace(static_cast<int>(n.count("dims", 3)));
    if (kind == "wave") return pwd::spectral::OperatorSpec::wave(static_cast<int>(n["dims"].count()));
    if (kind == "aniso-laplace")
      return pwd::spectral::OperatorSpec::aniso_laplace(n["alpha"].number(), n["beta"].number());
    n["kind"].fail("unknown operator kind '" + kind + "' (laplace, wave, aniso-laplace)");
  });
}

inline pwd::Axis parse_axis(const Node& n, const std::string& default_name,
                            std::optional<std::size_t> points_override = std::nullopt,
                            std::optional<std::size_t> default_points = std::nullopt) {
  n.allow({"name", "min", "max", "points"});
  pwd::Axis a;
  a.name = n.text("name", default_name);
  a.min = n["min"].number();
  a.max = n["max"].number();
  if (points_override) {
    a.points = *points_override;
  } else if (n.has("points")) {
    a.points = n["points"].count();
  } else if (default_points) {
    a.points = *default_points;
  } else {
    n.fail("missing required key 'points'");
  }
  if (!(a.max > a.min)) n.fail("axis needs max > min");
  if (a.points < 2) n.fail("axis needs at least 2 points");
  return a;
}

/// {"points": P, "axes": [{"name", "min", "max", "points"?}, ...]}
inline pwd::GridSpec parse_grid(const Node& n, const Overrides& ov) {
  n.allow({"axes", "points"});
  std::optional<std::size_t> shared;
  if (n.has("points")) shared = n["points"].count();
  const Node axes = n["axes"];
  std::vector<pwd::Axis> out;
  for (std::size_t i = 0; i < axes.size(); ++i)
    out.push_back(parse_axis(axes.at(i), "", ov.grid_points, shared));
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].name.empty()) axes.at(i).fail("grid axes need a name");
  return at_node(n, [&] { return pwd::GridSpec(std::move(out)); });
}

/// Same axes with every point count replaced.
inline pwd::GridSpec with_points(const pwd::GridSpec& g, std::size_t points) {
  std::vector<pwd::Axis> axes = g.axes();
  for (auto& a : axes) a.points = points;
  return pwd::GridSpec(std::move(axes));
}

inline pwd::AnalyticFamily parse_family(const Node& n) {
  const std::string kind = n["kind"].text();
  return at_node(n, [&] {
    if (kind == "polynomial") {
      n.allow({"kind", "coefficients", "argument"});
      const Node cs = n["coefficients"];
      std::vector<cplx> c;
      for (std::size_t i = 0; i < cs.size(); ++i) c.push_back(cs.at(i).complex());
      pwd::family::PolyArgument arg;
      if (auto a = n.find("argument")) {
        if (a->raw().is_string()) {
          if (a->text() != "squared-norm") a->fail("argument is a coordinate index or 'squared-norm'");
          arg.kind = pwd::family::PolyArgument::Kind::squared_norm;
        } else {
          arg.index = a->count();
        }
      }
      return pwd::AnalyticFamily::polynomial(std::move(c), arg);
    }
    if (kind == "gaussian") {
      n.allow({"kind", "center", "width"});
      return pwd::AnalyticFamily::gaussian(n["center"].numbers(), n["width"].number());
    }
    if (kind == "damped-exponential") {
      n.allow({"kind", "amplitude", "decay"});
      const cplx amp = n.has("amplitude") ? n["amplitude"].complex() : cplx(1.0);
      return pwd::AnalyticFamily::damped_exponential(amp, n["decay"].number());
    }
    if (kind == "rational-inverse") {
      n.allow({"kind", "pole"});
      return pwd::AnalyticFamily::rational_inverse(n["pole"].complex());
    }
    if (kind == "harmonic-poly") {
      n.allow({"kind", "degree"});
      return pwd::AnalyticFamily::harmonic_poly(static_cast<int>(n["degree"].count()));
    }
    n["kind"].fail("unknown family '" + kind +
                   "' (polynomial, gaussian, damped-exponential, rational-inverse, harmonic-poly)");
  });
}

inline pwd::spectral::SpectralAmplitude parse_amplitude(const Node& n) {
  const std::string kind = n["kind"].text();
  return at_node(n, [&] {
    if (kind == "gaussian") {
      n.allow({"kind", "sigma", "center"});
      std::vector<double> c;
      if (n.has("center")) c = n["center"].numbers();
      return pwd::spectral::SpectralAmplitude::gaussian(n["sigma"].number(), std::move(c));
    }
    if (kind == "ring") {
      n.allow({"kind", "k0", "width"});
      return pwd::spectral::SpectralAmplitude::ring(n["k0"].number(), n["width"].number());
    }
    if (kind == "exponential") {
      n.allow({"kind", "scale"});
      return pwd::spectral::SpectralAmplitude::exponential(n["scale"].number());
    }
    n["kind"].fail("unknown amplitude '" + kind + "' (gaussian, ring, exponential)");
  });
}

/// {"type": circle | half-circle | sphere | monte-carlo, "nodes", "azimuthal", "dim"}
inline pwd::rotations::DirectionSet parse_quadrature(const Node& n, const Overrides& ov,
                                                     std::uint64_t seed,
                                                     std::size_t default_dim) {
  n.allow({"type", "nodes", "azimuthal", "dim"});
  const std::string type = n["type"].text();
  const std::size_t nodes = ov.quad_nodes ? *ov.quad_nodes : n["nodes"].count();
  if (nodes == 0) n["nodes"].fail("quadrature needs at least one node");
  return at_node(n, [&] {
    if (type == "circle") return pwd::rotations::circle_quadrature(nodes);
    if (type == "half-circle") return pwd::rotations::half_circle_quadrature(nodes);
    if (type == "sphere")
      return pwd::rotations::sphere_quadrature(nodes, n.count("azimuthal", 2 * nodes));
    if (type == "monte-carlo")
      return pwd::rotations::monte_carlo_directions(nodes, seed, n.count("dim", default_dim));
    n["type"].fail("unknown quadrature '" + type + "' (circle, half-circle, sphere, monte-carlo)");
  });
}

}  // namespace pwdcli

#endif  // PWD_TOOLS_CLI_CONFIG_HPP
