#ifndef PWD_CSV_HPP
#define PWD_CSV_HPP

// Text formats for fields, plane-wave profiles and sinograms. Numbers are
// written with 17 significant digits so that round trips are exact.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pwd/error.hpp"
#include "pwd/fields.hpp"
#include "pwd/interp.hpp"
#include "pwd/radon.hpp"
#include "pwd/rotations.hpp"

namespace pwd::csv {

inline constexpr const char* kFieldHeader = "# planewave-descent field v1";
inline constexpr const char* kProfileHeader = "# planewave-descent profile v1";
inline constexpr const char* kSinogramHeader = "# planewave-descent sinogram v1";

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

inline double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::io,
                "line " + std::to_string(line) + ": cannot parse number '" + s + "'");
  }
}

inline std::size_t parse_size(const std::string& s, std::size_t line) {
  const double v = parse_double(s, line);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw Error(ErrorKind::io,
                "line " + std::to_string(line) + ": expected a count, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

inline std::string next_line(std::istream& in, std::size_t& line, const char* what) {
  std::string s;
  if (!std::getline(in, s))
    throw Error(ErrorKind::io, std::string("unexpected end of input reading ") + what);
  ++line;
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

inline void expect(const std::string& got, const char* want, std::size_t line) {
  if (got != want)
    throw Error(ErrorKind::io, "line " + std::to_string(line) + ": expected '" + want +
                                   "', got '" + got + "'");
}

inline std::string axis_text(const Axis& a) {
  return a.name + ":" + num(a.min) + ":" + num(a.max) + ":" + std::to_string(a.points);
}

inline Axis parse_axis(const std::string& s, std::size_t line) {
  const auto f = split(s, ':');
  if (f.size() != 4)
    throw Error(ErrorKind::io, "line " + std::to_string(line) + ": malformed axis '" + s + "'");
  return Axis{f[0], parse_double(f[1], line), parse_double(f[2], line),
              parse_size(f[3], line)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fields: header, "axes,name:min:max:points;...", then coords...,re,im rows.

inline void write_field(std::ostream& out, const ScalarField& field) {
  const GridSpec& g = field.grid();
  out << kFieldHeader << '\n' << "axes,";
  for (std::size_t a = 0; a < g.rank(); ++a)
    out << (a ? ";" : "") << detail::axis_text(g.axis(a));
  out << '\n';
  std::string row;
  for (std::size_t n = 0; n < g.size(); ++n) {
    row.clear();
    const GridPoint p = g.point(n);
    for (std::size_t a = 0; a < g.rank(); ++a) row += num(p[a]) + ",";
    row += num(field[n].real()) + "," + num(field[n].imag()) + "\n";
    out << row;
  }
}

inline ScalarField read_field(std::istream& in) {
  std::size_t line = 0;
  detail::expect(detail::next_line(in, line, "field header"), kFieldHeader, line);
  const std::string axes_line = detail::next_line(in, line, "axes line");
  if (axes_line.rfind("axes,", 0) != 0)
    throw Error(ErrorKind::io, "line 2: expected 'axes,...'");
  std::vector<Axis> axes;
  for (const auto& spec : detail::split(axes_line.substr(5), ';'))
    axes.push_back(detail::parse_axis(spec, line));
  GridSpec grid(std::move(axes));
  std::vector<cplx> values(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const auto f = detail::split(detail::next_line(in, line, "field rows"), ',');
    if (f.size() != grid.rank() + 2)
      throw Error(ErrorKind::io, "line " + std::to_string(line) + ": expected " +
                                     std::to_string(grid.rank() + 2) + " columns");
    values[n] = {detail::parse_double(f[grid.rank()], line),
                 detail::parse_double(f[grid.rank() + 1], line)};
  }
  return ScalarField(std::move(grid), std::move(values));
}

// ---------------------------------------------------------------------------
// Profiles: header, "direction,n1,n2[,n3]", then xi,re,im rows.

struct ProfileRecord {
  std::vector<double> direction;
  UniformSeries series;
};

inline void write_profile(std::ostream& out, const ProfileRecord& p) {
  out << kProfileHeader << '\n' << "direction";
  for (double c : p.direction) out << ',' << num(c);
  out << '\n';
  for (std::size_t i = 0; i < p.series.values.size(); ++i) {
    const double xi = p.series.x0 + p.series.step * static_cast<double>(i);
    out << num(xi) << ',' << num(p.series.values[i].real()) << ','
        << num(p.series.values[i].imag()) << '\n';
  }
}

inline ProfileRecord read_profile(std::istream& in) {
  std::size_t line = 0;
  detail::expect(detail::next_line(in, line, "profile header"), kProfileHeader, line);
  const auto dir = detail::split(detail::next_line(in, line, "direction line"), ',');
  if (dir.empty() || dir[0] != "direction")
    throw Error(ErrorKind::io, "line 2: expected 'direction,...'");
  ProfileRecord p;
  for (std::size_t i = 1; i < dir.size(); ++i)
    p.direction.push_back(detail::parse_double(dir[i], line));
  std::vector<double> xi;
  std::string s;
  while (std::getline(in, s)) {
    ++line;
    if (s.empty()) continue;
    const auto f = detail::split(s, ',');
    if (f.size() != 3)
      throw Error(ErrorKind::io, "line " + std::to_string(line) + ": expected xi,re,im");
    xi.push_back(detail::parse_double(f[0], line));
    p.series.values.emplace_back(detail::parse_double(f[1], line),
                                 detail::parse_double(f[2], line));
  }
  if (xi.size() < 2) throw Error(ErrorKind::io, "profile needs at least 2 samples");
  p.series.x0 = xi.front();
  p.series.step = (xi.back() - xi.front()) / static_cast<double>(xi.size() - 1);
  for (std::size_t i = 0; i < xi.size(); ++i)
    if (std::abs(xi[i] - (p.series.x0 + p.series.step * static_cast<double>(i))) >
        1e-9 * (1.0 + std::abs(xi[i])))
      throw Error(ErrorKind::io, "profile xi samples are not uniformly spaced");
  return p;
}

// ---------------------------------------------------------------------------
// Sinograms: header, "dim,N", "rho,name:min:max:points", optional
// "level,name:min:max:points", "dir_index,n1,n2[,n3],weight" table, then
// "dir_index,rho,re,im" rows (with a leading level column when stacked).

inline void write_sinogram(std::ostream& out, const radon::Sinogram& s) {
  const auto& d = s.directions;
  out << kSinogramHeader << '\n';
  out << "dim," << d.dim << '\n';
  out << "rho," << detail::axis_text(s.rho) << '\n';
  if (s.level) out << "level," << detail::axis_text(*s.level) << '\n';
  out << (d.dim == 2 ? "dir_index,n1,n2,weight" : "dir_index,n1,n2,n3,weight") << '\n';
  for (std::size_t j = 0; j < d.size(); ++j) {
    out << j;
    for (std::size_t c = 0; c < d.dim; ++c) out << ',' << num(d.nodes[j][c]);
    out << ',' << num(d.weights[j]) << '\n';
  }
  out << (s.level ? "level_index,dir_index,rho,re,im" : "dir_index,rho,re,im") << '\n';
  for (std::size_t lvl = 0; lvl < s.levels(); ++lvl)
    for (std::size_t j = 0; j < d.size(); ++j)
      for (std::size_t i = 0; i < s.rho.points; ++i) {
        const cplx v = s.at(j, i, lvl);
        if (s.level) out << lvl << ',';
        out << j << ',' << num(s.rho.coordinate(i)) << ',' << num(v.real()) << ','
            << num(v.imag()) << '\n';
      }
}

inline radon::Sinogram read_sinogram(std::istream& in) {
  std::size_t line = 0;
  detail::expect(detail::next_line(in, line, "sinogram header"), kSinogramHeader, line);
  radon::Sinogram s;
  auto f = detail::split(detail::next_line(in, line, "dim line"), ',');
  if (f.size() != 2 || f[0] != "dim") throw Error(ErrorKind::io, "expected 'dim,N'");
  s.directions.dim = detail::parse_size(f[1], line);
  if (s.directions.dim != 2 && s.directions.dim != 3)
    throw Error(ErrorKind::io, "sinogram dimension must be 2 or 3");
  f = detail::split(detail::next_line(in, line, "rho line"), ',');
  if (f.size() != 2 || f[0] != "rho") throw Error(ErrorKind::io, "expected 'rho,...'");
  s.rho = detail::parse_axis(f[1], line);
  std::string tline = detail::next_line(in, line, "direction table header");
  if (tline.rfind("level,", 0) == 0) {
    s.level = detail::parse_axis(tline.substr(6), line);
    tline = detail::next_line(in, line, "direction table header");
  }
  if (tline.rfind("dir_index,", 0) != 0)
    throw Error(ErrorKind::io, "expected the direction table header");
  const std::string rows_header =
      s.level ? "level_index,dir_index,rho,re,im" : "dir_index,rho,re,im";
  for (;;) {
    const std::string row = detail::next_line(in, line, "direction table");
    if (row == rows_header) break;
    f = detail::split(row, ',');
    if (f.size() != s.directions.dim + 2)
      throw Error(ErrorKind::io, "line " + std::to_string(line) + ": malformed direction row");
    std::vector<double> c;
    for (std::size_t k = 0; k < s.directions.dim; ++k)
      c.push_back(detail::parse_double(f[k + 1], line));
    s.directions.nodes.emplace_back(std::span<const double>(c));
    s.directions.weights.push_back(detail::parse_double(f.back(), line));
  }
  const std::size_t cols = s.level ? 5 : 4;
  s.values.resize(s.levels() * s.directions.size() * s.rho.points);
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    f = detail::split(detail::next_line(in, line, "sinogram rows"), ',');
    if (f.size() != cols)
      throw Error(ErrorKind::io, "line " + std::to_string(line) + ": malformed sinogram row");
    s.values[k] = {detail::parse_double(f[cols - 2], line),
                   detail::parse_double(f[cols - 1], line)};
  }
  return s;
}

}  // namespace pwd::csv

#endif  // PWD_CSV_HPP
