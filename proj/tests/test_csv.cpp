#include <gtest/gtest.h>

#include <sstream>

#include "pwd/csv.hpp"

using namespace pwd;

namespace {

void expect_io_error(const std::string& text, const std::function<void(std::istream&)>& read) {
  std::istringstream in(text);
  try {
    read(in);
    FAIL() << "expected an io error for:\n" << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io) << e.what();
  }
}

}  // namespace

TEST(FieldCsv, RoundTripIsBitExact) {
  const GridSpec g({Axis{"t", 0, 0.3, 4}, Axis{"x", -1.0 / 3.0, 2.0 / 7.0, 5}});
  const auto f = ScalarField::generate(g, [](const GridPoint& p) {
    return cplx(std::sin(p[0] * 1e3) / 3.0, std::exp(p[1]) * 1e-300);
  });
  std::ostringstream out;
  csv::write_field(out, f);
  std::istringstream in(out.str());
  const auto back = csv::read_field(in);
  EXPECT_TRUE(back.grid() == g);
  for (std::size_t n = 0; n < g.size(); ++n) EXPECT_EQ(back[n], f[n]);
  std::ostringstream again;
  csv::write_field(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(FieldCsv, Layout) {
  const GridSpec g({Axis{"x", 0, 1, 2}});
  std::ostringstream out;
  csv::write_field(out, ScalarField(g, {cplx(1, 0), cplx(0.5, -2)}));
  EXPECT_EQ(out.str(),
            "# planewave-descent field v1\naxes,x:0:1:2\n0,1,0\n1,0.5,-2\n");
}

TEST(FieldCsv, MalformedInputs) {
  auto read = [](std::istream& in) { csv::read_field(in); };
  expect_io_error("", read);
  expect_io_error("# wrong header\naxes,x:0:1:2\n0,1,0\n1,1,0\n", read);
  expect_io_error("# planewave-descent field v1\nnope\n", read);
  expect_io_error("# planewave-descent field v1\naxes,x:0:1\n", read);
  expect_io_error("# planewave-descent field v1\naxes,x:0:1:2\n0,1,0\n", read);
  expect_io_error("# planewave-descent field v1\naxes,x:0:1:2\n0,1\n1,1,0\n", read);
  expect_io_error("# planewave-descent field v1\naxes,x:0:1:2\n0,abc,0\n1,1,0\n", read);
}

TEST(ProfileCsv, RoundTrip) {
  csv::ProfileRecord p{{0.6, 0.8}, UniformSeries{-1.0, 0.25, {}}};
  for (int i = 0; i < 9; ++i) p.series.values.emplace_back(0.1 * i, -0.2 * i);
  std::ostringstream out;
  csv::write_profile(out, p);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "# planewave-descent profile v1");
  std::istringstream in(out.str());
  const auto back = csv::read_profile(in);
  EXPECT_EQ(back.direction, p.direction);
  EXPECT_EQ(back.series.x0, p.series.x0);
  EXPECT_DOUBLE_EQ(back.series.step, p.series.step);
  EXPECT_EQ(back.series.values, p.series.values);
}

TEST(ProfileCsv, MalformedInputs) {
  auto read = [](std::istream& in) { csv::read_profile(in); };
  expect_io_error("# planewave-descent profile v1\nwrong,1,0\n0,1,0\n1,1,0\n", read);
  expect_io_error("# planewave-descent profile v1\ndirection,1,0\n0,1,0\n", read);
  expect_io_error("# planewave-descent profile v1\ndirection,1,0\n0,1,0\n1,1,0\n3,1,0\n", read);
  expect_io_error("# planewave-descent profile v1\ndirection,1,0\n0,1\n1,1,0\n", read);
}

TEST(SinogramCsv, RoundTripWithLevels) {
  radon::Sinogram s;
  s.directions = rotations::circle_quadrature(3);
  s.rho = Axis{"rho", -1, 1, 5};
  s.level = Axis{"z", 0, 1, 2};
  for (std::size_t k = 0; k < 2 * 3 * 5; ++k)
    s.values.emplace_back(std::sqrt(static_cast<double>(k)), -1.0 / (1.0 + k));
  std::ostringstream out;
  csv::write_sinogram(out, s);
  std::istringstream in(out.str());
  const auto back = csv::read_sinogram(in);
  EXPECT_EQ(back.directions.dim, 2u);
  ASSERT_EQ(back.directions.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(back.directions.weights[j], s.directions.weights[j]);
    for (std::size_t c = 0; c < 2; ++c)
      EXPECT_EQ(back.directions.nodes[j][c], s.directions.nodes[j][c]);
  }
  EXPECT_TRUE(back.rho == s.rho);
  ASSERT_TRUE(back.level.has_value());
  EXPECT_TRUE(*back.level == *s.level);
  EXPECT_EQ(back.values, s.values);
}

TEST(SinogramCsv, RoundTripThreeDimensional) {
  radon::Sinogram s;
  s.directions = rotations::sphere_quadrature(1, 3);
  s.rho = Axis{"rho", 0, 2, 3};
  for (std::size_t k = 0; k < 9; ++k) s.values.emplace_back(k, 0);
  std::ostringstream out;
  csv::write_sinogram(out, s);
  EXPECT_NE(out.str().find("dir_index,n1,n2,n3,weight\n"), std::string::npos);
  EXPECT_NE(out.str().find("dir_index,rho,re,im\n"), std::string::npos);
  std::istringstream in(out.str());
  const auto back = csv::read_sinogram(in);
  EXPECT_FALSE(back.level.has_value());
  EXPECT_EQ(back.values, s.values);
}

TEST(SinogramCsv, MalformedInputs) {
  auto read = [](std::istream& in) { csv::read_sinogram(in); };
  expect_io_error("# planewave-descent sinogram v1\ndim,4\n", read);
  expect_io_error("# planewave-descent sinogram v1\ndim,2\nrho,rho:0:1:2\ndir_index,n1,n2,weight\n"
                  "0,1,0\ndir_index,rho,re,im\n",
                  read);
  expect_io_error("# planewave-descent sinogram v1\ndim,2\nrho,rho:0:1:2\ndir_index,n1,n2,weight\n"
                  "0,1,0,6.28\ndir_index,rho,re,im\n0,0,1,0\n",
                  read);
}
