#ifndef PWD_INTERP_HPP
#define PWD_INTERP_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "pwd/error.hpp"

namespace pwd {

/// Complex samples at x0 + i * step, read back by local 4-point (cubic)
/// Lagrange interpolation. Evaluation outside [x0, x_max] is an error.
struct UniformSeries {
  double x0 = 0.0;
  double step = 1.0;
  std::vector<std::complex<double>> values;

  double x_max() const { return x0 + step * static_cast<double>(values.size() - 1); }

  std::complex<double> value(double x) const { return eval(x, false); }
  std::complex<double> derivative(double x) const { return eval(x, true); }

 private:
  std::complex<double> eval(double x, bool derivative) const {
    const std::size_t n = values.size();
    require(n >= 4, "cubic interpolation needs at least 4 samples");
    const double s = (x - x0) / step;
    const double slack = 1e-9;
    if (!(s >= -slack && s <= static_cast<double>(n - 1) + slack))
      throw Error(ErrorKind::domain,
                  "interpolation point " + std::to_string(x) + " outside [" +
                      std::to_string(x0) + ", " + std::to_string(x_max()) + "]");
    const auto cell = static_cast<long>(std::floor(s));
    const long start = std::clamp(cell - 1, 0L, static_cast<long>(n) - 4);
    const double t = s - static_cast<double>(start);
    double w[4];
    if (!derivative) {
      w[0] = -(t - 1) * (t - 2) * (t - 3) / 6.0;
      w[1] = t * (t - 2) * (t - 3) / 2.0;
      w[2] = -t * (t - 1) * (t - 3) / 2.0;
      w[3] = t * (t - 1) * (t - 2) / 6.0;
    } else {
      w[0] = -((t - 2) * (t - 3) + (t - 1) * (t - 3) + (t - 1) * (t - 2)) / 6.0 / step;
      w[1] = ((t - 2) * (t - 3) + t * (t - 3) + t * (t - 2)) / 2.0 / step;
      w[2] = -((t - 1) * (t - 3) + t * (t - 3) + t * (t - 1)) / 2.0 / step;
      w[3] = ((t - 1) * (t - 2) + t * (t - 2) + t * (t - 1)) / 6.0 / step;
    }
    std::complex<double> acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += w[k] * values[static_cast<std::size_t>(start + k)];
    return acc;
  }
};

}  // namespace pwd

#endif  // PWD_INTERP_HPP
