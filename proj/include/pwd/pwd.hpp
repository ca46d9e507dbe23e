#ifndef PWD_PWD_HPP
#define PWD_PWD_HPP

#include "pwd/csv.hpp"
#include "pwd/descent.hpp"
#include "pwd/error.hpp"
#include "pwd/fields.hpp"
#include "pwd/interp.hpp"
#include "pwd/parallel.hpp"
#include "pwd/planewave.hpp"
#include "pwd/quadrature.hpp"
#include "pwd/radon.hpp"
#include "pwd/rotations.hpp"
#include "pwd/spectral.hpp"
#include "pwd/verify.hpp"

#endif  // PWD_PWD_HPP
