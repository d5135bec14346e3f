#pragma once

// Umbrella header for the nj library: exact polynomial algebra over the
// rationals, nilpotency verdicts for structured Jacobians, the classified
// family of nilpotent maps, and exact inversion of X + H.

#include "nj/errors.hpp"
#include "nj/family.hpp"
#include "nj/inverter.hpp"
#include "nj/jacobian.hpp"
#include "nj/json_io.hpp"
#include "nj/linalg.hpp"
#include "nj/monomial.hpp"
#include "nj/parse.hpp"
#include "nj/polymap.hpp"
#include "nj/polynomial.hpp"
#include "nj/rational.hpp"
#include "nj/sampling.hpp"
