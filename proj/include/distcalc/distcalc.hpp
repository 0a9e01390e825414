#pragma once

// Umbrella header.

#include "distcalc/core.hpp"
#include "distcalc/envelope.hpp"
#include "distcalc/reduction.hpp"
#include "distcalc/products.hpp"
#include "distcalc/birkhoff.hpp"
#include "distcalc/matrix_io.hpp"
#include "distcalc/ensemble.hpp"
#include "distcalc/rng.hpp"
#include "distcalc/errors.hpp"
