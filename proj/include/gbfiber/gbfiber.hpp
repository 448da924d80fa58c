#pragma once

#include "errors.hpp"
#include "specfun.hpp"
#include "quadrature.hpp"
#include "units.hpp"
#include "fiber_types.hpp"
#include "normalization.hpp"
#include "fiber_modes.hpp"
#include "klein_gordon.hpp"
#include "gravity.hpp"
#include "quantum_states.hpp"
#include "interferometry.hpp"
