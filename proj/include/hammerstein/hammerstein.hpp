#pragma once

// Umbrella header: Hammerstein integral equations on the real line in
// weighted coordinates, spectral comparison operators, condition audits,
// existence certificates, and the Picard solver.

#include "hammerstein/catalog.hpp"
#include "hammerstein/certify.hpp"
#include "hammerstein/conditions.hpp"
#include "hammerstein/cone.hpp"
#include "hammerstein/config.hpp"
#include "hammerstein/grid.hpp"
#include "hammerstein/interval.hpp"
#include "hammerstein/operators.hpp"
#include "hammerstein/problem.hpp"
#include "hammerstein/quadrature.hpp"
#include "hammerstein/run.hpp"
#include "hammerstein/spectral.hpp"
#include "hammerstein/weighted.hpp"
