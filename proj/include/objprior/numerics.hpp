#pragma once

#include "objprior/numerics/divergence.hpp"
#include "objprior/numerics/grid.hpp"
#include "objprior/numerics/integrate.hpp"
#include "objprior/numerics/interp.hpp"
#include "objprior/numerics/optimize.hpp"
#include "objprior/numerics/special.hpp"
