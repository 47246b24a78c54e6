#pragma once

#include "objprior/refdist/multinomial.hpp"
#include "objprior/refdist/normal.hpp"
