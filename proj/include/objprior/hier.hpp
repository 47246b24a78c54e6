#pragma once

#include "objprior/hier/count_table.hpp"
#include "objprior/hier/hypergeometric.hpp"
#include "objprior/hier/limit.hpp"
#include "objprior/hier/marginal.hpp"
#include "objprior/hier/posterior.hpp"
#include "objprior/hier/reference_prior.hpp"
#include "objprior/hier/sampler.hpp"
