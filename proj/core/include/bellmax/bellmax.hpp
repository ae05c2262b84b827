#pragma once

#include "bellmax/bellman.hpp"
#include "bellmax/errors.hpp"
#include "bellmax/hardy.hpp"
#include "bellmax/measure_fn.hpp"
#include "bellmax/quadrature.hpp"
#include "bellmax/special.hpp"
#include "bellmax/tree_sim.hpp"
#include "bellmax/version.hpp"
