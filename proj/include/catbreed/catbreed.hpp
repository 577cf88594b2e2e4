#pragma once

#include "catbreed/coherent.hpp"
#include "catbreed/config.hpp"
#include "catbreed/coupler.hpp"
#include "catbreed/csv.hpp"
#include "catbreed/error.hpp"
#include "catbreed/fock.hpp"
#include "catbreed/metrics.hpp"
#include "catbreed/optimize.hpp"
#include "catbreed/reproduce.hpp"
#include "catbreed/sweep.hpp"
#include "catbreed/verify.hpp"
#include "catbreed/wigner.hpp"
