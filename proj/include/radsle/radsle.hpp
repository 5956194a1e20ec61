#pragma once

#include "radsle/common.hpp"
#include "radsle/conformal_core.hpp"
#include "radsle/drivers.hpp"
#include "radsle/exact_sum.hpp"
#include "radsle/finite_difference.hpp"
#include "radsle/hypergeometric_ivp.hpp"
#include "radsle/io.hpp"
#include "radsle/ode.hpp"
#include "radsle/partition.hpp"
#include "radsle/rng.hpp"
#include "radsle/samplers.hpp"
#include "radsle/semiclassical.hpp"
#include "radsle/special_functions.hpp"
#include "radsle/verify.hpp"
