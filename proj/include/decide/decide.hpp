#pragma once

#include "decide/binary_analytic.hpp"
#include "decide/core.hpp"
#include "decide/counter_rng.hpp"
#include "decide/errors.hpp"
#include "decide/mixed_criteria.hpp"
#include "decide/pure_criteria.hpp"
#include "decide/sdf_lab.hpp"
#include "decide/simplex.hpp"
