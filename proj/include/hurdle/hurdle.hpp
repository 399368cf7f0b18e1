#pragma once

// Umbrella header for the Hurdle runtime-analysis laboratory.

#include "hurdle/algorithms.hpp"
#include "hurdle/bitstring.hpp"
#include "hurdle/experiments.hpp"
#include "hurdle/fitness.hpp"
#include "hurdle/local_search.hpp"
#include "hurdle/oracle.hpp"
#include "hurdle/records.hpp"
#include "hurdle/rng.hpp"
#include "hurdle/runner.hpp"
#include "hurdle/stats.hpp"
