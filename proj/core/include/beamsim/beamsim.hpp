#pragma once

#include "beamsim/analytic.hpp"
#include "beamsim/beam.hpp"
#include "beamsim/channel.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/montecarlo.hpp"
#include "beamsim/random.hpp"
#include "beamsim/specfun.hpp"
#include "beamsim/throughput.hpp"
#include "beamsim/version.hpp"
