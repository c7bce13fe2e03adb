#pragma once

#include "oagm/config.hpp"
#include "oagm/counters.hpp"
#include "oagm/geometry.hpp"
#include "oagm/metrics.hpp"
#include "oagm/mobility.hpp"
#include "oagm/propagation.hpp"
#include "oagm/random.hpp"
#include "oagm/simcore.hpp"
#include "oagm/spgraph.hpp"
#include "oagm/sweep.hpp"
#include "oagm/trace.hpp"
