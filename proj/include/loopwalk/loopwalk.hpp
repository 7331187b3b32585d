#pragma once

// Umbrella header.

#include "loopwalk/errors.hpp"
#include "loopwalk/rational.hpp"
#include "loopwalk/series.hpp"
#include "loopwalk/report.hpp"
#include "loopwalk/special_polys.hpp"
#include "loopwalk/umbral.hpp"
#include "loopwalk/loop_engine.hpp"
#include "loopwalk/models.hpp"
#include "loopwalk/identities.hpp"
#include "loopwalk/montecarlo.hpp"
#include "loopwalk/io.hpp"
