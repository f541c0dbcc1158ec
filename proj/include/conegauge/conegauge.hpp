#pragma once

#include "conegauge/cones.hpp"
#include "conegauge/errors.hpp"
#include "conegauge/exact_linalg.hpp"
#include "conegauge/exact_lp.hpp"
#include "conegauge/gauges.hpp"
#include "conegauge/lattice.hpp"
#include "conegauge/models/diagnostics.hpp"
#include "conegauge/models/estimation.hpp"
#include "conegauge/models/fpp.hpp"
#include "conegauge/models/iarch.hpp"
#include "conegauge/models/weight_field.hpp"
#include "conegauge/monoids.hpp"
#include "conegauge/parallel.hpp"
#include "conegauge/rational.hpp"
