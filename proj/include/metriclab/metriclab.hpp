#pragma once

// Umbrella header.

#include "metriclab/assembly.hpp"
#include "metriclab/common.hpp"
#include "metriclab/euclid.hpp"
#include "metriclab/gnk.hpp"
#include "metriclab/hyperspace.hpp"
#include "metriclab/json_io.hpp"
#include "metriclab/lp.hpp"
#include "metriclab/metric_space.hpp"
#include "metriclab/obstruction.hpp"
#include "metriclab/suite.hpp"
#include "metriclab/transport.hpp"
