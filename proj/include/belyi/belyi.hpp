#pragma once

#include "belyi/config_model.hpp"
#include "belyi/expectations.hpp"
#include "belyi/experiments.hpp"
#include "belyi/log_gamma.hpp"
#include "belyi/map_io.hpp"
#include "belyi/random.hpp"
#include "belyi/report.hpp"
#include "belyi/roots.hpp"
#include "belyi/rotation_map.hpp"
