#pragma once

#include "exrand/bounds.hpp"
#include "exrand/combinatorics.hpp"
#include "exrand/count_vector.hpp"
#include "exrand/errors.hpp"
#include "exrand/figure.hpp"
#include "exrand/format.hpp"
#include "exrand/log_real.hpp"
#include "exrand/reference_values.hpp"
#include "exrand/spaces.hpp"
#include "exrand/suites.hpp"
#include "exrand/testing.hpp"
