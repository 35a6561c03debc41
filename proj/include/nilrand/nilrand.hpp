#pragma once

#include "nilrand/error.hpp"
#include "nilrand/integer.hpp"
#include "nilrand/randwalk.hpp"
#include "nilrand/heiscalc.hpp"
#include "nilrand/intlinalg.hpp"
#include "nilrand/quotients.hpp"
#include "nilrand/predict.hpp"
#include "nilrand/parallel.hpp"
#include "nilrand/arithstat.hpp"
#include "nilrand/experiments.hpp"
