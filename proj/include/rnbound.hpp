#pragma once

#include "rnbound/error.hpp"
#include "rnbound/exponent.hpp"
#include "rnbound/ambient.hpp"
#include "rnbound/ideal.hpp"
#include "rnbound/element.hpp"
#include "rnbound/closure.hpp"
#include "rnbound/filtration.hpp"
#include "rnbound/invariants.hpp"
#include "rnbound/report.hpp"
#include "rnbound/determinant.hpp"
#include "rnbound/verify.hpp"
#include "rnbound/config.hpp"
#include "rnbound/runner.hpp"
