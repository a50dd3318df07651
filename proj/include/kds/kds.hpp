#pragma once

#include "kds/analytic.hpp"
#include "kds/errors.hpp"
#include "kds/fock.hpp"
#include "kds/moments.hpp"
#include "kds/params.hpp"
#include "kds/quad_core.hpp"
#include "kds/sweep.hpp"
#include "kds/verify.hpp"
