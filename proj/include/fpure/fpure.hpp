#pragma once

#include "fpure/compat.hpp"
#include "fpure/criteria.hpp"
#include "fpure/groebner.hpp"
#include "fpure/ideal_ops.hpp"
#include "fpure/lang/parser.hpp"
