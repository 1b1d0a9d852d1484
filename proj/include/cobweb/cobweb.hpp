#pragma once

#include "cobweb/arithmetic.hpp"
#include "cobweb/bench.hpp"
#include "cobweb/error.hpp"
#include "cobweb/fibonacci.hpp"
#include "cobweb/incidence.hpp"
#include "cobweb/inversion.hpp"
#include "cobweb/mobius.hpp"
#include "cobweb/poset.hpp"
#include "cobweb/verify.hpp"
