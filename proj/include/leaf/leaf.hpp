#pragma once

#include "leaf/check.hpp"
#include "leaf/config.hpp"
#include "leaf/constants.hpp"
#include "leaf/error.hpp"
#include "leaf/formulas.hpp"
#include "leaf/inverse.hpp"
#include "leaf/leaf_core.hpp"
#include "leaf/numerics.hpp"
