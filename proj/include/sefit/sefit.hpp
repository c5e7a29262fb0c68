#pragma once

#include "sefit/behavior.hpp"
#include "sefit/controller.hpp"
#include "sefit/cybernetic_class.hpp"
#include "sefit/environment.hpp"
#include "sefit/fit.hpp"
#include "sefit/rng.hpp"
#include "sefit/scenario.hpp"
#include "sefit/sensors.hpp"
#include "sefit/sweep.hpp"
