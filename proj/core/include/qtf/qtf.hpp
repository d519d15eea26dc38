// qtf.hpp — Umbrella header

#pragma once

#include "qtf/classical.hpp"
#include "qtf/density.hpp"
#include "qtf/equilibrium.hpp"
#include "qtf/errors.hpp"
#include "qtf/lindblad.hpp"
#include "qtf/matrix_core.hpp"
#include "qtf/random.hpp"
#include "qtf/serialization.hpp"
