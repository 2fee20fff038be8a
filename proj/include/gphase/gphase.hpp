#pragma once

#include "gphase/common.hpp"
#include "gphase/csv.hpp"
#include "gphase/experiment.hpp"
#include "gphase/fringe_fit.hpp"
#include "gphase/geometric_phase.hpp"
#include "gphase/interferometer.hpp"
#include "gphase/linalg.hpp"
#include "gphase/optics.hpp"
#include "gphase/qubit.hpp"
#include "gphase/rng.hpp"
#include "gphase/state_prep.hpp"
#include "gphase/svg.hpp"
