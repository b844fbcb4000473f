#pragma once

#include "shepwm/angles.hpp"
#include "shepwm/gates.hpp"
#include "shepwm/harmonics.hpp"
#include "shepwm/linsolve.hpp"
#include "shepwm/solver.hpp"
#include "shepwm/svg.hpp"
#include "shepwm/version.hpp"
#include "shepwm/waveform.hpp"
