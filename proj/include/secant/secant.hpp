#pragma once

#include "secant/certificate.hpp"
#include "secant/core_matrix.hpp"
#include "secant/errors.hpp"
#include "secant/sim/blocks.hpp"
#include "secant/sim/csv.hpp"
#include "secant/sim/dissipation.hpp"
#include "secant/sim/ifp.hpp"
#include "secant/sim/interconnection.hpp"
#include "secant/sim/lyapunov.hpp"
#include "secant/sim/simulate.hpp"
#include "secant/spectral.hpp"
