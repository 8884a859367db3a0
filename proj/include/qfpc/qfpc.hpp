// Umbrella header.
#pragma once

#include "qfpc/specfun.hpp"
#include "qfpc/greens.hpp"
#include "qfpc/kernels.hpp"
#include "qfpc/quadrature.hpp"
#include "qfpc/forces.hpp"
#include "qfpc/asymptotics.hpp"
#include "qfpc/oracle.hpp"
#include "qfpc/config.hpp"
#include "qfpc/validate.hpp"
