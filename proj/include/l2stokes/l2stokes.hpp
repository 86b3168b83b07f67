#pragma once

#include "l2stokes/bessel.hpp"
#include "l2stokes/cone_spectrum.hpp"
#include "l2stokes/cutoffs.hpp"
#include "l2stokes/errors.hpp"
#include "l2stokes/model_geometry.hpp"
#include "l2stokes/pairing_defect.hpp"
#include "l2stokes/quadrature.hpp"
#include "l2stokes/rational.hpp"
#include "l2stokes/report.hpp"
#include "l2stokes/stokes_rules.hpp"
#include "l2stokes/variety_lab.hpp"
#include "l2stokes/version.hpp"
