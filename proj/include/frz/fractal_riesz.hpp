#pragma once

// Umbrella header: potentials and energies of occupation measures, Gaussian
// field samplers, Hoelder-constrained energy minimization, fractal dimension
// diagnostics, explicit constants, and BV composition estimates.

#include "frz/analysis.hpp"
#include "frz/common.hpp"
#include "frz/composition.hpp"
#include "frz/constants.hpp"
#include "frz/fields.hpp"
#include "frz/io.hpp"
#include "frz/kernels.hpp"
#include "frz/measures.hpp"
#include "frz/minimize.hpp"
#include "frz/quadrature.hpp"
#include "frz/witness.hpp"
