#pragma once
//
// Umbrella header.
//

#include "twoproj/calculus.hpp"
#include "twoproj/cs.hpp"
#include "twoproj/errors.hpp"
#include "twoproj/generate.hpp"
#include "twoproj/lattice.hpp"
#include "twoproj/matrix.hpp"
#include "twoproj/pairio.hpp"
#include "twoproj/report.hpp"
#include "twoproj/spectral.hpp"
#include "twoproj/types.hpp"
#include "twoproj/verify.hpp"
