#pragma once

#include "planckian/constants.hpp"
#include "planckian/decomposition.hpp"
#include "planckian/distributions.hpp"
#include "planckian/families.hpp"
#include "planckian/format.hpp"
#include "planckian/mode_params.hpp"
#include "planckian/numerics.hpp"
#include "planckian/random.hpp"
#include "planckian/sampling.hpp"
#include "planckian/spectra.hpp"
#include "planckian/thermodynamics.hpp"
#include "planckian/verification.hpp"
