#pragma once

// Umbrella header for the core library (no JSON dependency).

#include "hermlie/algebra.hpp"
#include "hermlie/bismut.hpp"
#include "hermlie/classify.hpp"
#include "hermlie/curvature.hpp"
#include "hermlie/errors.hpp"
#include "hermlie/families.hpp"
#include "hermlie/fixtures.hpp"
#include "hermlie/forms.hpp"
#include "hermlie/real_presentation.hpp"
#include "hermlie/sampling.hpp"
#include "hermlie/search.hpp"
#include "hermlie/tensor.hpp"
#include "hermlie/validate.hpp"
#include "hermlie/verifier.hpp"
