#pragma once

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/special.hpp"
#include "tubeberg/kernel.hpp"
#include "tubeberg/sampling.hpp"
#include "tubeberg/integrate.hpp"
#include "tubeberg/kernel_estimates.hpp"
#include "tubeberg/lattice.hpp"
#include "tubeberg/measures.hpp"
#include "tubeberg/toeplitz.hpp"
#include "tubeberg/io.hpp"
#include "tubeberg/suites.hpp"
