#pragma once

#include "kloost/arith.hpp"
#include "kloost/bounds.hpp"
#include "kloost/compensated.hpp"
#include "kloost/errors.hpp"
#include "kloost/expsum.hpp"
#include "kloost/fft.hpp"
#include "kloost/spectral.hpp"
#include "kloost/types.hpp"
#include "kloost/weight.hpp"
