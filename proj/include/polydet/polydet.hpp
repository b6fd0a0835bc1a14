#pragma once

#include "polydet/errors.hpp"
#include "polydet/modarith.hpp"
#include "polydet/moddet.hpp"
#include "polydet/ntt.hpp"
#include "polydet/parallel.hpp"
#include "polydet/pipeline.hpp"
#include "polydet/polynomial.hpp"
#include "polydet/reconstruct.hpp"
#include "polydet/sylvester.hpp"
#include "polydet/tensor.hpp"
#include "polydet/text.hpp"
#include "polydet/workspace.hpp"
