#pragma once

// Umbrella header for the textile-system library.

#include "textile/closedform.hpp"
#include "textile/corpus.hpp"
#include "textile/errors.hpp"
#include "textile/graph.hpp"
#include "textile/ktheory.hpp"
#include "textile/matrix.hpp"
#include "textile/system.hpp"
#include "textile/tiling.hpp"
