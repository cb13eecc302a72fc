// Umbrella header: the whole library.

#pragma once

#include "arrangement.hpp"
#include "cli.hpp"
#include "complex.hpp"
#include "core.hpp"
#include "embedding.hpp"
#include "homology.hpp"
#include "interval.hpp"
#include "io.hpp"
#include "poset.hpp"
#include "report.hpp"
#include "search.hpp"
#include "subset.hpp"
