#pragma once

// Umbrella header: hull coreset selection and sparse convex encoding of
// point sets, with kernel (Gram-matrix) support throughout.

#include "hullcode/dot_access.hpp"
#include "hullcode/evaluate.hpp"
#include "hullcode/exact_projection.hpp"
#include "hullcode/generators.hpp"
#include "hullcode/greedy_hull.hpp"
#include "hullcode/incremental_subspace.hpp"
#include "hullcode/io.hpp"
#include "hullcode/point_set.hpp"
#include "hullcode/projection.hpp"
#include "hullcode/shadow_cover.hpp"
#include "hullcode/sparse_combination.hpp"
