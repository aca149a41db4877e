// Convenience header pulling in the whole library.
#pragma once

#include "tritrop/rational.hpp"
#include "tritrop/graph.hpp"
#include "tritrop/parallel.hpp"
#include "tritrop/theta.hpp"
#include "tritrop/plane_curve.hpp"
#include "tritrop/intersect.hpp"
#include "tritrop/tritangent.hpp"
#include "tritrop/space_lift.hpp"
#include "tritrop/real_counts.hpp"
#include "tritrop/real_search.hpp"
#include "tritrop/io.hpp"
#include "tritrop/svg.hpp"
