#pragma once

#include "lmoment/measures.hpp"
#include "lmoment/semialgebraic.hpp"

namespace lmoment::detail {

/// Shared precondition check for primal and dual assembly at level d: variable
/// counts, gamma on N^n_{2d}, y on N^n_{2d-1}, gamma_0 = y_0 = 1.
void check_level_inputs(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d);

}  // namespace lmoment::detail
