#pragma once

#include <vector>

#include "closest/subproblem.hpp"

namespace closest {

/// Partitions a unit's unexplored region into at most k disjoint children.
///
/// The open values at the shallowest open depth are cut into near-equal
/// contiguous groups in heuristic value order; each child inherits the
/// frontier prefix above that depth and gets its group as the domain there.
/// The group holding the currently committed value also inherits the deeper
/// frontier, so partially explored work is continued, never repeated. When
/// every assigned depth is closed, the first unassigned depth is split
/// instead (forced singleton levels extend the prefix on the way down).
///
/// Returns an empty list when the unit has no unexplored region left.
std::vector<Subproblem> split(const Subproblem& sub, int k,
                              const InstanceLoader& loader = {});

}  // namespace closest
