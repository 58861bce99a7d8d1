#pragma once

#include "talu/automaton.hpp"
#include "talu/bounds.hpp"
#include "talu/zone.hpp"

namespace talu {

// Bounds produced for the predecessor side of an edge, together with the
// clocks whose entries differ from "no bound". Merging `lu` into the
// predecessor's bounds realizes one propagation step.
struct BoundsDelta {
    LuBounds lu;
    ClockSet changed_lower;
    ClockSet changed_upper;

    explicit BoundsDelta(int clock_count)
        : lu(clock_count), changed_lower(clock_count), changed_upper(clock_count)
    {
    }
};

// Backward bound propagation across one transition, split into the
// lower-guard stage followed by the upper-guard/reset stage. `source` is the
// zone of the transition's source node; `lu_succ` are the successor's bounds,
// of which only the clocks in `changed_lower`/`changed_upper` are new since
// the last propagation across this edge. Guard constants are taken only when
// they explain a zone edge that actually tightened past the successor's
// abstraction thresholds.
BoundsDelta backward_lu(const Zone& source, const DecomposedGuard& guard,
                        const LuBounds& lu_succ, const ClockSet& changed_lower,
                        const ClockSet& changed_upper);

} // namespace talu
