#pragma once

#include <optional>
#include <span>

#include "talu/automaton.hpp"
#include "talu/zone.hpp"

namespace talu {

// Canonical intersection of z with one atomic constraint; nullopt on
// contradiction. Requires z canonical.
std::optional<Zone> constrain(const Zone& z, const AtomicConstraint& atom);

// Intersection with a conjunction of atoms.
std::optional<Zone> constrain_all(const Zone& z, std::span<const AtomicConstraint> atoms);

// Full symbolic successor: intersect with the guard, reset, let time elapse.
// Requires z canonical non-empty; nullopt iff the guard is unsatisfiable in z.
// The result is canonical and time-elapsed.
std::optional<Zone> post(const Zone& z, const Transition& t);

// Successor of the upper-bound/reset stage: elapse((z /\ upper)[R := 0]).
std::optional<Zone> post_upper_reset(const Zone& z, std::span<const AtomicConstraint> upper,
                                     const std::vector<ClockId>& resets);

} // namespace talu
