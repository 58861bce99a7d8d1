#pragma once

#include <string>
#include <vector>

#include "talu/bounds.hpp"
#include "talu/weight.hpp"

namespace talu {

enum class Rel { Lt, Le, Eq, Ge, Gt };

// One conjunct x # c of a guard. Equality atoms exist only transiently while
// building a model; they are expanded to Ge/Le pairs before any zone work.
struct AtomicConstraint {
    ClockId clock = 0;
    Rel rel = Rel::Le;
    int constant = 0;

    bool is_lower() const { return rel == Rel::Ge || rel == Rel::Gt; }
    bool is_upper() const { return rel == Rel::Le || rel == Rel::Lt; }
    bool is_strict() const { return rel == Rel::Lt || rel == Rel::Gt; }

    // Distance-graph edge for this atom: upper bounds constrain 0 -> x,
    // lower bounds constrain x -> 0.
    int edge_from() const { return is_upper() ? 0 : clock; }
    int edge_to() const { return is_upper() ? clock : 0; }
    Weight edge_weight() const
    {
        std::int64_t c = is_upper() ? constant : -constant;
        return is_strict() ? Weight::strict(c) : Weight::weak(c);
    }

    std::string to_string(const std::vector<std::string>& clock_names) const;

    friend bool operator==(const AtomicConstraint&, const AtomicConstraint&) = default;
};

enum class GuardClass { LowerOnly, UpperOnly, Mixed };

// Conjunction of atomic constraints; empty means true.
struct Guard {
    std::vector<AtomicConstraint> atoms;

    bool is_true() const { return atoms.empty(); }
    GuardClass classify() const;
    // Expands every Eq atom into a Ge/Le pair.
    Guard expanded() const;
    std::string to_string(const std::vector<std::string>& clock_names) const;

    friend bool operator==(const Guard&, const Guard&) = default;
};

struct Transition {
    StateId source = 0;
    Guard guard;
    std::vector<ClockId> resets; // sorted, unique
    StateId target = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

// Guard split per the two-stage view of a transition: the lower-bound atoms
// fire first, then the upper-bound atoms together with the resets.
struct DecomposedGuard {
    std::vector<AtomicConstraint> lower;
    std::vector<AtomicConstraint> upper;
    std::vector<ClockId> resets;
};

struct TimedAutomaton {
    int clock_count = 0;
    std::vector<std::string> clock_names; // index 0 unused
    std::vector<std::string> state_names;
    StateId initial = 0;
    std::vector<bool> accepting;
    std::vector<Guard> invariants; // upper-bound atoms only; one per state
    std::vector<Transition> transitions;

    int state_count() const { return static_cast<int>(state_names.size()); }
    bool has_invariants() const;
    std::vector<std::vector<int>> transitions_by_source() const;
    int max_constant() const;

    // Structural sanity: ids in range, invariants upper-only, no Eq atoms
    // left unexpanded. Throws std::invalid_argument on violation.
    void validate() const;
};

// Per-state least-fixpoint LU constants derived from the automaton structure.
struct StaticBounds {
    std::vector<LuBounds> per_state;

    const LuBounds& at(StateId q) const { return per_state[q]; }
};

// Conjoins each transition's guard with its source invariant and with the
// target-invariant atoms whose clock is not reset; clears the invariant map.
// Rejects invariants containing lower-bound atoms.
TimedAutomaton fold_invariants(const TimedAutomaton& ta);

// Syntactic partition of a folded, expanded guard.
DecomposedGuard decompose(const Transition& t);

// Least solution of the static inequalities, by round-robin iteration.
StaticBounds static_bounds(const TimedAutomaton& ta);

} // namespace talu
