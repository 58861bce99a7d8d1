#include "talu/automaton.hpp"

#include <algorithm>
#include <stdexcept>

namespace talu {

namespace {

const char* rel_text(Rel r)
{
    switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "==";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    }
    return "?";
}

} // namespace

std::string AtomicConstraint::to_string(const std::vector<std::string>& clock_names) const
{
    std::string name = (clock < static_cast<int>(clock_names.size()) && !clock_names[clock].empty())
        ? clock_names[clock]
        : "x" + std::to_string(clock);
    return name + rel_text(rel) + std::to_string(constant);
}

GuardClass Guard::classify() const
{
    bool lower = false, upper = false;
    for (const auto& a : atoms) {
        if (a.rel == Rel::Eq)
            return GuardClass::Mixed;
        lower = lower || a.is_lower();
        upper = upper || a.is_upper();
    }
    if (lower && !upper)
        return GuardClass::LowerOnly;
    if (upper && !lower)
        return GuardClass::UpperOnly;
    return GuardClass::Mixed;
}

Guard Guard::expanded() const
{
    Guard g;
    for (const auto& a : atoms) {
        if (a.rel == Rel::Eq) {
            g.atoms.push_back({a.clock, Rel::Ge, a.constant});
            g.atoms.push_back({a.clock, Rel::Le, a.constant});
        } else {
            g.atoms.push_back(a);
        }
    }
    return g;
}

std::string Guard::to_string(const std::vector<std::string>& clock_names) const
{
    if (atoms.empty())
        return "";
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0)
            s += " && ";
        s += atoms[i].to_string(clock_names);
    }
    return s;
}

bool TimedAutomaton::has_invariants() const
{
    for (const auto& inv : invariants)
        if (!inv.is_true())
            return true;
    return false;
}

std::vector<std::vector<int>> TimedAutomaton::transitions_by_source() const
{
    std::vector<std::vector<int>> out(state_count());
    for (std::size_t i = 0; i < transitions.size(); ++i)
        out[transitions[i].source].push_back(static_cast<int>(i));
    return out;
}

int TimedAutomaton::max_constant() const
{
    int c = 0;
    for (const auto& t : transitions)
        for (const auto& a : t.guard.atoms)
            c = std::max(c, a.constant);
    for (const auto& inv : invariants)
        for (const auto& a : inv.atoms)
            c = std::max(c, a.constant);
    return c;
}

void TimedAutomaton::validate() const
{
    if (state_count() == 0)
        throw std::invalid_argument("automaton has no states");
    if (initial < 0 || initial >= state_count())
        throw std::invalid_argument("initial state out of range");
    if (static_cast<int>(accepting.size()) != state_count()
        || static_cast<int>(invariants.size()) != state_count())
        throw std::invalid_argument("per-state tables have wrong size");
    auto check_atom = [&](const AtomicConstraint& a) {
        if (a.clock < 1 || a.clock > clock_count)
            throw std::invalid_argument("clock id out of range");
        if (a.constant < 0)
            throw std::invalid_argument("negative guard constant");
    };
    for (const auto& t : transitions) {
        if (t.source < 0 || t.source >= state_count() || t.target < 0
            || t.target >= state_count())
            throw std::invalid_argument("transition endpoint out of range");
        for (const auto& a : t.guard.atoms)
            check_atom(a);
        for (ClockId r : t.resets)
            if (r < 1 || r > clock_count)
                throw std::invalid_argument("reset clock out of range");
    }
    for (const auto& inv : invariants)
        for (const auto& a : inv.atoms) {
            check_atom(a);
            if (!a.is_upper())
                throw std::invalid_argument("invariant contains a lower-bound atom");
        }
}

TimedAutomaton fold_invariants(const TimedAutomaton& ta)
{
    for (const auto& inv : ta.invariants)
        for (const auto& a : inv.atoms)
            if (!a.is_upper())
                throw std::invalid_argument("invariant contains a lower-bound atom");

    TimedAutomaton out = ta;
    for (auto& t : out.transitions) {
        Guard g = t.guard.expanded();
        for (const auto& a : ta.invariants[t.source].atoms)
            g.atoms.push_back(a);
        for (const auto& a : ta.invariants[t.target].atoms)
            if (std::find(t.resets.begin(), t.resets.end(), a.clock) == t.resets.end())
                g.atoms.push_back(a);
        t.guard = g;
    }
    for (auto& inv : out.invariants)
        inv.atoms.clear();
    return out;
}

DecomposedGuard decompose(const Transition& t)
{
    DecomposedGuard d;
    for (const auto& a : t.guard.expanded().atoms) {
        if (a.is_lower())
            d.lower.push_back(a);
        else
            d.upper.push_back(a);
    }
    d.resets = t.resets;
    return d;
}

StaticBounds static_bounds(const TimedAutomaton& ta)
{
    StaticBounds sb;
    sb.per_state.assign(ta.state_count(), LuBounds(ta.clock_count));
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : ta.transitions) {
            LuBounds& src = sb.per_state[t.source];
            for (const auto& a : t.guard.expanded().atoms) {
                if (a.is_lower())
                    changed |= src.raise_lower(a.clock, a.constant);
                else
                    changed |= src.raise_upper(a.clock, a.constant);
            }
            const LuBounds& tgt = sb.per_state[t.target];
            for (ClockId x = 1; x <= ta.clock_count; ++x) {
                if (std::find(t.resets.begin(), t.resets.end(), x) != t.resets.end())
                    continue;
                if (tgt.lower(x) != kNoBound)
                    changed |= src.raise_lower(x, tgt.lower(x));
                if (tgt.upper(x) != kNoBound)
                    changed |= src.raise_upper(x, tgt.upper(x));
            }
        }
    }
    return sb;
}

} // namespace talu
