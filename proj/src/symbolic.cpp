#include "talu/symbolic.hpp"

namespace talu {

std::optional<Zone> constrain(const Zone& z, const AtomicConstraint& atom)
{
    return z.tightened(atom.edge_from(), atom.edge_to(), atom.edge_weight());
}

std::optional<Zone> constrain_all(const Zone& z, std::span<const AtomicConstraint> atoms)
{
    std::optional<Zone> cur = z;
    for (const auto& a : atoms) {
        cur = constrain(*cur, a);
        if (!cur)
            return std::nullopt;
    }
    return cur;
}

std::optional<Zone> post(const Zone& z, const Transition& t)
{
    Guard g = t.guard.expanded();
    std::optional<Zone> cur = constrain_all(z, g.atoms);
    if (!cur)
        return std::nullopt;
    return cur->reset(t.resets).elapsed();
}

std::optional<Zone> post_upper_reset(const Zone& z, std::span<const AtomicConstraint> upper,
                                     const std::vector<ClockId>& resets)
{
    std::optional<Zone> cur = constrain_all(z, upper);
    if (!cur)
        return std::nullopt;
    return cur->reset(resets).elapsed();
}

} // namespace talu
