#include "talu/newbounds.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "talu/symbolic.hpp"

namespace talu {

namespace {

bool in_resets(const std::vector<ClockId>& resets, ClockId x)
{
    return std::find(resets.begin(), resets.end(), x) != resets.end();
}

// Guard atoms in ascending constant order, ties by clock index, so that when
// several constraints explain the same tightened edge the smallest constant
// is taken.
std::vector<AtomicConstraint> sorted_atoms(const std::vector<AtomicConstraint>& atoms)
{
    std::vector<AtomicConstraint> out = atoms;
    std::sort(out.begin(), out.end(), [](const AtomicConstraint& a, const AtomicConstraint& b) {
        return a.constant != b.constant ? a.constant < b.constant : a.clock < b.clock;
    });
    return out;
}

// Successor bounds restricted to the changed clocks; clocks in R revert to
// the predecessor's own values, which is realized by dropping them here.
BoundsDelta restricted(const LuBounds& lu_succ, const ClockSet& xl, const ClockSet& xu,
                       const std::vector<ClockId>& resets)
{
    const int k = lu_succ.clock_count();
    BoundsDelta d(k);
    for (ClockId x = 1; x <= k; ++x) {
        if (in_resets(resets, x))
            continue;
        if (xl.contains(x) && lu_succ.lower(x) != kNoBound) {
            d.lu.raise_lower(x, lu_succ.lower(x));
            d.changed_lower.insert(x);
        }
        if (xu.contains(x) && lu_succ.upper(x) != kNoBound) {
            d.lu.raise_upper(x, lu_succ.upper(x));
            d.changed_upper.insert(x);
        }
    }
    return d;
}

// Stage over an upper-bound guard, possibly with resets.
BoundsDelta upper_stage(const Zone& z, const std::vector<AtomicConstraint>& upper,
                        const std::vector<ClockId>& resets, const LuBounds& lu_succ,
                        const ClockSet& xl, const ClockSet& xu)
{
    const int k = z.clock_count();
    BoundsDelta out = restricted(lu_succ, xl, xu, resets);
    std::vector<AtomicConstraint> atoms = sorted_atoms(upper);

    if (resets.empty()) {
        auto zu = constrain_all(z, upper);
        if (!zu)
            throw std::logic_error("upper guard stage is empty during propagation");
        // Diagonals between real clocks that tightened and now stick out of
        // the successor abstraction.
        std::vector<std::pair<int, int>> pending;
        for (ClockId x = 1; x <= k; ++x) {
            int ux = lu_succ.upper(x);
            if (ux == kNoBound || z.at(x, 0) < Weight::weak(-ux))
                continue;
            for (ClockId y = 1; y <= k; ++y) {
                if (y == x)
                    continue;
                int ly = lu_succ.lower(y);
                if (ly == kNoBound)
                    continue;
                if (!xu.contains(x) && !xl.contains(y))
                    continue;
                if (!(zu->at(x, y) < z.at(x, y)))
                    continue;
                if (zu->at(x, y) + Weight::strict(-ly) < z.at(x, 0))
                    pending.emplace_back(x, y);
            }
        }
        for (const auto& a : atoms) {
            if (pending.empty())
                break;
            Weight w = a.edge_weight();
            auto explains = [&](const std::pair<int, int>& e) {
                return z.at(e.first, 0) + w + z.at(a.clock, e.second) == zu->at(e.first, e.second);
            };
            if (std::any_of(pending.begin(), pending.end(), explains)) {
                if (out.lu.raise_upper(a.clock, a.constant))
                    out.changed_upper.insert(a.clock);
                std::erase_if(pending, explains);
            }
        }
        if (!pending.empty()) {
            assert(false && "tightened diagonal left unexplained");
            for (const auto& a : atoms)
                if (out.lu.raise_upper(a.clock, a.constant))
                    out.changed_upper.insert(a.clock);
        }
    } else {
        auto zsucc = post_upper_reset(z, upper, resets);
        if (!zsucc)
            throw std::logic_error("upper/reset stage is empty during propagation");
        const ClockId r = resets.front();
        std::vector<int> pending;
        for (ClockId y = 1; y <= k; ++y) {
            if (in_resets(resets, y) || !xl.contains(y))
                continue;
            int ly = lu_succ.lower(y);
            if (ly == kNoBound)
                continue;
            if (zsucc->at(r, y) + Weight::strict(-ly) < Weight::zero())
                pending.push_back(y);
        }
        for (const auto& a : atoms) {
            if (pending.empty())
                break;
            Weight w = a.edge_weight();
            auto explains = [&](int y) { return w + z.at(a.clock, y) == zsucc->at(r, y); };
            if (std::any_of(pending.begin(), pending.end(), explains)) {
                if (out.lu.raise_upper(a.clock, a.constant))
                    out.changed_upper.insert(a.clock);
                std::erase_if(pending, explains);
            }
        }
        if (!pending.empty()) {
            assert(false && "tightened reset row left unexplained");
            for (const auto& a : atoms)
                if (out.lu.raise_upper(a.clock, a.constant))
                    out.changed_upper.insert(a.clock);
        }
    }
    return out;
}

// Stage over a lower-bound guard: decide which constants to take into L by
// looking at the x -> 0 edges that tightened.
BoundsDelta lower_stage(const Zone& z, const Zone& zl, const std::vector<AtomicConstraint>& lower,
                        BoundsDelta succ)
{
    const int k = z.clock_count();
    BoundsDelta out = std::move(succ);
    std::vector<int> pending;
    for (ClockId x = 1; x <= k; ++x) {
        if (!out.changed_upper.contains(x))
            continue;
        int ux = out.lu.upper(x);
        if (ux == kNoBound || z.at(x, 0) < Weight::weak(-ux))
            continue;
        if (zl.at(x, 0) < z.at(x, 0))
            pending.push_back(x);
    }
    for (const auto& a : sorted_atoms(lower)) {
        if (pending.empty())
            break;
        Weight w = a.edge_weight();
        auto explains = [&](int x) { return w + z.at(x, a.clock) == zl.at(x, 0); };
        if (std::any_of(pending.begin(), pending.end(), explains)) {
            if (out.lu.raise_lower(a.clock, a.constant))
                out.changed_lower.insert(a.clock);
            std::erase_if(pending, explains);
        }
    }
    if (!pending.empty()) {
        assert(false && "tightened lower edge left unexplained");
        for (const auto& a : lower)
            if (out.lu.raise_lower(a.clock, a.constant))
                out.changed_lower.insert(a.clock);
    }
    return out;
}

} // namespace

BoundsDelta backward_lu(const Zone& source, const DecomposedGuard& guard,
                        const LuBounds& lu_succ, const ClockSet& changed_lower,
                        const ClockSet& changed_upper)
{
    auto zl = constrain_all(source, guard.lower);
    if (!zl)
        throw std::logic_error("backward_lu: lower stage empty, transition is disabled");

    BoundsDelta mid(source.clock_count());
    if (guard.upper.empty())
        mid = restricted(lu_succ, changed_lower, changed_upper, guard.resets);
    else
        mid = upper_stage(*zl, guard.upper, guard.resets, lu_succ, changed_lower, changed_upper);

    if (guard.lower.empty())
        return mid;
    return lower_stage(source, *zl, guard.lower, std::move(mid));
}

} // namespace talu
