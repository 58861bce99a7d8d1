#pragma once

#include <optional>
#include <string>
#include <vector>

#include "talu/bounds.hpp"
#include "talu/weight.hpp"

namespace talu {

// A zone represented as a distance graph over the clocks plus the reference
// clock 0. The entry at(x, y) is the weight of the edge x -> y and bounds
// y - x. A zone object is a plain weight matrix; canonical form (shortest-path
// closure) is established by canonical()/tighten and is a precondition of the
// query operations.
class Zone {
public:
    Zone() = default;

    // All edges infinite except the diagonal: no constraints at all.
    static Zone top(int clock_count);
    // Every clock equal to 0.
    static Zone origin(int clock_count);
    // Time-elapsed origin: all clocks equal and nonnegative.
    static Zone initial(int clock_count);

    int clock_count() const { return dim_ - 1; }
    int dim() const { return dim_; }

    Weight at(int from, int to) const { return m_[from * dim_ + to]; }
    void set(int from, int to, Weight w) { m_[from * dim_ + to] = w; }

    // Shortest-path closure; nullopt iff the constraints are contradictory.
    std::optional<Zone> canonical() const;

    // Tighten one edge and re-close incrementally. Requires *this canonical;
    // nullopt iff the tightening empties the zone.
    std::optional<Zone> tightened(int from, int to, Weight w) const;

    // Zone after resetting the given clocks to 0. Requires canonical, stays
    // canonical.
    Zone reset(const std::vector<ClockId>& clocks) const;

    // Closure under time successors: drops all upper bounds. Requires
    // canonical, stays canonical.
    Zone elapsed() const;

    bool is_time_elapsed() const;

    // All finite weights doubled; used by the half-integer membership oracle.
    Zone doubled() const;

    friend bool operator==(const Zone& a, const Zone& b) { return a.m_ == b.m_; }

    std::string to_string() const;

private:
    Zone(int dim, Weight fill) : dim_(dim), m_(dim * dim, fill) {}

    int dim_ = 0;
    std::vector<Weight> m_;
};

// z1 entirely below z2, entrywise; equivalent to set inclusion on canonical
// non-empty zones.
bool zone_subset(const Zone& z1, const Zone& z2);

// Entrywise minimum; represents the intersection, possibly non-canonical.
Zone min_graph(const Zone& g1, const Zone& g2);

// Inclusion test z subset-of aLU(zprime) for the bounds attached to zprime.
// Both zones canonical and non-empty.
bool alu_subset(const Zone& z, const Zone& zprime, const LuBounds& lu);

// Witness pair (x, y) for a failed alu_subset, in the order the test scans.
struct AluWitness {
    int x;
    int y;
};
std::optional<AluWitness> alu_witness(const Zone& z, const Zone& zprime, const LuBounds& lu);

// Clock valuation on the half-integer grid, stored as doubled values.
// Index 0 is the reference clock and stays 0.
struct HalfValuation {
    std::vector<std::int64_t> twice;

    explicit HalfValuation(int clock_count) : twice(clock_count + 1, 0) {}

    int clock_count() const { return static_cast<int>(twice.size()) - 1; }
};

// true iff v belongs to z (z canonical non-empty).
bool zone_member(const HalfValuation& v, const Zone& z);

// Membership oracle: true iff some v' in z simulates v under the LU-preorder,
// i.e. v is in aLU(z). Exact, integer-only via doubled constants.
bool alu_member(const HalfValuation& v, const Zone& z, const LuBounds& lu);

} // namespace talu
