#include "talu/zone.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace talu {

Zone Zone::top(int clock_count)
{
    Zone z(clock_count + 1, Weight::infinity());
    for (int i = 0; i <= clock_count; ++i)
        z.set(i, i, Weight::zero());
    return z;
}

Zone Zone::origin(int clock_count)
{
    Zone z(clock_count + 1, Weight::zero());
    return z;
}

Zone Zone::initial(int clock_count) { return origin(clock_count).elapsed(); }

std::optional<Zone> Zone::canonical() const
{
    Zone z = *this;
    const int n = dim_;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            Weight ik = z.at(i, k);
            if (ik.is_infinite())
                continue;
            for (int j = 0; j < n; ++j) {
                Weight through = ik + z.at(k, j);
                if (through < z.at(i, j))
                    z.set(i, j, through);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (z.at(i, i) < Weight::zero())
            return std::nullopt;
    for (int i = 0; i < n; ++i)
        z.set(i, i, Weight::zero());
    return z;
}

std::optional<Zone> Zone::tightened(int from, int to, Weight w) const
{
    if (w >= at(from, to))
        return *this;
    if (at(to, from) + w < Weight::zero())
        return std::nullopt;
    Zone z = *this;
    z.set(from, to, w);
    const int n = dim_;
    for (int i = 0; i < n; ++i) {
        Weight head = z.at(i, from);
        if (head.is_infinite())
            continue;
        Weight head_w = head + w;
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            Weight through = head_w + z.at(to, j);
            if (through < z.at(i, j))
                z.set(i, j, through);
        }
    }
    return z;
}

Zone Zone::reset(const std::vector<ClockId>& clocks) const
{
    Zone z = *this;
    for (ClockId r : clocks) {
        for (int j = 0; j < dim_; ++j) {
            z.set(r, j, z.at(0, j));
            z.set(j, r, z.at(j, 0));
        }
        z.set(r, 0, Weight::zero());
        z.set(0, r, Weight::zero());
        z.set(r, r, Weight::zero());
    }
    // A second pass aligns the reset clocks with each other.
    for (ClockId r : clocks)
        for (ClockId s : clocks) {
            if (r != s) {
                z.set(r, s, Weight::zero());
                z.set(s, r, Weight::zero());
            }
        }
    return z;
}

Zone Zone::elapsed() const
{
    Zone z = *this;
    for (int x = 1; x < dim_; ++x)
        z.set(0, x, Weight::infinity());
    return z;
}

bool Zone::is_time_elapsed() const
{
    for (int x = 1; x < dim_; ++x)
        if (!at(0, x).is_infinite())
            return false;
    return true;
}

Zone Zone::doubled() const
{
    Zone z = *this;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            Weight w = at(i, j);
            if (!w.is_infinite())
                z.set(i, j, w.is_weak() ? Weight::weak(2 * w.value())
                                        : Weight::strict(2 * w.value()));
        }
    return z;
}

std::string Zone::to_string() const
{
    std::ostringstream oss;
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j)
            oss << at(i, j).to_string() << (j + 1 < dim_ ? " " : "");
        oss << "\n";
    }
    return oss.str();
}

bool zone_subset(const Zone& z1, const Zone& z2)
{
    if (z1.dim() != z2.dim())
        throw std::invalid_argument("zone_subset: dimension mismatch");
    for (int i = 0; i < z1.dim(); ++i)
        for (int j = 0; j < z1.dim(); ++j)
            if (!(z1.at(i, j) <= z2.at(i, j)))
                return false;
    return true;
}

Zone min_graph(const Zone& g1, const Zone& g2)
{
    if (g1.dim() != g2.dim())
        throw std::invalid_argument("min_graph: dimension mismatch");
    Zone z = g1;
    for (int i = 0; i < z.dim(); ++i)
        for (int j = 0; j < z.dim(); ++j)
            if (g2.at(i, j) < z.at(i, j))
                z.set(i, j, g2.at(i, j));
    return z;
}

std::optional<AluWitness> alu_witness(const Zone& z, const Zone& zprime, const LuBounds& lu)
{
    if (z.dim() != zprime.dim())
        throw std::invalid_argument("alu_subset: dimension mismatch");
    const int k = z.clock_count();
    for (int x = 0; x <= k; ++x) {
        // U and L of the reference clock are 0.
        int ux = (x == 0) ? 0 : lu.upper(x);
        if (ux == kNoBound)
            continue; // first conjunct cannot hold
        if (z.at(x, 0) < Weight::weak(-ux))
            continue;
        for (int y = 0; y <= k; ++y) {
            if (y == x)
                continue;
            int ly = (y == 0) ? 0 : lu.lower(y);
            if (ly == kNoBound)
                continue; // third conjunct cannot hold
            if (!(zprime.at(x, y) < z.at(x, y)))
                continue;
            if (zprime.at(x, y) + Weight::strict(-ly) < z.at(x, 0))
                return AluWitness{x, y};
        }
    }
    return std::nullopt;
}

bool alu_subset(const Zone& z, const Zone& zprime, const LuBounds& lu)
{
    return !alu_witness(z, zprime, lu).has_value();
}

bool zone_member(const HalfValuation& v, const Zone& z)
{
    const int k = z.clock_count();
    Zone d = z.doubled();
    for (ClockId x = 0; x <= k; ++x)
        for (ClockId y = 0; y <= k; ++y) {
            if (x == y)
                continue;
            std::int64_t diff = v.twice[y] - v.twice[x];
            Weight w = d.at(x, y);
            if (w.is_infinite())
                continue;
            if (diff > w.value() || (diff == w.value() && w.is_strict()))
                return false;
        }
    return true;
}

bool alu_member(const HalfValuation& v, const Zone& z, const LuBounds& lu)
{
    const int k = z.clock_count();
    std::optional<Zone> d = z.doubled();
    for (ClockId x = 1; x <= k && d; ++x) {
        std::int64_t tv = v.twice[x];
        int ux = lu.upper(x);
        int lx = lu.lower(x);
        if (ux != kNoBound && tv <= 2 * std::int64_t{ux})
            d = d->tightened(0, x, Weight::weak(tv));
        if (!d)
            break;
        if (lx != kNoBound) {
            if (tv <= 2 * std::int64_t{lx})
                d = d->tightened(x, 0, Weight::weak(-tv));
            else
                d = d->tightened(x, 0, Weight::strict(-2 * std::int64_t{lx}));
        }
    }
    return d.has_value();
}

} // namespace talu
