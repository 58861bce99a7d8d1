#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace talu {

using ClockId = int; // 1..k; 0 is the reference clock
using StateId = int;

// Sentinel for "no constraint seen": below every natural number.
inline constexpr int kNoBound = std::numeric_limits<int>::min();

// Set of clock indices, used to track which L/U entries changed during
// propagation.
class ClockSet {
public:
    ClockSet() = default;
    explicit ClockSet(int clock_count) : words_((clock_count + 64) / 64, 0) {}

    bool contains(ClockId x) const
    {
        std::size_t w = static_cast<std::size_t>(x) / 64;
        return w < words_.size() && (words_[w] >> (x % 64)) & 1;
    }

    void insert(ClockId x)
    {
        std::size_t w = static_cast<std::size_t>(x) / 64;
        if (w >= words_.size())
            words_.resize(w + 1, 0);
        words_[w] |= std::uint64_t{1} << (x % 64);
    }

    bool empty() const
    {
        for (auto w : words_)
            if (w != 0)
                return false;
        return true;
    }

    void merge(const ClockSet& other)
    {
        if (other.words_.size() > words_.size())
            words_.resize(other.words_.size(), 0);
        for (std::size_t i = 0; i < other.words_.size(); ++i)
            words_[i] |= other.words_[i];
    }

    std::vector<ClockId> to_vector() const
    {
        std::vector<ClockId> out;
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (int b = 0; b < 64; ++b)
                if ((words_[w] >> b) & 1)
                    out.push_back(static_cast<ClockId>(w * 64 + b));
        return out;
    }

private:
    std::vector<std::uint64_t> words_;
};

// Per-clock abstraction parameters L and U. An entry is either a natural
// number or kNoBound. Indices 1..k; slot 0 exists but stays at kNoBound.
class LuBounds {
public:
    LuBounds() = default;
    explicit LuBounds(int clock_count)
        : lower_(clock_count + 1, kNoBound), upper_(clock_count + 1, kNoBound)
    {
    }

    int clock_count() const { return static_cast<int>(lower_.size()) - 1; }

    int lower(ClockId x) const { return lower_[x]; }
    int upper(ClockId x) const { return upper_[x]; }

    bool raise_lower(ClockId x, int c)
    {
        if (c <= lower_[x])
            return false;
        lower_[x] = c;
        return true;
    }

    bool raise_upper(ClockId x, int c)
    {
        if (c <= upper_[x])
            return false;
        upper_[x] = c;
        return true;
    }

    // Pointwise max with `other`; reports which entries grew.
    void merge(const LuBounds& other, ClockSet* changed_lower, ClockSet* changed_upper)
    {
        for (ClockId x = 1; x <= clock_count(); ++x) {
            if (raise_lower(x, other.lower_[x]) && changed_lower)
                changed_lower->insert(x);
            if (raise_upper(x, other.upper_[x]) && changed_upper)
                changed_upper->insert(x);
        }
    }

    void clear()
    {
        lower_.assign(lower_.size(), kNoBound);
        upper_.assign(upper_.size(), kNoBound);
    }

    bool all_unbounded() const
    {
        for (ClockId x = 1; x <= clock_count(); ++x)
            if (lower_[x] != kNoBound || upper_[x] != kNoBound)
                return false;
        return true;
    }

    // true iff every entry of this is <= the corresponding entry of other.
    bool dominated_by(const LuBounds& other) const
    {
        for (ClockId x = 1; x <= clock_count(); ++x)
            if (lower_[x] > other.lower_[x] || upper_[x] > other.upper_[x])
                return false;
        return true;
    }

    friend bool operator==(const LuBounds& a, const LuBounds& b)
    {
        return a.lower_ == b.lower_ && a.upper_ == b.upper_;
    }

    std::string to_string() const
    {
        std::string s = "L:[";
        for (ClockId x = 1; x <= clock_count(); ++x)
            s += (x > 1 ? "," : "") + (lower_[x] == kNoBound ? "-inf" : std::to_string(lower_[x]));
        s += "] U:[";
        for (ClockId x = 1; x <= clock_count(); ++x)
            s += (x > 1 ? "," : "") + (upper_[x] == kNoBound ? "-inf" : std::to_string(upper_[x]));
        return s + "]";
    }

private:
    std::vector<int> lower_;
    std::vector<int> upper_;
};

} // namespace talu
