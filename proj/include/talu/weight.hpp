#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace talu {

// A bound of the form (<, c) or (<=, c) on a clock difference, plus the
// infinite bound (<, inf). Packed into a single integer as 2*c + weak-bit so
// that the natural bound order ((<,c) below (<=,c) below (<,c+1)) coincides
// with integer comparison.
class Weight {
public:
    constexpr Weight() : raw_(kInfRaw) {}

    static constexpr Weight strict(std::int64_t value) { return Weight(2 * value); }
    static constexpr Weight weak(std::int64_t value) { return Weight(2 * value + 1); }
    static constexpr Weight infinity() { return Weight(kInfRaw); }
    static constexpr Weight zero() { return weak(0); }

    constexpr bool is_infinite() const { return raw_ == kInfRaw; }
    constexpr bool is_strict() const { return (raw_ & 1) == 0; }
    constexpr bool is_weak() const { return (raw_ & 1) != 0; }

    // Finite bound constant; must not be called on the infinite weight.
    constexpr std::int64_t value() const { return raw_ >> 1; }

    friend constexpr bool operator==(Weight a, Weight b) { return a.raw_ == b.raw_; }
    friend constexpr bool operator!=(Weight a, Weight b) { return a.raw_ != b.raw_; }
    friend constexpr bool operator<(Weight a, Weight b) { return a.raw_ < b.raw_; }
    friend constexpr bool operator<=(Weight a, Weight b) { return a.raw_ <= b.raw_; }
    friend constexpr bool operator>(Weight a, Weight b) { return a.raw_ > b.raw_; }
    friend constexpr bool operator>=(Weight a, Weight b) { return a.raw_ >= b.raw_; }

    // Path concatenation: constants add, result is weak iff both are weak,
    // infinity absorbs.
    friend Weight operator+(Weight a, Weight b)
    {
        if (a.is_infinite() || b.is_infinite())
            return infinity();
        if (a.raw_ > kMaxRaw - b.raw_ || a.raw_ < kMinRaw - b.raw_)
            throw std::overflow_error("weight addition overflow");
        return Weight(a.raw_ + b.raw_ - ((a.raw_ | b.raw_) & 1));
    }

    std::string to_string() const
    {
        if (is_infinite())
            return "(<,inf)";
        return std::string(is_strict() ? "(<," : "(<=,") + std::to_string(value()) + ")";
    }

private:
    explicit constexpr Weight(std::int64_t raw) : raw_(raw) {}

    static constexpr std::int64_t kInfRaw = std::int64_t{1} << 62;
    static constexpr std::int64_t kMaxRaw = std::int64_t{1} << 44;
    static constexpr std::int64_t kMinRaw = -kMaxRaw;

    std::int64_t raw_;
};

} // namespace talu
