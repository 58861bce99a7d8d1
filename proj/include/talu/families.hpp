#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "talu/automaton.hpp"

namespace talu {

// The three benchmark families: a product of two reset chains (x-clocks and
// y-clocks) with a guarded chain that can only start once both reset chains
// finished. They differ in the guard of the k-th guarded step.
enum class Family {
    D,            // x_k == 1 and y_k == 1
    DPrime,       // x_k == 1 and y_k == 2
    DDoublePrime  // 0 < x_k <= 1 and 1 < y_k <= 2
};

struct FamilySpec {
    Family family;
    int n;
};

// Accepts "D:7", "Dprime:3", "Ddoubleprime:7".
std::optional<FamilySpec> parse_family(const std::string& text);

std::string to_string(Family family);

// Flat product automaton with (n+1)^2 + n states and 2n clocks, no accepting
// state.
TimedAutomaton generate(const FamilySpec& spec);

struct RandomParams {
    int states = 5;
    int clocks = 3;
    int transitions = 8;
    int max_const = 5;
    double accept_prob = 0.15;
};

// Deterministic in the seed; guards are conjunctions of at most two atoms.
TimedAutomaton random_ta(std::uint32_t seed, const RandomParams& params);

} // namespace talu
