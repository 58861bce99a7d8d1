#include "talu/families.hpp"

#include <random>
#include <stdexcept>

namespace talu {

std::string to_string(Family family)
{
    switch (family) {
    case Family::D: return "D";
    case Family::DPrime: return "Dprime";
    case Family::DDoublePrime: return "Ddoubleprime";
    }
    return "?";
}

std::optional<FamilySpec> parse_family(const std::string& text)
{
    auto colon = text.find(':');
    if (colon == std::string::npos)
        return std::nullopt;
    std::string name = text.substr(0, colon);
    int n;
    try {
        n = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (n < 1)
        return std::nullopt;
    if (name == "D")
        return FamilySpec{Family::D, n};
    if (name == "Dprime")
        return FamilySpec{Family::DPrime, n};
    if (name == "Ddoubleprime")
        return FamilySpec{Family::DDoublePrime, n};
    return std::nullopt;
}

namespace {

Guard step_guard(Family family, ClockId xk, ClockId yk)
{
    Guard g;
    switch (family) {
    case Family::D:
        g.atoms = {{xk, Rel::Ge, 1}, {xk, Rel::Le, 1}, {yk, Rel::Ge, 1}, {yk, Rel::Le, 1}};
        break;
    case Family::DPrime:
        g.atoms = {{xk, Rel::Ge, 1}, {xk, Rel::Le, 1}, {yk, Rel::Ge, 2}, {yk, Rel::Le, 2}};
        break;
    case Family::DDoublePrime:
        g.atoms = {{xk, Rel::Gt, 0}, {xk, Rel::Le, 1}, {yk, Rel::Gt, 1}, {yk, Rel::Le, 2}};
        break;
    }
    return g;
}

} // namespace

TimedAutomaton generate(const FamilySpec& spec)
{
    const int n = spec.n;
    if (n < 1)
        throw std::invalid_argument("family size must be at least 1");

    TimedAutomaton ta;
    ta.clock_count = 2 * n;
    ta.clock_names.assign(1, "");
    for (int k = 1; k <= n; ++k)
        ta.clock_names.push_back("x" + std::to_string(k));
    for (int k = 1; k <= n; ++k)
        ta.clock_names.push_back("y" + std::to_string(k));
    auto xc = [&](int k) { return static_cast<ClockId>(k); };
    auto yc = [&](int k) { return static_cast<ClockId>(n + k); };

    // States (a_i, a_j, b_0) for all i, j and (a_n, a_n, b_k) for k >= 1.
    std::vector<std::vector<StateId>> grid(n + 1, std::vector<StateId>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            grid[i][j] = static_cast<StateId>(ta.state_names.size());
            ta.state_names.push_back("a" + std::to_string(i) + "_a" + std::to_string(j) + "_b0");
        }
    std::vector<StateId> chain(n + 1);
    chain[0] = grid[n][n];
    for (int k = 1; k <= n; ++k) {
        chain[k] = static_cast<StateId>(ta.state_names.size());
        ta.state_names.push_back("a" + std::to_string(n) + "_a" + std::to_string(n) + "_b"
                                 + std::to_string(k));
    }
    ta.initial = grid[0][0];
    ta.accepting.assign(ta.state_count(), false);
    ta.invariants.assign(ta.state_count(), Guard{});

    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i < n)
                ta.transitions.push_back({grid[i][j], Guard{}, {xc(i + 1)}, grid[i + 1][j]});
            if (j < n)
                ta.transitions.push_back({grid[i][j], Guard{}, {yc(j + 1)}, grid[i][j + 1]});
        }
    for (int k = 1; k <= n; ++k)
        ta.transitions.push_back(
            {chain[k - 1], step_guard(spec.family, xc(k), yc(k)), {}, chain[k]});

    ta.validate();
    return ta;
}

TimedAutomaton random_ta(std::uint32_t seed, const RandomParams& params)
{
    if (params.states < 1 || params.clocks < 1 || params.transitions < 0
        || params.max_const < 0)
        throw std::invalid_argument("random_ta: parameters must be positive");

    std::mt19937 gen(seed);
    // Modulo draws keep the stream identical across standard libraries.
    auto draw = [&](int lo, int hi) { return lo + static_cast<int>(gen() % (hi - lo + 1)); };
    auto chance = [&](double p) { return gen() % 10000 < static_cast<std::uint32_t>(p * 10000); };

    TimedAutomaton ta;
    ta.clock_count = params.clocks;
    ta.clock_names.assign(1, "");
    for (int c = 1; c <= params.clocks; ++c)
        ta.clock_names.push_back("c" + std::to_string(c));
    for (int q = 0; q < params.states; ++q)
        ta.state_names.push_back("q" + std::to_string(q));
    ta.initial = 0;
    ta.accepting.assign(params.states, false);
    for (int q = 0; q < params.states; ++q)
        ta.accepting[q] = chance(params.accept_prob);
    ta.invariants.assign(params.states, Guard{});

    for (int i = 0; i < params.transitions; ++i) {
        Transition t;
        t.source = draw(0, params.states - 1);
        t.target = draw(0, params.states - 1);
        int atom_count = draw(0, 2);
        for (int a = 0; a < atom_count; ++a) {
            AtomicConstraint atom;
            atom.clock = draw(1, params.clocks);
            switch (draw(0, 4)) {
            case 0: atom.rel = Rel::Lt; break;
            case 1: atom.rel = Rel::Le; break;
            case 2: atom.rel = Rel::Eq; break;
            case 3: atom.rel = Rel::Ge; break;
            default: atom.rel = Rel::Gt; break;
            }
            atom.constant = draw(0, params.max_const);
            if (atom.rel == Rel::Lt && atom.constant == 0)
                atom.constant = 1;
            if (atom.rel == Rel::Eq) {
                t.guard.atoms.push_back({atom.clock, Rel::Ge, atom.constant});
                t.guard.atoms.push_back({atom.clock, Rel::Le, atom.constant});
            } else {
                t.guard.atoms.push_back(atom);
            }
        }
        for (ClockId c = 1; c <= params.clocks; ++c)
            if (chance(0.25))
                t.resets.push_back(c);
        ta.transitions.push_back(std::move(t));
    }
    ta.validate();
    return ta;
}

} // namespace talu
