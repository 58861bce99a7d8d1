#pragma once

#include <map>
#include <string>
#include <vector>

#include "talu/search.hpp"

namespace talu {

struct AuditViolation {
    std::string invariant; // G1, G2, G3, I1, I2, I3, DOM, WIT
    int node = -1;
    int other = -1;
    std::string detail;
};

enum class I2Status { Pass, SampledSkip };

struct AuditReport {
    std::int64_t checks_run = 0;
    std::map<std::string, std::int64_t> checks_by_invariant;
    I2Status i2_status = I2Status::SampledSkip;
    std::vector<AuditViolation> violations;

    bool passed() const { return violations.empty(); }
};

// Post-hoc verification of a completed unreachable run's graph against the
// folded automaton it was built from. Structural conditions are checked
// exactly; the successor-inclusion invariant I2 is checked by half-integer
// grid sampling when the instance fits the oracle budget (at most 4 clocks
// and guard constants at most 8) and reported as sampled-skip otherwise.
AuditReport audit_asg(const Asg& graph, const TimedAutomaton& ta);

struct DifferCase {
    std::uint32_t seed = 0;
    std::string kind; // "verdict-mismatch" or "witness-replay"
    std::string detail;
    std::string minimized_model;
};

struct DifferReport {
    int automata_checked = 0;
    int runs = 0;
    std::vector<DifferCase> failures;

    bool passed() const { return failures.empty(); }
};

// Runs every mode under both orders on each automaton and compares verdicts;
// reachable verdicts must replay. Disagreements are shrunk greedily before
// being reported.
DifferReport differ(const std::vector<std::pair<std::uint32_t, TimedAutomaton>>& corpus,
                    double per_run_time_limit_seconds = 30.0);

} // namespace talu
