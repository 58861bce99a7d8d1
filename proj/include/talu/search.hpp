#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "talu/automaton.hpp"
#include "talu/bounds.hpp"
#include "talu/zone.hpp"

namespace talu {

enum class SearchMode {
    LazyDisabled, // bounds seeded by disabled transitions, propagated backwards
    StaticAlu,    // per-state bounds fixed by static analysis, no propagation
    OtfPropagate  // bounds seeded by every explored guard (approximate otf)
};

enum class SearchOrder { Dfs, Bfs };

std::string to_string(SearchMode mode);
std::string to_string(SearchOrder order);
std::optional<SearchMode> parse_mode(const std::string& s);
std::optional<SearchOrder> parse_order(const std::string& s);

struct TimeoutError : std::runtime_error {
    TimeoutError() : std::runtime_error("time limit exceeded") {}
};

struct RunStats {
    std::int64_t nodes_visited = 0;
    std::int64_t nodes_non_tentative = 0;
    std::int64_t nodes_tentative = 0;
    std::int64_t propagations = 0;
    std::int64_t resolutions_reopened = 0;
    double wall_ms = 0.0;
};

enum class NodeStatus { Waiting, Active, Tentative };

// Atom recorded when a disabled transition seeded a bound; evidence for the
// I1 audit.
struct DisabledAtomRecord {
    int transition_index;
    AtomicConstraint atom;
};

struct AsgNode {
    int id = -1;
    StateId state = 0;
    Zone zone;
    LuBounds lu;
    NodeStatus status = NodeStatus::Waiting;
    int covered_by = -1;
    int parent = -1;
    int parent_transition = -1;
    // Outgoing propagation edges: when this node's bounds change, push them
    // backwards to `first` across transition `second`.
    std::vector<std::pair<int, int>> prop_edges;
    // Nodes currently tentative with respect to this one.
    std::vector<int> covered_nodes;
    std::vector<DisabledAtomRecord> disabled_atoms;
    bool removed = false;
    bool in_waiting = false;
};

struct Asg {
    int root = -1;
    std::vector<AsgNode> nodes;

    const AsgNode& node(int id) const { return nodes[id]; }
};

struct TraceStep {
    int transition_index;
    Zone zone; // zone of the node the step enters
};

struct RunResult {
    bool reachable = false;
    std::vector<TraceStep> witness;
    RunStats stats;
    Asg graph;
};

// Explores the reachability space of a folded automaton, maintaining the
// adaptive simulation graph for the chosen mode. Throws TimeoutError when the
// optional deadline passes.
RunResult run_reachability(const TimedAutomaton& ta, SearchMode mode, SearchOrder order,
                           std::optional<double> time_limit_seconds = std::nullopt);

// Replays a witness with exact successor computation from the initial zone;
// true iff every step stays non-empty, ends in an accepting state, and
// matches the recorded zones.
bool replay_witness(const TimedAutomaton& ta, const std::vector<TraceStep>& witness);

} // namespace talu
