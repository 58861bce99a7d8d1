#include "talu/audit.hpp"

#include <algorithm>
#include <set>

#include "talu/model_io.hpp"
#include "talu/symbolic.hpp"

namespace talu {

namespace {

constexpr int kI2MaxClocks = 4;
constexpr int kI2MaxConstant = 8;

bool half_point_satisfies(const HalfValuation& v, const Guard& g)
{
    for (const auto& a : g.expanded().atoms) {
        std::int64_t tv = v.twice[a.clock];
        std::int64_t tc = 2 * std::int64_t{a.constant};
        bool ok = true;
        switch (a.rel) {
        case Rel::Lt: ok = tv < tc; break;
        case Rel::Le: ok = tv <= tc; break;
        case Rel::Ge: ok = tv >= tc; break;
        case Rel::Gt: ok = tv > tc; break;
        case Rel::Eq: ok = tv == tc; break;
        }
        if (!ok)
            return false;
    }
    return true;
}

HalfValuation reset_point(const HalfValuation& v, const std::vector<ClockId>& resets)
{
    HalfValuation out = v;
    for (ClockId r : resets)
        out.twice[r] = 0;
    return out;
}

// Half-integer grid 0, 1/2, ..., max_const + 2 plus one value above every
// bound, in doubled representation.
std::vector<std::int64_t> grid_values(int max_const)
{
    std::vector<std::int64_t> vals;
    for (std::int64_t t = 0; t <= 2 * (max_const + 2); ++t)
        vals.push_back(t);
    vals.push_back(2 * (max_const + 16));
    return vals;
}

class AsgAuditor {
public:
    AsgAuditor(const Asg& graph, const TimedAutomaton& ta)
        : g_(graph), ta_(ta), by_source_(ta.transitions_by_source()), statics_(static_bounds(ta)),
          nodes_by_state_(ta.state_count())
    {
        for (const auto& t : ta_.transitions)
            decomposed_.push_back(decompose(t));
        for (const auto& n : g_.nodes)
            if (!n.removed)
                nodes_by_state_[n.state].push_back(n.id);
    }

    AuditReport run()
    {
        check_g1();
        for (const auto& n : g_.nodes) {
            if (n.removed)
                continue;
            if (n.status == NodeStatus::Active)
                check_active(n);
            else if (n.status == NodeStatus::Tentative)
                check_tentative(n);
            check_dom(n);
        }
        check_i2();
        return std::move(report_);
    }

private:
    void violation(const std::string& inv, int node, int other, const std::string& detail)
    {
        report_.violations.push_back({inv, node, other, detail});
    }

    void count(const char* inv)
    {
        ++report_.checks_run;
        ++report_.checks_by_invariant[inv];
    }

    void check_g1()
    {
        count("G1");
        Zone z0 = Zone::initial(ta_.clock_count);
        for (const auto& n : g_.nodes)
            if (!n.removed && n.status == NodeStatus::Active && n.state == ta_.initial
                && alu_subset(z0, n.zone, n.lu))
                return;
        violation("G1", -1, -1, "no non-tentative initial node covers the initial zone");
    }

    void check_active(const AsgNode& n)
    {
        for (int ti : by_source_[n.state]) {
            auto succ = post(n.zone, ta_.transitions[ti]);
            if (succ) {
                count("G2");
                if (!has_covered_successor(*succ, ta_.transitions[ti].target))
                    violation("G2", n.id, ti, "enabled transition has no successor node");
            } else {
                count("I1");
                if (!i1_holds(n, ti))
                    violation("I1", n.id, ti,
                              "disabled transition not disabled under the node's bounds");
            }
        }
    }

    // The successor may be represented by any node whose abstraction
    // swallows it; the node's own bounds are below the static ones used at
    // insertion time, so this is the weakest condition the soundness lemma
    // needs.
    bool has_covered_successor(const Zone& succ, StateId target) const
    {
        for (int uid : nodes_by_state_[target]) {
            const AsgNode& u = g_.nodes[uid];
            if (zone_subset(succ, u.zone) || alu_subset(succ, u.zone, u.lu))
                return true;
        }
        return false;
    }

    // Sufficient condition: some violated upper atom w # d of the decomposed
    // guard has U(w) >= d in the node's bounds, which keeps the transition
    // disabled from the abstraction.
    bool i1_holds(const AsgNode& n, int ti)
    {
        const DecomposedGuard& dg = decomposed_[ti];
        auto zl = constrain_all(n.zone, dg.lower);
        if (!zl)
            return false; // not reachable for time-elapsed node zones
        for (const auto& a : dg.upper) {
            if (constrain(*zl, a))
                continue;
            if (n.lu.upper(a.clock) != kNoBound && n.lu.upper(a.clock) >= a.constant)
                return true;
        }
        return false;
    }

    void check_tentative(const AsgNode& n)
    {
        count("G3");
        if (n.covered_by < 0 || n.covered_by >= static_cast<int>(g_.nodes.size())) {
            violation("G3", n.id, -1, "tentative node without coverer");
            return;
        }
        const AsgNode& c = g_.nodes[n.covered_by];
        if (c.removed || c.status != NodeStatus::Active || c.state != n.state
            || !alu_subset(n.zone, c.zone, c.lu)) {
            violation("G3", n.id, c.id, "coverer is invalid or no longer covers");
            return;
        }
        count("I3");
        if (!c.lu.dominated_by(n.lu))
            violation("I3", n.id, c.id, "coverer bounds exceed the tentative node's bounds");
    }

    void check_dom(const AsgNode& n)
    {
        count("DOM");
        if (!n.lu.dominated_by(statics_.at(n.state)))
            violation("DOM", n.id, -1, "bounds exceed the static analysis bounds");
    }

    void check_i2()
    {
        report_.checks_by_invariant.try_emplace("I2", 0);
        if (ta_.clock_count > kI2MaxClocks || ta_.max_constant() > kI2MaxConstant) {
            report_.i2_status = I2Status::SampledSkip;
            return;
        }
        report_.i2_status = I2Status::Pass;
        const auto vals = grid_values(ta_.max_constant());
        for (const auto& child : g_.nodes) {
            if (child.removed)
                continue;
            for (const auto& [pid, ti] : child.prop_edges) {
                const AsgNode& parent = g_.nodes[pid];
                if (parent.removed)
                    continue;
                count("I2");
                if (!i2_edge_holds(parent, child, ti, vals)) {
                    violation("I2", parent.id, child.id,
                              "sampled successor escapes the child abstraction on transition "
                                  + std::to_string(ti));
                }
            }
        }
    }

    // Samples v in aLU(parent) satisfying the guard; its reset image must lie
    // in aLU(child). Time elapse on either side is absorbed by the
    // elapse-closure of the abstractions.
    bool i2_edge_holds(const AsgNode& parent, const AsgNode& child, int ti,
                       const std::vector<std::int64_t>& vals)
    {
        const Transition& t = ta_.transitions[ti];
        HalfValuation v(ta_.clock_count);
        return i2_enumerate(parent, child, t, v, 1, vals);
    }

    bool i2_enumerate(const AsgNode& parent, const AsgNode& child, const Transition& t,
                      HalfValuation& v, ClockId next, const std::vector<std::int64_t>& vals)
    {
        if (next > ta_.clock_count) {
            if (!half_point_satisfies(v, t.guard))
                return true;
            if (!alu_member(v, parent.zone, parent.lu))
                return true;
            HalfValuation succ = reset_point(v, t.resets);
            return alu_member(succ, child.zone, child.lu);
        }
        for (std::int64_t tv : vals) {
            v.twice[next] = tv;
            if (!i2_enumerate(parent, child, t, v, next + 1, vals))
                return false;
        }
        return true;
    }

    const Asg& g_;
    const TimedAutomaton& ta_;
    std::vector<std::vector<int>> by_source_;
    StaticBounds statics_;
    std::vector<std::vector<int>> nodes_by_state_;
    std::vector<DecomposedGuard> decomposed_;
    AuditReport report_;
};

} // namespace

AuditReport audit_asg(const Asg& graph, const TimedAutomaton& ta)
{
    return AsgAuditor(graph, ta).run();
}

namespace {

struct VerdictTable {
    bool ok = true;
    bool any_reachable = false;
    bool any_unreachable = false;
    std::string detail;
};

VerdictTable run_all(const TimedAutomaton& folded, double time_limit)
{
    VerdictTable table;
    for (SearchMode mode :
         {SearchMode::LazyDisabled, SearchMode::StaticAlu, SearchMode::OtfPropagate}) {
        for (SearchOrder order : {SearchOrder::Dfs, SearchOrder::Bfs}) {
            RunResult r = run_reachability(folded, mode, order, time_limit);
            if (r.reachable) {
                table.any_reachable = true;
                if (!replay_witness(folded, r.witness)) {
                    table.ok = false;
                    table.detail = "witness replay failed for " + to_string(mode) + "/"
                        + to_string(order);
                    return table;
                }
            } else {
                table.any_unreachable = true;
            }
        }
    }
    if (table.any_reachable && table.any_unreachable) {
        table.ok = false;
        table.detail = "modes disagree on reachability";
    }
    return table;
}

// Greedy shrink: drop transitions, then states, then halve constants, as long
// as the failure persists.
TimedAutomaton shrink(TimedAutomaton ta, double time_limit)
{
    auto still_fails = [&](const TimedAutomaton& candidate) {
        try {
            return !run_all(fold_invariants(candidate), time_limit).ok;
        } catch (const std::exception&) {
            return false;
        }
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < ta.transitions.size(); ++i) {
            TimedAutomaton candidate = ta;
            candidate.transitions.erase(candidate.transitions.begin() + i);
            if (still_fails(candidate)) {
                ta = std::move(candidate);
                progress = true;
                break;
            }
        }
    }
    for (StateId q = ta.state_count() - 1; q >= 0; --q) {
        if (q == ta.initial)
            continue;
        TimedAutomaton candidate = ta;
        candidate.state_names.erase(candidate.state_names.begin() + q);
        candidate.accepting.erase(candidate.accepting.begin() + q);
        candidate.invariants.erase(candidate.invariants.begin() + q);
        std::erase_if(candidate.transitions,
                      [&](const Transition& t) { return t.source == q || t.target == q; });
        for (auto& t : candidate.transitions) {
            if (t.source > q)
                --t.source;
            if (t.target > q)
                --t.target;
        }
        if (candidate.initial > q)
            --candidate.initial;
        if (still_fails(candidate))
            ta = std::move(candidate);
    }
    bool halved = true;
    while (halved) {
        TimedAutomaton candidate = ta;
        halved = false;
        for (auto& t : candidate.transitions)
            for (auto& a : t.guard.atoms)
                if (a.constant > 1) {
                    a.constant /= 2;
                    halved = true;
                }
        if (!halved || !still_fails(candidate))
            break;
        ta = std::move(candidate);
    }
    return ta;
}

} // namespace

DifferReport differ(const std::vector<std::pair<std::uint32_t, TimedAutomaton>>& corpus,
                    double per_run_time_limit_seconds)
{
    DifferReport report;
    for (const auto& [seed, ta] : corpus) {
        ++report.automata_checked;
        TimedAutomaton folded = fold_invariants(ta);
        VerdictTable table = run_all(folded, per_run_time_limit_seconds);
        report.runs += 6;
        if (table.ok)
            continue;
        DifferCase failure;
        failure.seed = seed;
        failure.kind = table.detail.find("witness") != std::string::npos ? "witness-replay"
                                                                         : "verdict-mismatch";
        failure.detail = table.detail;
        failure.minimized_model = serialize_model(shrink(ta, per_run_time_limit_seconds));
        report.failures.push_back(std::move(failure));
    }
    return report;
}

} // namespace talu
