#include "talu/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <deque>
#include <unordered_map>

#include "talu/newbounds.hpp"
#include "talu/symbolic.hpp"

namespace talu {

std::string to_string(SearchMode mode)
{
    switch (mode) {
    case SearchMode::LazyDisabled: return "lazy-disabled";
    case SearchMode::StaticAlu: return "static-alu";
    case SearchMode::OtfPropagate: return "otf";
    }
    return "?";
}

std::string to_string(SearchOrder order)
{
    return order == SearchOrder::Dfs ? "dfs" : "bfs";
}

std::optional<SearchMode> parse_mode(const std::string& s)
{
    if (s == "lazy-disabled")
        return SearchMode::LazyDisabled;
    if (s == "static-alu")
        return SearchMode::StaticAlu;
    if (s == "otf")
        return SearchMode::OtfPropagate;
    return std::nullopt;
}

std::optional<SearchOrder> parse_order(const std::string& s)
{
    if (s == "dfs")
        return SearchOrder::Dfs;
    if (s == "bfs")
        return SearchOrder::Bfs;
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

class Search {
public:
    Search(const TimedAutomaton& ta, SearchMode mode, SearchOrder order,
           std::optional<double> time_limit_seconds)
        : ta_(ta), mode_(mode), order_(order), by_source_(ta.transitions_by_source()),
          statics_(static_bounds(ta)), passed_by_state_(ta.state_count())
    {
        if (ta.has_invariants())
            throw std::invalid_argument("run_reachability requires a folded automaton");
        ta_.validate();
        for (const auto& t : ta_.transitions)
            decomposed_.push_back(decompose(t));
        if (time_limit_seconds)
            deadline_ = Clock::now()
                + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(*time_limit_seconds));
    }

    RunResult run()
    {
        auto started = Clock::now();
        int root = new_node(ta_.initial, Zone::initial(ta_.clock_count), -1, -1);
        insert_pw(root);

        RunResult result;
        result.graph.root = root;
        bool found = false;
        int accepting_node = -1;

        while (!waiting_.empty()) {
            check_deadline();
            int vid = pop();
            if (nodes_[vid].removed)
                continue;
            nodes_[vid].in_waiting = false;
            ++stats_.nodes_visited;

            if (ta_.accepting[nodes_[vid].state]) {
                found = true;
                accepting_node = vid;
                break;
            }

            int coverer = find_coverer(vid);
            if (coverer >= 0) {
                nodes_[vid].status = NodeStatus::Tentative;
                nodes_[vid].covered_by = coverer;
                nodes_[coverer].covered_nodes.push_back(vid);
                if (mode_ != SearchMode::StaticAlu) {
                    ClockSet xl(clocks()), xu(clocks());
                    nodes_[vid].lu.merge(nodes_[coverer].lu, &xl, &xu);
                    if (!xl.empty() || !xu.empty())
                        propagate(vid, xl, xu);
                }
                continue;
            }

            nodes_[vid].status = NodeStatus::Active;
            if (mode_ == SearchMode::LazyDisabled)
                seed_disabled(vid);
            else if (mode_ == SearchMode::OtfPropagate)
                seed_all_guards(vid);

            for (int ti : by_source_[nodes_[vid].state]) {
                auto z = post(nodes_[vid].zone, ta_.transitions[ti]);
                if (!z)
                    continue;
                int child = new_node(ta_.transitions[ti].target, std::move(*z), vid, ti);
                nodes_[child].prop_edges.emplace_back(vid, ti);
                insert_pw(child);
            }
        }

        if (found) {
            result.reachable = true;
            for (int cur = accepting_node; nodes_[cur].parent >= 0; cur = nodes_[cur].parent)
                result.witness.push_back({nodes_[cur].parent_transition, nodes_[cur].zone});
            std::reverse(result.witness.begin(), result.witness.end());
        }
        for (const auto& n : nodes_) {
            if (n.removed)
                continue;
            if (n.status == NodeStatus::Active)
                ++stats_.nodes_non_tentative;
            else if (n.status == NodeStatus::Tentative)
                ++stats_.nodes_tentative;
        }
        stats_.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
        result.stats = stats_;
        result.graph.nodes = std::move(nodes_);
        return result;
    }

private:
    int clocks() const { return ta_.clock_count; }

    void check_deadline() const
    {
        if (deadline_ && Clock::now() > *deadline_)
            throw TimeoutError();
    }

    int pop()
    {
        int vid;
        if (order_ == SearchOrder::Dfs) {
            vid = waiting_.back();
            waiting_.pop_back();
        } else {
            vid = waiting_.front();
            waiting_.pop_front();
        }
        return vid;
    }

    void push_waiting(int vid)
    {
        if (nodes_[vid].in_waiting)
            return;
        nodes_[vid].in_waiting = true;
        waiting_.push_back(vid);
    }

    int new_node(StateId q, Zone z, int parent, int parent_transition)
    {
        int id = static_cast<int>(nodes_.size());
        AsgNode n;
        n.id = id;
        n.state = q;
        n.zone = std::move(z);
        n.lu = mode_ == SearchMode::StaticAlu ? statics_.at(q) : LuBounds(clocks());
        n.parent = parent;
        n.parent_transition = parent_transition;
        nodes_.push_back(std::move(n));
        return id;
    }

    int find_coverer(int vid) const
    {
        const AsgNode& v = nodes_[vid];
        for (int uid : passed_by_state_[v.state]) {
            const AsgNode& u = nodes_[uid];
            if (uid == vid || u.removed || u.status != NodeStatus::Active)
                continue;
            if (alu_subset(v.zone, u.zone, u.lu))
                return uid;
        }
        return -1;
    }

    void move_prop_edges(int from, int to)
    {
        AsgNode& src = nodes_[from];
        AsgNode& dst = nodes_[to];
        for (const auto& e : src.prop_edges)
            if (std::find(dst.prop_edges.begin(), dst.prop_edges.end(), e)
                == dst.prop_edges.end())
                dst.prop_edges.push_back(e);
        src.prop_edges.clear();
    }

    // Passed/waiting insertion with covering w.r.t. the static bounds: a node
    // abstractly included in an existing one is dropped, and existing nodes
    // abstractly included in the new one are removed with their propagation
    // duties taken over. Static bounds dominate every dynamic bound, so these
    // coverings can never be invalidated later and need no re-checks; plain
    // inclusion alone would let monotonically growing zone chains displace
    // their predecessors forever.
    void insert_pw(int vid)
    {
        const LuBounds& statics = statics_.at(nodes_[vid].state);
        auto& bucket = passed_by_state_[nodes_[vid].state];
        for (int uid : bucket) {
            if (nodes_[uid].removed)
                continue;
            if (alu_subset(nodes_[vid].zone, nodes_[uid].zone, statics)) {
                move_prop_edges(vid, uid);
                nodes_[vid].removed = true;
                restore_edge_invariant(uid);
                return;
            }
        }
        for (int uid : bucket) {
            AsgNode& u = nodes_[uid];
            if (u.removed || !alu_subset(u.zone, nodes_[vid].zone, statics))
                continue;
            u.removed = true;
            u.in_waiting = false;
            move_prop_edges(uid, vid);
            if (u.status == NodeStatus::Tentative) {
                if (u.covered_by >= 0)
                    std::erase(nodes_[u.covered_by].covered_nodes, uid);
                u.covered_by = -1;
            } else {
                for (int cid : u.covered_nodes) {
                    AsgNode& c = nodes_[cid];
                    if (c.removed || c.covered_by != uid)
                        continue;
                    c.covered_by = -1;
                    c.status = NodeStatus::Waiting;
                    push_waiting(cid);
                    ++stats_.resolutions_reopened;
                }
                u.covered_nodes.clear();
            }
        }
        bucket.push_back(vid);
        nodes_[vid].status = NodeStatus::Waiting;
        push_waiting(vid);
    }

    // Restores the bound invariant along a node's disabled transitions: pick
    // one violated upper atom per disabled transition and run it backwards
    // through the lower stage of the same guard.
    void seed_disabled(int vid)
    {
        LuBounds seed(clocks());
        for (int ti : by_source_[nodes_[vid].state]) {
            const DecomposedGuard& dg = decomposed_[ti];
            auto zl = constrain_all(nodes_[vid].zone, dg.lower);
            if (!zl)
                throw std::logic_error("lower-bound guard disabled on a time-elapsed zone");
            const AtomicConstraint* chosen = nullptr;
            for (const auto& a : dg.upper) {
                if (constrain(*zl, a))
                    continue;
                if (!chosen || a.constant < chosen->constant
                    || (a.constant == chosen->constant && a.clock < chosen->clock))
                    chosen = &a;
            }
            if (!chosen)
                continue;
            nodes_[vid].disabled_atoms.push_back({ti, *chosen});
            LuBounds lu_d(clocks());
            lu_d.raise_upper(chosen->clock, chosen->constant);
            ClockSet xl(clocks()), xu(clocks());
            xu.insert(chosen->clock);
            DecomposedGuard lower_only{dg.lower, {}, {}};
            BoundsDelta d = backward_lu(nodes_[vid].zone, lower_only, lu_d, xl, xu);
            seed.merge(d.lu, nullptr, nullptr);
        }
        apply_seed(vid, seed);
    }

    // Approximate on-the-fly propagation: every guard constant of every
    // outgoing transition is taken, enabled or not.
    void seed_all_guards(int vid)
    {
        LuBounds seed(clocks());
        for (int ti : by_source_[nodes_[vid].state])
            for (const auto& a : ta_.transitions[ti].guard.expanded().atoms) {
                if (a.is_lower())
                    seed.raise_lower(a.clock, a.constant);
                else
                    seed.raise_upper(a.clock, a.constant);
            }
        apply_seed(vid, seed);
    }

    void apply_seed(int vid, const LuBounds& seed)
    {
        ClockSet xl(clocks()), xu(clocks());
        nodes_[vid].lu.merge(seed, &xl, &xu);
        if (!xl.empty() || !xu.empty())
            propagate(vid, xl, xu);
    }

    // After edges were redirected onto `uid`, its existing bounds must flow
    // through them once to re-establish the successor invariant.
    void restore_edge_invariant(int uid)
    {
        if (mode_ == SearchMode::StaticAlu)
            return;
        ClockSet xl(clocks()), xu(clocks());
        for (ClockId x = 1; x <= clocks(); ++x) {
            if (nodes_[uid].lu.lower(x) != kNoBound)
                xl.insert(x);
            if (nodes_[uid].lu.upper(x) != kNoBound)
                xu.insert(x);
        }
        if (!xl.empty() || !xu.empty())
            propagate(uid, xl, xu);
    }

    // Walks the propagation relation from `start`, whose bounds just grew on
    // the given clock sets: covered nodes are re-checked and either follow
    // the coverer's bounds or are reopened; parents receive the backwardLU
    // image of the change.
    void propagate(int start, const ClockSet& xl, const ClockSet& xu)
    {
        std::deque<int> queue;
        std::unordered_map<int, std::pair<ClockSet, ClockSet>> pending;
        queue.push_back(start);
        pending.emplace(start, std::make_pair(xl, xu));
        while (!queue.empty()) {
            check_deadline();
            int aid = queue.front();
            queue.pop_front();
            auto it = pending.find(aid);
            if (it == pending.end())
                continue;
            ClockSet axl = std::move(it->second.first);
            ClockSet axu = std::move(it->second.second);
            pending.erase(it);
            if (nodes_[aid].removed)
                continue;
            ++stats_.propagations;

            std::vector<int> covered = nodes_[aid].covered_nodes;
            for (int bid : covered) {
                AsgNode& b = nodes_[bid];
                if (b.removed || b.covered_by != aid)
                    continue;
                if (alu_subset(b.zone, nodes_[aid].zone, nodes_[aid].lu)) {
                    ClockSet bxl(clocks()), bxu(clocks());
                    b.lu.merge(nodes_[aid].lu, &bxl, &bxu);
                    enqueue(queue, pending, bid, bxl, bxu);
                } else {
                    b.covered_by = -1;
                    std::erase(nodes_[aid].covered_nodes, bid);
                    b.lu.clear();
                    b.status = NodeStatus::Waiting;
                    push_waiting(bid);
                    pending.erase(bid);
                    ++stats_.resolutions_reopened;
                }
            }

            for (const auto& [bid, ti] : nodes_[aid].prop_edges) {
                if (nodes_[bid].removed)
                    continue;
                BoundsDelta d = edge_bounds(bid, ti, nodes_[aid].lu, axl, axu);
                ClockSet bxl(clocks()), bxu(clocks());
                nodes_[bid].lu.merge(d.lu, &bxl, &bxu);
                enqueue(queue, pending, bid, bxl, bxu);
            }
        }
    }

    BoundsDelta edge_bounds(int parent, int transition, const LuBounds& lu_succ,
                            const ClockSet& xl, const ClockSet& xu)
    {
        const DecomposedGuard& dg = decomposed_[transition];
        if (mode_ == SearchMode::OtfPropagate) {
            // Plain max-merge with the reset clocks reverted; guard constants
            // were already seeded where the transition originates.
            BoundsDelta d(clocks());
            for (ClockId x = 1; x <= clocks(); ++x) {
                if (std::find(dg.resets.begin(), dg.resets.end(), x) != dg.resets.end())
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
        return backward_lu(nodes_[parent].zone, dg, lu_succ, xl, xu);
    }

    static void enqueue(std::deque<int>& queue,
                        std::unordered_map<int, std::pair<ClockSet, ClockSet>>& pending, int bid,
                        const ClockSet& bxl, const ClockSet& bxu)
    {
        if (bxl.empty() && bxu.empty())
            return;
        auto [it, inserted] = pending.try_emplace(bid, std::make_pair(bxl, bxu));
        if (inserted) {
            queue.push_back(bid);
        } else {
            it->second.first.merge(bxl);
            it->second.second.merge(bxu);
        }
    }

    TimedAutomaton ta_;
    SearchMode mode_;
    SearchOrder order_;
    std::vector<std::vector<int>> by_source_;
    StaticBounds statics_;
    std::vector<DecomposedGuard> decomposed_;

    std::vector<AsgNode> nodes_;
    std::vector<std::vector<int>> passed_by_state_;
    std::deque<int> waiting_;
    RunStats stats_;
    std::optional<Clock::time_point> deadline_;
};

} // namespace

RunResult run_reachability(const TimedAutomaton& ta, SearchMode mode, SearchOrder order,
                           std::optional<double> time_limit_seconds)
{
    return Search(ta, mode, order, time_limit_seconds).run();
}

bool replay_witness(const TimedAutomaton& ta, const std::vector<TraceStep>& witness)
{
    Zone cur = Zone::initial(ta.clock_count);
    StateId q = ta.initial;
    for (const auto& step : witness) {
        if (step.transition_index < 0
            || step.transition_index >= static_cast<int>(ta.transitions.size()))
            return false;
        const Transition& t = ta.transitions[step.transition_index];
        if (t.source != q)
            return false;
        auto next = post(cur, t);
        if (!next || !(*next == step.zone))
            return false;
        cur = *next;
        q = t.target;
    }
    return ta.accepting[q];
}

} // namespace talu
