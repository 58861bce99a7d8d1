// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured numbers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "talu/audit.hpp"
#include "talu/families.hpp"
#include "talu/search.hpp"

using namespace talu;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int criterion, bool pass, const std::string& text)
{
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, text.c_str());
    std::fflush(stdout);
}

struct FamilyRun {
    std::string label;
    FamilySpec spec;
    SearchMode mode;
    SearchOrder order;
    TimedAutomaton ta;
    RunResult result;
};

std::vector<FamilyRun>& family_runs()
{
    static std::vector<FamilyRun> runs = [] {
        std::vector<FamilyRun> out;
        auto add = [&](FamilySpec spec, SearchMode mode, SearchOrder order) {
            TimedAutomaton ta = generate(spec);
            RunResult r = run_reachability(ta, mode, order, 240.0);
            std::string label = to_string(spec.family) + ":" + std::to_string(spec.n) + "/"
                + to_string(mode) + "/" + to_string(order);
            out.push_back({label, spec, mode, order, std::move(ta), std::move(r)});
        };
        for (int n = 2; n <= 8; ++n)
            for (SearchOrder order : {SearchOrder::Dfs, SearchOrder::Bfs})
                add({Family::D, n}, SearchMode::LazyDisabled, order);
        for (int n = 5; n <= 7; ++n) {
            add({Family::DDoublePrime, n}, SearchMode::StaticAlu, SearchOrder::Dfs);
            add({Family::DDoublePrime, n}, SearchMode::LazyDisabled, SearchOrder::Dfs);
            add({Family::DDoublePrime, n}, SearchMode::LazyDisabled, SearchOrder::Bfs);
        }
        for (int n = 3; n <= 8; ++n)
            for (SearchOrder order : {SearchOrder::Dfs, SearchOrder::Bfs})
                add({Family::DPrime, n}, SearchMode::LazyDisabled, order);
        return out;
    }();
    return runs;
}

const FamilyRun& family_run(const std::string& label)
{
    for (const auto& r : family_runs())
        if (r.label == label)
            return r;
    throw std::logic_error("missing family run " + label);
}

struct CorpusEntry {
    std::uint32_t seed;
    TimedAutomaton ta;
    std::vector<std::pair<std::pair<SearchMode, SearchOrder>, RunResult>> runs;
};

struct CorpusData {
    std::vector<CorpusEntry> entries;
    double run_seconds = 0.0;
};

constexpr int kCorpusSize = 500;

CorpusData& corpus_data()
{
    static CorpusData data = [] {
        CorpusData d;
        auto start = Clock::now();
        for (std::uint32_t seed = 0; seed < kCorpusSize; ++seed) {
            CorpusEntry entry;
            entry.seed = seed;
            entry.ta = random_ta(seed, {});
            for (SearchMode mode :
                 {SearchMode::LazyDisabled, SearchMode::StaticAlu, SearchMode::OtfPropagate})
                for (SearchOrder order : {SearchOrder::Dfs, SearchOrder::Bfs})
                    entry.runs.emplace_back(std::make_pair(mode, order),
                                            run_reachability(entry.ta, mode, order, 60.0));
            d.entries.push_back(std::move(entry));
        }
        d.run_seconds = seconds_since(start);
        return d;
    }();
    return data;
}

struct AuditSummary {
    std::int64_t audits = 0;
    std::int64_t violations = 0;
    std::int64_t dom_violations = 0;
    std::int64_t i2_pass = 0;
    std::int64_t i2_skip = 0;
    std::int64_t corpus_i2_skip = 0;
    std::map<std::string, std::int64_t> by_invariant;
};

AuditSummary& audit_summary()
{
    static AuditSummary s = [] {
        AuditSummary sum;
        auto absorb = [&](const AuditReport& report, bool corpus) {
            ++sum.audits;
            sum.violations += static_cast<std::int64_t>(report.violations.size());
            for (const auto& v : report.violations) {
                ++sum.by_invariant[v.invariant];
                if (v.invariant == "DOM")
                    ++sum.dom_violations;
            }
            if (report.i2_status == I2Status::Pass)
                ++sum.i2_pass;
            else {
                ++sum.i2_skip;
                if (corpus)
                    ++sum.corpus_i2_skip;
            }
        };
        for (const auto& run : family_runs()) {
            if (run.result.reachable)
                continue;
            absorb(audit_asg(run.result.graph, run.ta), false);
        }
        for (const auto& entry : corpus_data().entries)
            for (const auto& [config, result] : entry.runs) {
                if (result.reachable)
                    continue;
                absorb(audit_asg(result.graph, entry.ta), true);
            }
        return sum;
    }();
    return s;
}

} // namespace

TEST_CASE("criterion 1: equality-family node counts are exactly the state counts")
{
    bool pass = true;
    std::string detail;
    for (int n = 2; n <= 8; ++n) {
        std::int64_t expected = (n + 1) * (n + 1) + n;
        for (const char* order : {"dfs", "bfs"}) {
            const FamilyRun& run =
                family_run("D:" + std::to_string(n) + "/lazy-disabled/" + order);
            bool ok = !run.result.reachable
                && run.result.stats.nodes_non_tentative == expected
                && run.result.stats.wall_ms < 5000.0;
            for (const auto& node : run.result.graph.nodes)
                ok = ok && (node.removed || node.lu.all_unbounded());
            CHECK_MESSAGE(ok, run.label);
            pass = pass && ok;
            if (n == 7 && std::string(order) == "dfs")
                detail = "n=2..8 visit (n+1)^2+n non-tentative nodes with all bounds -inf"
                         " (n=7: "
                    + std::to_string(run.result.stats.nodes_non_tentative) + " = 71)";
        }
    }
    report(1, pass, detail);
    CHECK(pass);
}

TEST_CASE("criterion 2: exponential separation on the strict-guard family")
{
    bool pass = true;
    double ratio7 = 0.0;
    for (int n = 5; n <= 7; ++n) {
        std::string base = "Ddoubleprime:" + std::to_string(n);
        const FamilyRun& stat = family_run(base + "/static-alu/dfs");
        std::int64_t lazy_best =
            std::min(family_run(base + "/lazy-disabled/dfs").result.stats.nodes_non_tentative,
                     family_run(base + "/lazy-disabled/bfs").result.stats.nodes_non_tentative);
        bool ok = !stat.result.reachable
            && stat.result.stats.nodes_non_tentative >= (std::int64_t{1} << n)
            && lazy_best <= 20 * n * n;
        if (n == 7) {
            ratio7 = static_cast<double>(stat.result.stats.nodes_non_tentative)
                / static_cast<double>(lazy_best);
            ok = ok && ratio7 >= 50.0;
        }
        CHECK_MESSAGE(ok, base);
        pass = pass && ok;
    }
    double family_wall = 0.0;
    for (const auto& run : family_runs())
        if (run.spec.family == Family::DDoublePrime)
            family_wall += run.result.stats.wall_ms / 1000.0;
    pass = pass && family_wall < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "static-alu >= 2^n vs lazy <= 20n^2 for n=5..7; ratio at n=7 is %.1f (>= 50), "
                  "runs took %.1f s (< 60)",
                  ratio7, family_wall);
    report(2, pass, buf);
    CHECK(pass);
}

TEST_CASE("criterion 3: quadratic bound on the disabled-step family")
{
    bool pass = true;
    for (int n = 3; n <= 8; ++n) {
        for (const char* order : {"dfs", "bfs"}) {
            const FamilyRun& run =
                family_run("Dprime:" + std::to_string(n) + "/lazy-disabled/" + order);
            StateId gate = -1;
            for (StateId q = 0; q < run.ta.state_count(); ++q)
                if (run.ta.state_names[q]
                    == "a" + std::to_string(n) + "_a" + std::to_string(n) + "_b0")
                    gate = q;
            std::int64_t at_gate = 0;
            for (const auto& node : run.result.graph.nodes)
                if (!node.removed && node.status == NodeStatus::Active && node.state == gate)
                    ++at_gate;
            std::int64_t total = run.result.stats.nodes_non_tentative;
            bool ok = !run.result.reachable && at_gate <= n + 1 && total <= 5 * n * n;
            CHECK_MESSAGE(ok, run.label);
            pass = pass && ok;
        }
    }
    report(3, pass,
           "lazy-disabled keeps <= n+1 non-tentative nodes at the gate state and <= 5n^2 "
           "total for n=3..8 under both orders");
    CHECK(pass);
}

TEST_CASE("criterion 4: inclusion test agrees with the membership oracle")
{
    testing::Rng rng(20120704);
    auto start = Clock::now();
    int disagreements = 0;
    const int triples = 10000;
    for (int i = 0; i < triples; ++i) {
        int clocks = rng.range(1, 4);
        bool elapsed = rng.chance(0.6);
        Zone z = testing::random_zone(rng, clocks, 6, elapsed, true);
        Zone zp = testing::random_zone(rng, clocks, 6, elapsed, true);
        LuBounds lu = testing::random_lu(rng, clocks, 6);
        auto mismatch = testing::check_inclusion_against_oracle(rng, z, zp, lu, 6, 10);
        if (mismatch) {
            ++disagreements;
            MESSAGE(*mismatch);
        }
    }
    double wall = seconds_since(start);
    bool pass = disagreements == 0 && wall < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d random triples, %d disagreements with the grid oracle, %.1f s (< 60)",
                  triples, disagreements, wall);
    report(4, pass, buf);
    CHECK(pass);
}

TEST_CASE("criterion 5: verdicts agree across modes and witnesses replay")
{
    const CorpusData& corpus = corpus_data();
    int mismatches = 0, replay_failures = 0;
    for (const auto& entry : corpus.entries) {
        bool any_reach = false, any_unreach = false;
        for (const auto& [config, result] : entry.runs) {
            (result.reachable ? any_reach : any_unreach) = true;
            if (result.reachable && !replay_witness(entry.ta, result.witness))
                ++replay_failures;
        }
        if (any_reach && any_unreach)
            ++mismatches;
    }
    bool pass = mismatches == 0 && replay_failures == 0 && corpus.run_seconds < 120.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%d seeds x 6 configurations: %d verdict mismatches, %d replay failures, "
                  "%.1f s (< 120)",
                  kCorpusSize, mismatches, replay_failures, corpus.run_seconds);
    report(5, pass, buf);
    CHECK(pass);
}

TEST_CASE("criterion 6: every unreachable graph audits clean")
{
    const AuditSummary& sum = audit_summary();
    bool pass = sum.violations == 0 && sum.corpus_i2_skip == 0;
    std::string by;
    for (const auto& [inv, count] : sum.by_invariant)
        by += " " + inv + "=" + std::to_string(count);
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "%lld audits, %lld violations%s; I2 pass=%lld sampled-skip=%lld "
                  "(0 skips within the oracle budget)",
                  static_cast<long long>(sum.audits), static_cast<long long>(sum.violations),
                  by.c_str(), static_cast<long long>(sum.i2_pass),
                  static_cast<long long>(sum.i2_skip));
    report(6, pass, buf);
    CHECK(pass);
}

TEST_CASE("criterion 7: bounds stay below the static analysis everywhere")
{
    // DOM is part of every audit above; re-assert it directly over all graphs.
    std::int64_t nodes_checked = 0, excesses = 0;
    for (const auto& run : family_runs()) {
        StaticBounds sb = static_bounds(run.ta);
        for (const auto& node : run.result.graph.nodes) {
            if (node.removed)
                continue;
            ++nodes_checked;
            if (!node.lu.dominated_by(sb.at(node.state)))
                ++excesses;
        }
    }
    for (const auto& entry : corpus_data().entries) {
        StaticBounds sb = static_bounds(entry.ta);
        for (const auto& [config, result] : entry.runs)
            for (const auto& node : result.graph.nodes) {
                if (node.removed)
                    continue;
                ++nodes_checked;
                if (!node.lu.dominated_by(sb.at(node.state)))
                    ++excesses;
            }
    }
    const AuditSummary& sum = audit_summary();
    bool pass = excesses == 0 && sum.dom_violations == 0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%lld nodes checked against static bounds, %lld exceed them",
                  static_cast<long long>(nodes_checked), static_cast<long long>(excesses));
    report(7, pass, buf);
    CHECK(pass);
}
