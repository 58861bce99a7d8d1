#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "talu/audit.hpp"
#include "talu/families.hpp"
#include "talu/model_io.hpp"
#include "talu/search.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUnreachable = 0;
constexpr int kExitReachable = 1;
constexpr int kExitError = 2;
constexpr int kExitDisagreement = 3;

struct InputOptions {
    std::string model_path;
    std::string family;

    talu::TimedAutomaton load() const
    {
        if (model_path.empty() == family.empty())
            throw std::runtime_error("exactly one of --model and --family is required");
        if (!model_path.empty()) {
            std::ifstream in(model_path);
            if (!in)
                throw std::runtime_error("cannot open model file: " + model_path);
            std::stringstream buf;
            buf << in.rdbuf();
            return talu::parse_model(buf.str());
        }
        auto spec = talu::parse_family(family);
        if (!spec)
            throw std::runtime_error("bad family spec '" + family
                                     + "' (expected D:N, Dprime:N or Ddoubleprime:N)");
        return talu::generate(*spec);
    }

    std::string name() const { return model_path.empty() ? family : model_path; }
};

void add_input_options(CLI::App* cmd, InputOptions& input)
{
    cmd->add_option("--model", input.model_path, "model file to check");
    cmd->add_option("--family", input.family, "generated family instance, e.g. D:7");
}

json stats_record(const talu::TimedAutomaton& ta, talu::SearchMode mode, talu::SearchOrder order,
                  const talu::RunResult& result)
{
    return json{{"mode", talu::to_string(mode)},
                {"order", talu::to_string(order)},
                {"model_digest", talu::model_digest(ta)},
                {"verdict", result.reachable ? "reachable" : "unreachable"},
                {"nodes_visited", result.stats.nodes_visited},
                {"nodes_non_tentative", result.stats.nodes_non_tentative},
                {"nodes_tentative", result.stats.nodes_tentative},
                {"propagations", result.stats.propagations},
                {"resolutions_reopened", result.stats.resolutions_reopened},
                {"wall_ms", result.stats.wall_ms}};
}

void append_stats(const std::string& path, const json& record)
{
    if (path.empty())
        return;
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw std::runtime_error("cannot open stats file: " + path);
    out << record.dump() << "\n";
}

void print_run(const talu::TimedAutomaton& folded, const talu::RunResult& result)
{
    std::cout << (result.reachable ? "not empty" : "empty") << "\n";
    if (result.reachable) {
        std::cout << "witness (" << result.witness.size() << " steps):\n";
        for (const auto& step : result.witness) {
            const auto& t = folded.transitions[step.transition_index];
            std::cout << "  " << folded.state_names[t.source] << " -> "
                      << folded.state_names[t.target] << " ["
                      << t.guard.to_string(folded.clock_names) << "]\n";
        }
    }
    std::cout << "visited=" << result.stats.nodes_visited
              << " non_tentative=" << result.stats.nodes_non_tentative
              << " tentative=" << result.stats.nodes_tentative
              << " propagations=" << result.stats.propagations
              << " reopened=" << result.stats.resolutions_reopened << " wall_ms="
              << result.stats.wall_ms << "\n";
}

int print_audit(const talu::AuditReport& report)
{
    for (const auto& [inv, checks] : report.checks_by_invariant) {
        std::int64_t bad = 0;
        for (const auto& v : report.violations)
            if (v.invariant == inv)
                ++bad;
        json rec{{"invariant", inv}, {"checks", checks}, {"violations", bad}};
        if (inv == "I2")
            rec["status"] = report.i2_status == talu::I2Status::Pass ? "pass" : "sampled-skip";
        std::cout << rec.dump() << "\n";
    }
    for (const auto& v : report.violations)
        std::cout << json{{"violation", v.invariant},
                          {"node", v.node},
                          {"other", v.other},
                          {"detail", v.detail}}
                         .dump()
                  << "\n";
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"timed-automaton reachability with adaptive LU abstraction"};
    app.require_subcommand(1);

    InputOptions check_input, compare_input, audit_input;
    std::string check_mode = "lazy-disabled", check_order = "dfs", check_stats;
    double check_limit = 150.0;
    bool check_audit = false;

    auto* check = app.add_subcommand("check", "decide reachability of the accepting states");
    add_input_options(check, check_input);
    check->add_option("--mode", check_mode, "lazy-disabled | static-alu | otf");
    check->add_option("--order", check_order, "dfs | bfs");
    check->add_option("--stats", check_stats, "append a JSON stats record to this file");
    check->add_option("--time-limit", check_limit, "seconds before giving up");
    check->add_flag("--audit", check_audit, "audit the graph after an unreachable verdict");

    std::vector<std::string> compare_modes = {"lazy-disabled", "static-alu", "otf"};
    std::string compare_order = "dfs", compare_stats;
    double compare_limit = 150.0;
    auto* compare = app.add_subcommand("compare", "run several modes and compare verdicts");
    add_input_options(compare, compare_input);
    compare->add_option("--modes", compare_modes, "modes to run (two or more)");
    compare->add_option("--order", compare_order, "dfs | bfs");
    compare->add_option("--stats", compare_stats, "append JSON stats records to this file");
    compare->add_option("--time-limit", compare_limit, "seconds per run");

    std::string gen_family, gen_out;
    auto* gen = app.add_subcommand("gen", "write a generated family instance as a model file");
    gen->add_option("--family", gen_family, "family instance, e.g. Ddoubleprime:70")->required();
    gen->add_option("-o,--out", gen_out, "output path (default: stdout)");

    std::string audit_mode = "lazy-disabled", audit_order = "dfs";
    double audit_limit = 150.0;
    auto* audit = app.add_subcommand("audit", "run one mode and audit the resulting graph");
    add_input_options(audit, audit_input);
    audit->add_option("--mode", audit_mode, "lazy-disabled | static-alu | otf");
    audit->add_option("--order", audit_order, "dfs | bfs");
    audit->add_option("--time-limit", audit_limit, "seconds before giving up");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            auto mode = talu::parse_mode(check_mode);
            auto order = talu::parse_order(check_order);
            if (!mode || !order)
                throw std::runtime_error("unknown mode or order");
            talu::TimedAutomaton ta = check_input.load();
            talu::TimedAutomaton folded = talu::fold_invariants(ta);
            talu::RunResult result = talu::run_reachability(folded, *mode, *order, check_limit);
            print_run(folded, result);
            append_stats(check_stats, stats_record(ta, *mode, *order, result));
            if (check_audit && !result.reachable) {
                talu::AuditReport report = talu::audit_asg(result.graph, folded);
                if (print_audit(report) != 0)
                    return kExitError;
            }
            return result.reachable ? kExitReachable : kExitUnreachable;
        }

        if (compare->parsed()) {
            if (compare_modes.size() < 2)
                throw std::runtime_error("compare needs at least two modes");
            auto order = talu::parse_order(compare_order);
            if (!order)
                throw std::runtime_error("unknown order");
            talu::TimedAutomaton ta = compare_input.load();
            talu::TimedAutomaton folded = talu::fold_invariants(ta);
            bool any_reachable = false, any_unreachable = false;
            std::vector<std::pair<std::string, talu::RunResult>> results;
            std::printf("%-14s %10s %10s %10s %12s\n", "mode", "visited", "nontent", "tentative",
                        "wall_ms");
            for (const auto& mode_name : compare_modes) {
                auto mode = talu::parse_mode(mode_name);
                if (!mode)
                    throw std::runtime_error("unknown mode '" + mode_name + "'");
                talu::RunResult result =
                    talu::run_reachability(folded, *mode, *order, compare_limit);
                (result.reachable ? any_reachable : any_unreachable) = true;
                std::printf("%-14s %10lld %10lld %10lld %12.1f  %s\n", mode_name.c_str(),
                            static_cast<long long>(result.stats.nodes_visited),
                            static_cast<long long>(result.stats.nodes_non_tentative),
                            static_cast<long long>(result.stats.nodes_tentative),
                            result.stats.wall_ms,
                            result.reachable ? "not empty" : "empty");
                append_stats(compare_stats, stats_record(ta, *mode, *order, result));
                results.emplace_back(mode_name, std::move(result));
            }
            if (any_reachable && any_unreachable) {
                std::cout << "verdict disagreement on model " << talu::model_digest(ta) << "\n";
                for (const auto& [mode_name, result] : results) {
                    std::cout << mode_name << ": "
                              << (result.reachable ? "not empty" : "empty") << "\n";
                    if (result.reachable)
                        for (const auto& step : result.witness) {
                            const auto& t = folded.transitions[step.transition_index];
                            std::cout << "  " << folded.state_names[t.source] << " -> "
                                      << folded.state_names[t.target] << "\n";
                        }
                }
                return kExitDisagreement;
            }
            return 0;
        }

        if (gen->parsed()) {
            auto spec = talu::parse_family(gen_family);
            if (!spec)
                throw std::runtime_error("bad family spec '" + gen_family + "'");
            std::string text = talu::serialize_model(talu::generate(*spec));
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(gen_out);
                if (!out)
                    throw std::runtime_error("cannot open output file: " + gen_out);
                out << text;
            }
            return 0;
        }

        if (audit->parsed()) {
            auto mode = talu::parse_mode(audit_mode);
            auto order = talu::parse_order(audit_order);
            if (!mode || !order)
                throw std::runtime_error("unknown mode or order");
            talu::TimedAutomaton folded = talu::fold_invariants(audit_input.load());
            talu::RunResult result = talu::run_reachability(folded, *mode, *order, audit_limit);
            if (result.reachable) {
                std::cout << json{{"verdict", "reachable"},
                                  {"witness_ok", talu::replay_witness(folded, result.witness)}}
                                 .dump()
                          << "\n";
                return talu::replay_witness(folded, result.witness) ? 0 : 1;
            }
            return print_audit(talu::audit_asg(result.graph, folded));
        }
    } catch (const talu::TimeoutError&) {
        std::cerr << "error: time limit exceeded\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
