#include "talu/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>

namespace talu {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    TimedAutomaton run()
    {
        TimedAutomaton ta;
        while (true) {
            skip_blank();
            if (done())
                break;
            std::string kw = ident("directive");
            if (kw == "clocks")
                parse_clocks();
            else if (kw == "state")
                parse_state();
            else if (kw == "trans")
                parse_trans();
            else
                fail("unknown directive '" + kw + "'");
        }
        if (clock_names_.empty())
            fail("no clocks declared");
        if (states_.empty())
            fail("no states declared");
        if (!saw_init_)
            fail("no initial state declared");

        ta.clock_count = static_cast<int>(clock_names_.size());
        ta.clock_names.assign(1, "");
        for (const auto& n : clock_order_)
            ta.clock_names.push_back(n);
        ta.state_names = state_order_;
        ta.initial = initial_;
        ta.accepting = accepting_;
        ta.invariants = invariants_;
        ta.transitions = std::move(transitions_);
        ta.validate();
        return ta;
    }

private:
    void parse_clocks()
    {
        do {
            std::string name = ident("clock name");
            if (clock_names_.count(name))
                fail("duplicate clock '" + name + "'");
            clock_names_[name] = static_cast<ClockId>(clock_names_.size() + 1);
            clock_order_.push_back(name);
            skip_blank();
        } while (!peek_is(';'));
        expect(';');
    }

    void parse_state()
    {
        std::string name = ident("state name");
        if (states_.count(name))
            fail("duplicate state '" + name + "'");
        StateId id = static_cast<StateId>(state_order_.size());
        states_[name] = id;
        state_order_.push_back(name);
        accepting_.push_back(false);
        invariants_.emplace_back();
        while (true) {
            skip_blank();
            if (peek_is(';')) {
                expect(';');
                return;
            }
            std::string flag = ident("state flag");
            if (flag == "init") {
                if (saw_init_)
                    fail("second initial state");
                saw_init_ = true;
                initial_ = id;
            } else if (flag == "accepting") {
                accepting_[id] = true;
            } else if (flag == "inv") {
                expect(':');
                invariants_[id] = parse_conjunction(";", true);
                expect(';');
                return;
            } else {
                fail("unknown state flag '" + flag + "'");
            }
        }
    }

    void parse_trans()
    {
        Transition t;
        std::string src = ident("source state");
        t.source = state_id(src);
        skip_blank();
        expect('-');
        expect('>');
        t.target = state_id(ident("target state"));
        skip_blank();
        expect('[');
        t.guard = parse_conjunction("]", false);
        expect(']');
        skip_blank();
        expect('{');
        skip_blank();
        while (!peek_is('}')) {
            std::string name = ident("reset clock");
            t.resets.push_back(clock_id(name));
            skip_blank();
            if (peek_is(','))
                expect(',');
            skip_blank();
        }
        expect('}');
        skip_blank();
        expect(';');
        std::sort(t.resets.begin(), t.resets.end());
        t.resets.erase(std::unique(t.resets.begin(), t.resets.end()), t.resets.end());
        transitions_.push_back(std::move(t));
    }

    Guard parse_conjunction(const char* closers, bool invariant)
    {
        Guard g;
        skip_blank();
        while (!done() && std::string(closers).find(text_[pos_]) == std::string::npos) {
            AtomicConstraint a;
            std::string name = ident("clock name");
            skip_blank();
            if (peek_is('-'))
                fail("diagonal constraints are not supported");
            a.clock = clock_id(name);
            a.rel = relation();
            skip_blank();
            a.constant = integer();
            if (a.constant == 0 && a.rel == Rel::Lt)
                fail("atom '" + name + "<0' is unsatisfiable and not allowed");
            if (invariant && !(a.rel == Rel::Lt || a.rel == Rel::Le))
                fail("invariant atoms must be upper bounds");
            if (a.rel == Rel::Eq) {
                g.atoms.push_back({a.clock, Rel::Ge, a.constant});
                g.atoms.push_back({a.clock, Rel::Le, a.constant});
            } else {
                g.atoms.push_back(a);
            }
            skip_blank();
            if (peek_is('&')) {
                expect('&');
                expect('&');
                skip_blank();
            }
        }
        return g;
    }

    Rel relation()
    {
        skip_blank();
        char c = get("relation");
        if (c == '<')
            return peek_is('=') ? (expect('='), Rel::Le) : Rel::Lt;
        if (c == '>')
            return peek_is('=') ? (expect('='), Rel::Ge) : Rel::Gt;
        if (c == '=' && peek_is('='))
            return expect('='), Rel::Eq;
        fail("expected one of < <= == >= >");
        return Rel::Le;
    }

    StateId state_id(const std::string& name)
    {
        auto it = states_.find(name);
        if (it == states_.end())
            fail("unknown state '" + name + "'");
        return it->second;
    }

    ClockId clock_id(const std::string& name)
    {
        auto it = clock_names_.find(name);
        if (it == clock_names_.end())
            fail("unknown clock '" + name + "'");
        return it->second;
    }

    // --- lexing -----------------------------------------------------------

    bool done() const { return pos_ >= text_.size(); }

    void skip_blank()
    {
        while (!done()) {
            char c = text_[pos_];
            if (c == '#') {
                while (!done() && text_[pos_] != '\n')
                    ++pos_;
            } else if (c == '\n') {
                ++line_;
                line_start_ = ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool peek_is(char c) const { return !done() && text_[pos_] == c; }

    char get(const char* what)
    {
        if (done())
            fail(std::string("unexpected end of input, expected ") + what);
        return text_[pos_++];
    }

    void expect(char c)
    {
        skip_blank();
        if (done() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string ident(const char* what)
    {
        skip_blank();
        std::size_t start = pos_;
        while (!done()
               && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start)
            fail(std::string("expected ") + what);
        return text_.substr(start, pos_ - start);
    }

    int integer()
    {
        skip_blank();
        std::size_t start = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            fail("expected a nonnegative integer");
        return std::stoi(text_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(line_, static_cast<int>(pos_ - line_start_) + 1, msg);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;

    std::map<std::string, ClockId> clock_names_;
    std::vector<std::string> clock_order_;
    std::map<std::string, StateId> states_;
    std::vector<std::string> state_order_;
    std::vector<bool> accepting_;
    std::vector<Guard> invariants_;
    std::vector<Transition> transitions_;
    bool saw_init_ = false;
    StateId initial_ = 0;
};

} // namespace

TimedAutomaton parse_model(const std::string& text) { return Parser(text).run(); }

std::string serialize_model(const TimedAutomaton& ta)
{
    std::ostringstream out;
    out << "clocks";
    for (ClockId x = 1; x <= ta.clock_count; ++x)
        out << " " << ta.clock_names[x];
    out << ";\n";
    for (StateId q = 0; q < ta.state_count(); ++q) {
        out << "state " << ta.state_names[q];
        if (q == ta.initial)
            out << " init";
        if (ta.accepting[q])
            out << " accepting";
        if (!ta.invariants[q].is_true())
            out << " inv: " << ta.invariants[q].to_string(ta.clock_names);
        out << ";\n";
    }
    for (const auto& t : ta.transitions) {
        out << "trans " << ta.state_names[t.source] << " -> " << ta.state_names[t.target]
            << " [" << t.guard.to_string(ta.clock_names) << "] {";
        for (std::size_t i = 0; i < t.resets.size(); ++i)
            out << (i > 0 ? ", " : "") << ta.clock_names[t.resets[i]];
        out << "};\n";
    }
    return out.str();
}

std::string model_digest(const TimedAutomaton& ta)
{
    std::string text = serialize_model(ta);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace talu
