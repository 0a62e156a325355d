#include "mgfas/schedule.hpp"

#include "mgfas/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mgfas {

std::string to_string(ScheduleMode m) { return m == ScheduleMode::Classical ? "classical" : "efficient"; }

ScheduleMode parse_schedule_mode(const std::string& s) {
    if (s == "classical") return ScheduleMode::Classical;
    if (s == "efficient") return ScheduleMode::Efficient;
    throw ConfigError("unknown schedule '" + s + "' (expected classical or efficient)");
}

std::string to_string(const Quantity& q) {
    static const char* names[] = {"u", "v", "w", "p"};
    std::string s = names[q.var];
    if (q.tilde) s += "~";
    s += q.offset == 0 ? "^n" : q.offset > 0 ? "^{n+" + std::to_string(q.offset) + "}"
                                             : "^{n" + std::to_string(q.offset) + "}";
    return s;
}

std::string to_string(Formula f) {
    switch (f) {
    case Formula::MomentumRhs: return "momentum_rhs";
    case Formula::MomentumSolve: return "momentum_solve";
    case Formula::PressureSolve: return "pressure_poisson";
    case Formula::Correct: return "correct";
    case Formula::PressureUpdate: return "pressure_update";
    case Formula::Copy: return "copy";
    }
    return "?";
}

int SlotSchedule::slot_index(const std::string& name) const {
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i] == name) return static_cast<int>(i);
    return -1;
}

int SlotSchedule::initial_slot(const Quantity& q) const {
    for (const Binding& b : initial)
        if (b.q == q) return b.slot;
    return -1;
}

int expected_slots(ScheduleMode mode, int order, int dim) {
    if (mode == ScheduleMode::Efficient) return 2 * dim + 2;
    return order == 1 ? 3 * dim + 3 : 4 * dim + 3;
}

namespace {

Quantity cur(int v) { return {v, false, 0}; }
Quantity prev(int v) { return {v, false, -1}; }
Quantity next(int v) { return {v, false, 1}; }
Quantity tl(int v) { return {v, true, 1}; }
Quantity tl0(int v) { return {v, true, 0}; }

const char* kUpper[] = {"U", "V", "W", "P"};

struct Builder {
    SlotSchedule s;

    int slot(int var, const std::string& suffix) {
        const std::string name = std::string(kUpper[var]) + suffix;
        int i = s.slot_index(name);
        if (i < 0) {
            s.slots.push_back(name);
            i = static_cast<int>(s.slots.size()) - 1;
        }
        return i;
    }
    void init(const Quantity& q, int slot) { s.initial.push_back({q, slot}); }
    Step& add(std::string label, Formula f, int comp = 0) {
        Step st;
        st.label = std::move(label);
        st.formula = f;
        st.comp = comp;
        s.steps.push_back(st);
        return s.steps.back();
    }
};

SlotSchedule classical(int order, int dim) {
    Builder b;
    b.s.mode = ScheduleMode::Classical;
    b.s.order = order;
    b.s.dim = dim;
    // slot declaration order follows the tabulated layout
    for (int c = 0; c < dim; ++c) {
        b.slot(c, "_new");
        b.slot(c, "_old");
        if (order == 2) b.slot(c, "_2old");
        b.slot(c, "~_new");
    }
    b.slot(kPressure, "_new");
    b.slot(kPressure, "_old");
    b.slot(kPressure, "~_new");

    for (int c = 0; c < dim; ++c) {
        b.init(cur(c), b.slot(c, "_old"));
        if (order == 2) b.init(prev(c), b.slot(c, "_2old"));
        b.init(tl0(c), b.slot(c, "~_new"));
    }
    b.init(cur(kPressure), b.slot(kPressure, "_old"));
    b.init(tl0(kPressure), b.slot(kPressure, "~_new"));

    int label = 1;
    for (int c = 0; c < dim; ++c) {
        Step& rhs = b.add(std::to_string(label++), Formula::MomentumRhs, c);
        for (int d = 0; d < dim; ++d) {
            rhs.reads.push_back({cur(d), b.slot(d, "_old")});
            if (order == 2) {
                if (d < c)
                    rhs.reads.push_back({tl(d), b.slot(d, "~_new")});
                else
                    rhs.reads.push_back({prev(d), b.slot(d, "_2old")});
            }
        }
        rhs.reads.push_back({cur(kPressure), b.slot(kPressure, "_old")});
        Step& solve = b.add(std::to_string(label++), Formula::MomentumSolve, c);
        solve.writes.push_back({tl(c), b.slot(c, "~_new")});
        solve.guess = order == 1 ? Binding{tl0(c), b.slot(c, "~_new")} : Binding{cur(c), b.slot(c, "_old")};
    }
    Step& ps = b.add(std::to_string(label++), Formula::PressureSolve);
    for (int d = 0; d < dim; ++d) ps.reads.push_back({tl(d), b.slot(d, "~_new")});
    ps.writes.push_back({tl(kPressure), b.slot(kPressure, "~_new")});
    ps.guess = Binding{tl0(kPressure), b.slot(kPressure, "~_new")};
    for (int c = 0; c < dim; ++c) {
        Step& cr = b.add(std::to_string(label++), Formula::Correct, c);
        cr.reads = {{tl(c), b.slot(c, "~_new")}, {tl(kPressure), b.slot(kPressure, "~_new")}};
        cr.writes = {{next(c), b.slot(c, "_new")}};
    }
    Step& pu = b.add(std::to_string(label++), Formula::PressureUpdate);
    pu.reads = {{cur(kPressure), b.slot(kPressure, "_old")}, {tl(kPressure), b.slot(kPressure, "~_new")}};
    pu.writes = {{next(kPressure), b.slot(kPressure, "_new")}};
    for (int c = 0; c < dim; ++c) {
        const std::string l = std::to_string(label++);
        if (order == 2) {
            Step& lag = b.add(l, Formula::Copy, c);
            lag.reads = {{cur(c), b.slot(c, "_old")}};
            lag.writes = {{cur(c), b.slot(c, "_2old")}};
        }
        Step& cp = b.add(l, Formula::Copy, c);
        cp.reads = {{next(c), b.slot(c, "_new")}};
        cp.writes = {{next(c), b.slot(c, "_old")}};
    }
    Step& pc = b.add(std::to_string(label++), Formula::Copy, kPressure);
    pc.reads = {{next(kPressure), b.slot(kPressure, "_new")}};
    pc.writes = {{next(kPressure), b.slot(kPressure, "_old")}};
    return b.s;
}

SlotSchedule efficient(int order, int dim) {
    Builder b;
    b.s.mode = ScheduleMode::Efficient;
    b.s.order = order;
    b.s.dim = dim;
    for (int c = 0; c < dim; ++c) {
        b.slot(c, "_new");
        b.slot(c, "_old");
    }
    b.slot(kPressure, "_new");
    b.slot(kPressure, "_old");

    // first order: x^n in X_old, x~^n in X_new; second order: x^n in X_new, x^{n-1} in X_old
    for (int c = 0; c < dim; ++c) {
        if (order == 1) {
            b.init(cur(c), b.slot(c, "_old"));
            b.init(tl0(c), b.slot(c, "_new"));
        } else {
            b.init(cur(c), b.slot(c, "_new"));
            b.init(prev(c), b.slot(c, "_old"));
        }
    }
    b.init(cur(kPressure), b.slot(kPressure, "_old"));
    b.init(tl0(kPressure), b.slot(kPressure, "_new"));

    int label = 1;
    for (int c = 0; c < dim; ++c) {
        Step& rhs = b.add(std::to_string(label++), Formula::MomentumRhs, c);
        for (int d = 0; d < dim; ++d) {
            if (order == 1) {
                rhs.reads.push_back({cur(d), b.slot(d, "_old")});
            } else if (d < c) {
                rhs.reads.push_back({cur(d), b.slot(d, "_old")});
                rhs.reads.push_back({tl(d), b.slot(d, "_new")});
            } else {
                rhs.reads.push_back({cur(d), b.slot(d, "_new")});
                rhs.reads.push_back({prev(d), b.slot(d, "_old")});
            }
        }
        rhs.reads.push_back({cur(kPressure), b.slot(kPressure, "_old")});
        if (order == 2) {
            Step& lag = b.add(std::to_string(label++), Formula::Copy, c);
            lag.reads = {{cur(c), b.slot(c, "_new")}};
            lag.writes = {{cur(c), b.slot(c, "_old")}};
        }
        Step& solve = b.add(std::to_string(label++), Formula::MomentumSolve, c);
        solve.writes.push_back({tl(c), b.slot(c, "_new")});
        solve.guess = order == 1 ? Binding{tl0(c), b.slot(c, "_new")} : Binding{cur(c), b.slot(c, "_new")};
    }
    Step& ps = b.add(std::to_string(label++), Formula::PressureSolve);
    for (int d = 0; d < dim; ++d) ps.reads.push_back({tl(d), b.slot(d, "_new")});
    ps.writes.push_back({tl(kPressure), b.slot(kPressure, "_new")});
    ps.guess = Binding{tl0(kPressure), b.slot(kPressure, "_new")};
    for (int c = 0; c < dim; ++c) {
        Step& cr = b.add(std::to_string(label++), Formula::Correct, c);
        cr.reads = {{tl(c), b.slot(c, "_new")}, {tl(kPressure), b.slot(kPressure, "_new")}};
        cr.writes = {{next(c), b.slot(c, order == 1 ? "_old" : "_new")}};
    }
    Step& pu = b.add(std::to_string(label++), Formula::PressureUpdate);
    pu.reads = {{cur(kPressure), b.slot(kPressure, "_old")}, {tl(kPressure), b.slot(kPressure, "_new")}};
    pu.writes = {{next(kPressure), b.slot(kPressure, "_old")}};
    return b.s;
}

struct AbsQuantity {
    int var = 0;
    bool tilde = false;
    int time = 0;
    bool operator==(const AbsQuantity&) const = default;
};

AbsQuantity absolute(const Quantity& q, int n) { return {q.var, q.tilde, n + q.offset}; }

std::string describe(const AbsQuantity& a, int n) { return to_string(Quantity{a.var, a.tilde, a.time - n}); }

} // namespace

SlotSchedule make_schedule(ScheduleMode mode, int order, int dim) {
    if (order != 1 && order != 2) throw InvalidParams("scheme order must be 1 or 2");
    if (dim != 2 && dim != 3) throw InvalidParams("dimension must be 2 or 3");
    return mode == ScheduleMode::Classical ? classical(order, dim) : efficient(order, dim);
}

std::vector<Quantity> required_reads(Formula f, int comp, int order, int dim) {
    std::vector<Quantity> q;
    switch (f) {
    case Formula::MomentumRhs:
        for (int d = 0; d < dim; ++d) {
            q.push_back(cur(d));
            if (order == 2) q.push_back(d < comp ? tl(d) : prev(d));
        }
        q.push_back(cur(kPressure));
        break;
    case Formula::MomentumSolve: break;
    case Formula::PressureSolve:
        for (int d = 0; d < dim; ++d) q.push_back(tl(d));
        break;
    case Formula::Correct: q = {tl(comp), tl(kPressure)}; break;
    case Formula::PressureUpdate: q = {cur(kPressure), tl(kPressure)}; break;
    case Formula::Copy: break;
    }
    return q;
}

std::vector<Violation> validate_schedule(const SlotSchedule& s) {
    std::vector<Violation> out;
    const int nslots = static_cast<int>(s.slots.size());
    const int expected = expected_slots(s.mode, s.order, s.dim);
    if (nslots != expected)
        out.push_back({"-", to_string(s.mode) + " order-" + std::to_string(s.order) + " schedule uses " +
                                std::to_string(nslots) + " slots, expected " + std::to_string(expected)});

    std::vector<std::optional<AbsQuantity>> state(static_cast<std::size_t>(nslots));
    auto in_range = [&](int slot) { return slot >= 0 && slot < nslots; };
    for (const Binding& b : s.initial)
        if (in_range(b.slot)) state[static_cast<std::size_t>(b.slot)] = absolute(b.q, 0);

    std::set<std::string> seen;
    auto report = [&](const std::string& step, const std::string& msg) {
        if (seen.insert(step + "|" + msg).second) out.push_back({step, msg});
    };

    for (int n = 0; n < 3; ++n) {
        for (const Step& st : s.steps) {
            // (i) every quantity the formula needs is bound
            for (const Quantity& q : required_reads(st.formula, st.comp, s.order, s.dim)) {
                const bool bound = std::any_of(st.reads.begin(), st.reads.end(),
                                               [&](const Binding& b) { return b.q == q; });
                if (!bound) report(st.label, "missing binding for " + to_string(q) + " in " + to_string(st.formula));
            }
            // (ii) every bound read finds its quantity still resident
            auto check = [&](const Binding& b, const char* what) {
                if (!in_range(b.slot)) {
                    report(st.label, std::string(what) + " of " + to_string(b.q) + " from an unknown slot");
                    return;
                }
                const auto& held = state[static_cast<std::size_t>(b.slot)];
                if (!held || !(*held == absolute(b.q, n))) {
                    std::ostringstream os;
                    os << what << " of " << to_string(b.q) << " from " << s.slots[static_cast<std::size_t>(b.slot)]
                       << ", which holds " << (held ? describe(*held, n) : std::string("nothing"));
                    report(st.label, os.str());
                }
            };
            for (const Binding& b : st.reads) check(b, "read");
            if (st.guess) check(*st.guess, "initial guess");
            for (const Binding& b : st.writes) {
                if (!in_range(b.slot)) {
                    report(st.label, "write of " + to_string(b.q) + " to an unknown slot");
                    continue;
                }
                state[static_cast<std::size_t>(b.slot)] = absolute(b.q, n);
            }
        }
        // (iii) the next step starts from the declared initial layout
        for (const Binding& b : s.initial) {
            if (!in_range(b.slot)) continue;
            const auto& held = state[static_cast<std::size_t>(b.slot)];
            if (!held || !(*held == absolute(b.q, n + 1)))
                report("end", "after a full step " + s.slots[static_cast<std::size_t>(b.slot)] + " should hold " +
                                  to_string(b.q) + " but holds " + (held ? describe(*held, n + 1) : "nothing"));
        }
    }
    return out;
}

std::vector<std::string> dataflow(const SlotSchedule& s) {
    std::vector<std::string> edges;
    for (const Step& st : s.steps) {
        if (st.formula == Formula::Copy) continue;
        std::vector<std::string> in;
        for (const Binding& b : st.reads) in.push_back(to_string(b.q));
        std::sort(in.begin(), in.end());
        std::ostringstream os;
        os << to_string(st.formula) << "(" << st.comp << "):";
        for (const auto& x : in) os << " " << x;
        os << " ->";
        if (st.formula == Formula::MomentumSolve)
            os << " f_" << st.comp << " ->";
        for (const Binding& b : st.writes) os << " " << to_string(b.q);
        if (st.guess) os << " [guess " << to_string(st.guess->q) << "]";
        edges.push_back(os.str());
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

bool same_dataflow(const SlotSchedule& a, const SlotSchedule& b) { return dataflow(a) == dataflow(b); }

} // namespace mgfas
