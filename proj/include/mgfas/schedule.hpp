#pragma once

// Slot schedules for the projection schemes.
//
// A schedule is an ordered list of steps, each binding the logical quantities
// it reads and writes (u^n, u~^{n+1}, p~^{n+1}, ...) to resident field slots.
// Four schedules are built in: classical and memory-efficient layouts of the
// first- and second-order schemes, in 2D (w steps and slots dropped) or 3D.

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mgfas {

enum class ScheduleMode { Classical, Efficient };

std::string to_string(ScheduleMode m);
ScheduleMode parse_schedule_mode(const std::string& s);

/// Variable 0..2 = velocity component, 3 = pressure.
inline constexpr int kPressure = 3;

/// A logical quantity relative to the current time level n.
struct Quantity {
    int var = 0;
    bool tilde = false; // the intermediate (tilde) quantity
    int offset = 0;     // -1: n-1, 0: n, +1: n+1

    bool operator==(const Quantity&) const = default;
    auto operator<=>(const Quantity&) const = default;
};

std::string to_string(const Quantity& q);

enum class Formula {
    MomentumRhs,    // f_c from velocities and p^n
    MomentumSolve,  // x~^{n+1} - b lap x~^{n+1} = f_c
    PressureSolve,  // dt div grad p~ = div u~
    Correct,        // x^{n+1} = x~^{n+1} - dt (grad p~)_c
    PressureUpdate, // p^{n+1} = p^n + p~^{n+1}
    Copy,           // slot-to-slot move of one quantity
};

std::string to_string(Formula f);

struct Binding {
    Quantity q;
    int slot = 0;
};

struct Step {
    std::string label; // step number in the tabulated procedure
    Formula formula = Formula::Copy;
    int comp = 0;      // component for per-component formulas
    std::vector<Binding> reads;
    std::vector<Binding> writes;
    std::optional<Binding> guess; // initial iterate for solves
};

struct SlotSchedule {
    ScheduleMode mode = ScheduleMode::Efficient;
    int order = 1;
    int dim = 3;
    std::vector<std::string> slots;
    std::vector<Binding> initial; // slot contents at the start of a time step
    std::vector<Step> steps;

    int slot_index(const std::string& name) const;
    /// Slot holding q at the start of a time step, or -1.
    int initial_slot(const Quantity& q) const;
};

/// The built-in schedules.
SlotSchedule make_schedule(ScheduleMode mode, int order, int dim);

/// Quantities a formula instance must read, independent of any schedule.
std::vector<Quantity> required_reads(Formula f, int comp, int order, int dim);

struct Violation {
    std::string step;
    std::string message;
};

/// Checks a schedule by symbolic execution over three consecutive time steps:
/// every formula read must be bound and present in its slot, no quantity may be
/// read after being overwritten, and the slot count must match the mode
/// (efficient: 2d+2; classical: 3d+3 first order, 4d+3 second order).
std::vector<Violation> validate_schedule(const SlotSchedule& s);

/// Quantity-level dataflow: one entry per non-copy step, "formula(comp): inputs -> output [guess]".
std::vector<std::string> dataflow(const SlotSchedule& s);

/// True when both schedules compute the same dataflow graph.
bool same_dataflow(const SlotSchedule& a, const SlotSchedule& b);

/// Expected resident slot count.
int expected_slots(ScheduleMode mode, int order, int dim);

} // namespace mgfas
