#pragma once

#include <string>
#include <vector>

namespace rtmf {

// Reference command r(t). Trapezoid: ramp up at `slope` to `amplitude`, hold,
// ramp down, rest at zero, repeating every `period`; continuous with rate
// bounded by the slope.
struct CommandSignal {
    enum class Kind { zero, sinusoid, trapezoid, step };

    Kind kind = Kind::sinusoid;
    double amplitude = 1.0;
    double period = 6.283185307179586;  // sinusoid at 1 rad/s
    double slope = 0.5;                 // trapezoid ramp rate, V/s

    void validate() const;
    double eval(double t) const;

    bool operator==(const CommandSignal&) const = default;
};

CommandSignal default_trapezoid();

// Disturbance w(t) on the plant, with the bounds theta_M = sup|w| and
// theta_dot_M = sup|w'| that the controller and observer gain rules consume.
// Tables are linearly interpolated and held constant beyond their ends.
struct Disturbance {
    enum class Kind { zero, sinusoid, constant, table };

    Kind kind = Kind::sinusoid;
    double amplitude = 5.0;
    double frequency = 1.0;  // rad/s
    std::vector<double> table_t;
    std::vector<double> table_w;

    void validate() const;
    double eval(double t) const;
    double sup_abs() const;
    double sup_rate() const;

    bool operator==(const Disturbance&) const = default;
};

std::string to_string(CommandSignal::Kind kind);
std::string to_string(Disturbance::Kind kind);
bool command_kind_from_string(const std::string& name, CommandSignal::Kind& out);
bool disturbance_kind_from_string(const std::string& name, Disturbance::Kind& out);

}  // namespace rtmf
