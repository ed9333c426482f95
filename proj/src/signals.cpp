#include "rtmf/signals.hpp"

#include <algorithm>
#include <cmath>

#include "rtmf/error.hpp"

namespace rtmf {

void CommandSignal::validate() const {
    if (!std::isfinite(amplitude) || !std::isfinite(period) || !std::isfinite(slope)) {
        fail(ErrorKind::validation, "command signal parameters must be finite");
    }
    if (kind == Kind::sinusoid && !(period > 0.0)) {
        fail(ErrorKind::validation, "sinusoid command needs period > 0");
    }
    if (kind == Kind::trapezoid) {
        if (!(period > 0.0) || !(slope > 0.0) || !(amplitude > 0.0)) {
            fail(ErrorKind::validation, "trapezoid command needs positive amplitude, period, slope");
        }
        // Ramp up + ramp down must fit inside one period.
        if (2.0 * amplitude / slope > period) {
            fail(ErrorKind::validation, "trapezoid ramps do not fit into the period");
        }
    }
}

double CommandSignal::eval(double t) const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::step:
            return t >= 0.0 ? amplitude : 0.0;
        case Kind::sinusoid:
            return amplitude * std::sin(2.0 * M_PI * t / period);
        case Kind::trapezoid: {
            const double ramp = amplitude / slope;
            const double hold = period / 2.0 - ramp;  // plateau, then matching rest
            double tau = std::fmod(t, period);
            if (tau < 0.0) tau += period;
            if (tau < ramp) return slope * tau;
            if (tau < ramp + hold) return amplitude;
            if (tau < 2.0 * ramp + hold) return amplitude - slope * (tau - ramp - hold);
            return 0.0;
        }
    }
    return 0.0;
}

CommandSignal default_trapezoid() {
    CommandSignal c;
    c.kind = CommandSignal::Kind::trapezoid;
    c.amplitude = 1.0;
    c.period = 8.0;
    c.slope = 0.5;  // 2 s ramp
    return c;
}

void Disturbance::validate() const {
    if (!std::isfinite(amplitude) || !std::isfinite(frequency)) {
        fail(ErrorKind::validation, "disturbance parameters must be finite");
    }
    if (kind == Kind::sinusoid && !(frequency > 0.0)) {
        fail(ErrorKind::validation, "sinusoid disturbance needs frequency > 0");
    }
    if (kind == Kind::table) {
        if (table_t.size() < 2 || table_t.size() != table_w.size()) {
            fail(ErrorKind::validation, "disturbance table needs matching t/w arrays (>= 2 points)");
        }
        for (std::size_t i = 0; i + 1 < table_t.size(); ++i) {
            if (!(table_t[i] < table_t[i + 1])) {
                fail(ErrorKind::validation, "disturbance table times must increase strictly");
            }
        }
        for (double w : table_w) {
            if (!std::isfinite(w)) fail(ErrorKind::validation, "disturbance table values must be finite");
        }
    }
}

double Disturbance::eval(double t) const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::constant:
            return amplitude;
        case Kind::sinusoid:
            return amplitude * std::sin(frequency * t);
        case Kind::table: {
            if (t <= table_t.front()) return table_w.front();
            if (t >= table_t.back()) return table_w.back();
            const auto it = std::upper_bound(table_t.begin(), table_t.end(), t);
            const std::size_t hi = static_cast<std::size_t>(it - table_t.begin());
            const std::size_t lo = hi - 1;
            const double f = (t - table_t[lo]) / (table_t[hi] - table_t[lo]);
            return table_w[lo] + f * (table_w[hi] - table_w[lo]);
        }
    }
    return 0.0;
}

double Disturbance::sup_abs() const {
    switch (kind) {
        case Kind::zero:
            return 0.0;
        case Kind::constant:
        case Kind::sinusoid:
            return std::abs(amplitude);
        case Kind::table: {
            double sup = 0.0;
            for (double w : table_w) sup = std::max(sup, std::abs(w));
            return sup;
        }
    }
    return 0.0;
}

double Disturbance::sup_rate() const {
    switch (kind) {
        case Kind::zero:
        case Kind::constant:
            return 0.0;
        case Kind::sinusoid:
            return std::abs(amplitude * frequency);
        case Kind::table: {
            double sup = 0.0;
            for (std::size_t i = 0; i + 1 < table_t.size(); ++i) {
                sup = std::max(sup, std::abs((table_w[i + 1] - table_w[i]) /
                                             (table_t[i + 1] - table_t[i])));
            }
            return sup;
        }
    }
    return 0.0;
}

std::string to_string(CommandSignal::Kind kind) {
    switch (kind) {
        case CommandSignal::Kind::zero: return "zero";
        case CommandSignal::Kind::sinusoid: return "sinusoid";
        case CommandSignal::Kind::trapezoid: return "trapezoid";
        case CommandSignal::Kind::step: return "step";
    }
    return "zero";
}

std::string to_string(Disturbance::Kind kind) {
    switch (kind) {
        case Disturbance::Kind::zero: return "zero";
        case Disturbance::Kind::sinusoid: return "sinusoid";
        case Disturbance::Kind::constant: return "constant";
        case Disturbance::Kind::table: return "table";
    }
    return "zero";
}

bool command_kind_from_string(const std::string& name, CommandSignal::Kind& out) {
    if (name == "zero") out = CommandSignal::Kind::zero;
    else if (name == "sinusoid") out = CommandSignal::Kind::sinusoid;
    else if (name == "trapezoid") out = CommandSignal::Kind::trapezoid;
    else if (name == "step") out = CommandSignal::Kind::step;
    else return false;
    return true;
}

bool disturbance_kind_from_string(const std::string& name, Disturbance::Kind& out) {
    if (name == "zero") out = Disturbance::Kind::zero;
    else if (name == "sinusoid") out = Disturbance::Kind::sinusoid;
    else if (name == "constant") out = Disturbance::Kind::constant;
    else if (name == "table") out = Disturbance::Kind::table;
    else return false;
    return true;
}

}  // namespace rtmf
