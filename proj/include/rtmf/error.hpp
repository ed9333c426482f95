#pragma once

#include <stdexcept>
#include <string>

namespace rtmf {

// Error taxonomy mirrors the CLI exit codes: validation -> 2, infeasible -> 3,
// divergence -> 4; numeric covers internal contract breaches (exit 1).
enum class ErrorKind { validation, infeasible, divergence, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

}  // namespace rtmf
