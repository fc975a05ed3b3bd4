#pragma once

#include <stdexcept>
#include <string>

namespace hetsearch {

enum class ErrorKind {
    parse,       // JSON syntax error, schema violation, expression syntax error
    eval,        // expression evaluation failure (division by zero, unbound variable, ...)
    io,          // file read/write failure
    too_large,   // enumeration space above the oracle limit
    infeasible,  // no feasible assignment exists
    usage,       // precondition / argument misuse
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace hetsearch
