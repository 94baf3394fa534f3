#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments: unknown names, dimension mismatches, malformed requests.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Expression, sum or config text that does not follow the grammar.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected = {})
        : Error(format(message, offset, expected)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(const std::string& message, std::size_t offset,
                              const std::vector<std::string>& expected) {
        std::string s = message + " at offset " + std::to_string(offset);
        if (!expected.empty()) {
            s += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) s += ", ";
                s += expected[i];
            }
            s += ")";
        }
        return s;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// A play sequence that does not terminate: a cycle, a measure that failed to
/// decrease, or an exploration that exceeded its node cap.
class TerminationError : public Error {
public:
    using Error::Error;
};

/// A size guard refused to run (grid cell cap, oracle expansion cap).
class GuardError : public Error {
public:
    using Error::Error;
};

/// Two independent computations disagreed. Always a bug in this library.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace cgt
