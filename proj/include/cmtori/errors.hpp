#pragma once

#include <stdexcept>
#include <string>

namespace cmtori {

/// A formula needs an invariant the library cannot compute and the caller
/// did not supply. `missing()` names it (e.g. "Q").
class InsufficientInvariants : public std::runtime_error {
public:
    InsufficientInvariants(std::string missing, const std::string& what)
        : std::runtime_error(what), missing_(std::move(missing)) {}
    const std::string& missing() const { return missing_; }

private:
    std::string missing_;
};

/// Caller-supplied overrides contradict a value the library computes.
class InconsistentInvariants : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A theorem hypothesis was not asserted by the caller.
class HypothesisNotAsserted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Level data yields a non-integral double-coset count.
class InconsistentLevel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A truncated p-adic computation changed when recomputed one level higher.
class PrecisionInstability : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed field specification text; `position` is a 0-based offset.
class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::invalid_argument("position " + std::to_string(position) + ": " + message), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace cmtori
