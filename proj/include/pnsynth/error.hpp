#pragma once

#include <stdexcept>
#include <string>

namespace pnsynth {

// All library failures derive from Error so callers (notably the CLI) can
// map them onto exit codes by category.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (bad file, wrong precondition on values).
class InputError : public Error {
public:
    using Error::Error;
};

// The input is well formed but outside what an operation accepts.
class UnsupportedInput : public InputError {
public:
    using InputError::InputError;
};

class LabelOverlap : public InputError {
public:
    using InputError::InputError;
};

class TransitionOverlap : public InputError {
public:
    using InputError::InputError;
};

class UnknownState : public InputError {
public:
    using InputError::InputError;
};

class UnknownTransition : public InputError {
public:
    using InputError::InputError;
};

class NotEnabled : public InputError {
public:
    using InputError::InputError;
};

class NotAdequate : public InputError {
public:
    using InputError::InputError;
};

class Unreachable : public InputError {
public:
    using InputError::InputError;
};

class DegenerateData : public InputError {
public:
    using InputError::InputError;
};

// Parse failure with the 1-based line it occurred on.
class ParseError : public InputError {
public:
    enum class Kind { Syntax, DuplicateArc, ReservedName };

    ParseError(Kind kind, std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

// Resource limits: the state space is infinite or too large.
class ResourceError : public Error {
public:
    using Error::Error;
};

class Unbounded : public ResourceError {
public:
    using ResourceError::ResourceError;
};

class StateCapExceeded : public ResourceError {
public:
    using ResourceError::ResourceError;
};

// The label classes of an input do not recombine into the input, which
// certifies that it has no Petri net solution.
class NotAProduct : public Error {
public:
    using Error::Error;
};

}  // namespace pnsynth
