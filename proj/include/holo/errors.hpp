#pragma once

#include <stdexcept>
#include <string>

namespace holo {

// Bad arguments, malformed input files, grammar violations. CLI maps these
// to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Parse errors carry the offset into the source text.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Input is well-formed but outside the fragment an operation can decide
// (e.g. exp of a nonlinear argument where a polynomial structure is needed).
class UnsupportedInputError : public std::runtime_error {
public:
    explicit UnsupportedInputError(const std::string& what)
        : std::runtime_error(what) {}
};

// A numeric routine could not reach its accuracy contract (winding integral
// not settling near an integer, Newton refinement not converging, ...).
class AccuracyError : public std::runtime_error {
public:
    explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace holo
