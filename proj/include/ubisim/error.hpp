#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ubisim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unknown state, unknown alphabet symbol, or a malformed system.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A precondition of an operation does not hold (mismatched alphabets, wrong
/// structure variant, a map that is not oplax, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// An enumerative check was asked to work on a carrier or alphabet beyond its cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// The operation is deliberately not provided for this system type.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A recorded observation contradicts an earlier one on a shared prefix.
class InconsistencyError : public Error {
public:
    InconsistencyError(std::vector<std::size_t> prefix, const std::string& message)
        : Error(message), prefix_(std::move(prefix)) {}

    const std::vector<std::size_t>& prefix() const noexcept { return prefix_; }

private:
    std::vector<std::size_t> prefix_;
};

}  // namespace ubisim
