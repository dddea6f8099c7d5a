#pragma once

#include <stdexcept>
#include <string>

namespace protoforge {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Spec file syntax or semantic failure. `line()` is 1-based, 0 when the
/// problem is not tied to a single line (missing key, invariant violation).
class SpecError : public Error {
public:
    SpecError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    int line() const noexcept { return line_; }

private:
    int line_;
};

class EncodeError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class TraceError : public Error {
public:
    using Error::Error;
};

class SmtError : public Error {
public:
    using Error::Error;
};

/// External solver could not be run to completion (spawn failure, timeout).
class ExternalSolverError : public SmtError {
public:
    enum class Kind { Spawn, Timeout, Status };
    ExternalSolverError(Kind kind, const std::string& what) : SmtError(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class SimError : public Error {
public:
    using Error::Error;
};

} // namespace protoforge
