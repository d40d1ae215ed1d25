#pragma once

#include <stdexcept>
#include <string>

namespace qhs {

/// Scenario or config rejected before the simulation starts.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The event queue drained while jobs were still unfinished. The message
/// names every blocked job and the resource it is waiting for.
class DeadlockError : public std::runtime_error {
public:
    explicit DeadlockError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Broken engine invariant: scheduling into the past, releasing more nodes
/// than held, enqueueing on the QPU without the required token/lock, ...
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Calibration inputs are mutually inconsistent (negative solution or
/// residuals above tolerance).
class CalibrationError : public std::runtime_error {
public:
    explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qhs
