#pragma once

#include <stdexcept>
#include <string>

namespace snk {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid construction parameters (bad family params, a >= b, ...).
class parameter_error : public error {
public:
    using error::error;
};

/// Evaluation requested outside the admissible domain.
class domain_error : public error {
public:
    using error::error;
};

/// A function oracle could not produce a value inside its eval domain.
class oracle_error : public error {
public:
    using error::error;
};

/// The instance violates M in [0, n] (or the bounded equivalent).
class infeasible_error : public error {
public:
    using error::error;
};

/// The objective does not satisfy the structural assumptions the
/// solver relies on (antisymmetry / curvature / bracket signs).
class assumption_error : public error {
public:
    using error::error;
};

/// The requested operation exceeds a hard capability limit.
class capability_error : public error {
public:
    using error::error;
};

/// Internal consistency check failed; indicates a solver bug or a
/// preprocessing tolerance that is too loose.
class internal_error : public error {
public:
    using error::error;
};

} // namespace snk
