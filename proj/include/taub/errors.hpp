#pragma once

#include <stdexcept>
#include <string>

namespace taub {

// Inputs outside the domain of an operation (poles, excluded chart points,
// degenerate kernels). The command-line tool maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncations or quadratures that fail to meet their error budget.
// The command-line tool maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PoleError : public InputError {
public:
    using InputError::InputError;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class DegenerateKernelError : public InputError {
public:
    using InputError::InputError;
};

class ChartError : public InputError {
public:
    using InputError::InputError;
};

class BranchError : public InputError {
public:
    using InputError::InputError;
};

class NotUnitaryError : public InputError {
public:
    using InputError::InputError;
};

class UndefinedError : public InputError {
public:
    using InputError::InputError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class TruncationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace taub
