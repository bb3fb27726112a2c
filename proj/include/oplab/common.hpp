#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace oplab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Every failure raised by the library carries one of these kinds so the CLI
// can map it onto an exit status without parsing message text.
enum class ErrorKind {
    InvariantViolation,
    DegenerateInput,
    PreconditionViolation,
    NotAContraction,
    Infeasible,
    NonConvergence,
    NotABasis,
    IllPosed,
    Divergence,
    InputError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace oplab
