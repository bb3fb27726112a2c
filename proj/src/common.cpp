#include "oplab/common.hpp"

namespace oplab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvariantViolation: return "invariant violation";
        case ErrorKind::DegenerateInput: return "degenerate input";
        case ErrorKind::PreconditionViolation: return "precondition violation";
        case ErrorKind::NotAContraction: return "not a contraction";
        case ErrorKind::Infeasible: return "infeasible";
        case ErrorKind::NonConvergence: return "non-convergence";
        case ErrorKind::NotABasis: return "not a basis";
        case ErrorKind::IllPosed: return "ill-posed";
        case ErrorKind::Divergence: return "divergence";
        case ErrorKind::InputError: return "input error";
    }
    return "error";
}

}  // namespace oplab
