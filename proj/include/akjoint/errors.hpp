#pragma once

#include <stdexcept>

namespace akjoint {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter set violates its documented invariants.
struct InvalidParameters : Error {
    using Error::Error;
};

/// Kernel quantities requested on the singular surface a(t)·b·t = 0.
struct SingularTime : Error {
    using Error::Error;
};

/// An adaptive procedure exhausted its subdivision budget before
/// reaching the requested accuracy, or an expected decay law failed.
struct NonConvergence : Error {
    using Error::Error;
};

/// A propagated state produced a nonpositive variance (only possible
/// for unphysical inputs).
struct DegenerateState : Error {
    using Error::Error;
};

/// The complex quadratic form of a Gaussian integral is not invertible.
struct SingularQuadraticForm : Error {
    using Error::Error;
};

} // namespace akjoint
