#ifndef HURWITZ_ERRORS_HPP
#define HURWITZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hurwitz {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition; nothing was computed.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configured size cap (group order, state count, vector budget) was hit.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// A computation finished but failed an internal consistency gate
/// (d^2 != 0, modular ranks disagree, Weil bound violated, ...).
class ComputationError : public Error {
public:
    using Error::Error;
};

}  // namespace hurwitz

#endif
