#ifndef PROPALG_ERROR_HPP
#define PROPALG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace propalg {

/// Base class for all failures raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed signature usage: unknown operation, arity mismatch,
/// duplicate operation names, incompatible signatures.
class SignatureError : public Error {
public:
    using Error::Error;
};

/// A stated precondition of an operation does not hold
/// (carrier mismatch, non-congruence input, failed axiom, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The requested operation is not defined for the algebra's backing
/// (e.g. bijectivity of a map out of an integer-formula algebra).
class UnsupportedBackingError : public Error {
public:
    using Error::Error;
};

/// A check that is guaranteed to succeed once its preconditions hold
/// came back false.  This indicates a bug, never a normal result.
class InternalInconsistencyError : public Error {
public:
    using Error::Error;
};

/// Integer evaluation left the exactly-representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Spec-file syntax or resolution problem; carries a 1-based line number
/// (0 when no position applies).
class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

} // namespace propalg

#endif
