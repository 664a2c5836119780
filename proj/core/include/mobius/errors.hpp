#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

// Invalid numeric parameter (negative lambda, R too small, beta outside an open range).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Query beyond what a finite table can answer reliably.
class OutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Mode (m, n) with m + n even: not invariant under the deck transformation.
class AdmissibilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedOrderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, double y, int branch)
        : std::domain_error(what), y_(y), branch_(branch) {}
    double y() const { return y_; }
    int branch() const { return branch_; }

private:
    double y_;
    int branch_;
};

class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ClassificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal invariant did not hold (e.g. a double-cover preimage with 3 components).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mobius
