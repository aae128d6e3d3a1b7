#pragma once

#include <stdexcept>
#include <string>

namespace hosc {

// Invalid arguments and malformed descriptors: the caller asked for something
// outside an operation's domain. The CLI maps these to exit code 2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation could not meet its error contract (quadrature or integrator
// nonconvergence, exhausted series budget, overflow). CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hosc
