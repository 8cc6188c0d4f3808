#pragma once

#include <stdexcept>
#include <string>

namespace parity {

/// Malformed or inconsistent input (unknown ids, parse errors, unmet input conditions).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied budget or cap was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The request lies outside the sizes an exhaustive routine supports.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A catalog fixture failed one of its self-check invariants.
class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace parity
