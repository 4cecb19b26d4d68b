#pragma once

#include <stdexcept>
#include <string>

namespace mfsi {

/// Malformed input: bad sizes, broken instance invariants, unparsable files.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A solver was handed a graph outside the class it is specialised for.
class ClassViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The search passed its caller-supplied cap; the answer is "unknown", not "no".
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mfsi
