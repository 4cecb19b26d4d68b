#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "mfsi/errors.hpp"

namespace mfsi {

/// Counts explored guesses / search nodes and throws BudgetExceeded once the
/// cap is passed. Shared by every exponential search in the library.
class SearchBudget {
public:
    explicit SearchBudget(std::uint64_t limit = std::numeric_limits<std::uint64_t>::max())
        : limit_(limit) {}

    void tick(std::uint64_t amount = 1)
    {
        used_ += amount;
        if (used_ > limit_)
            throw BudgetExceeded("search budget of " + std::to_string(limit_) + " exhausted");
    }

    std::uint64_t used() const noexcept { return used_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

} // namespace mfsi
