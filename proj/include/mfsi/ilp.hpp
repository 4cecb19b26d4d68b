#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mfsi/errors.hpp"

namespace mfsi {

enum class Relation { Equal, LessEqual, GreaterEqual };

struct LinearConstraint {
    std::vector<std::int64_t> coefficients;
    Relation relation = Relation::Equal;
    std::int64_t rhs = 0;
};

/// Integer feasibility problem over box-bounded variables. An upper bound of
/// ILPInstance::unbounded means "derive it from the constraints".
struct ILPInstance {
    static constexpr std::int64_t unbounded = std::numeric_limits<std::int64_t>::max() / 4;

    int var_count = 0;
    std::vector<std::int64_t> lower;
    std::vector<std::int64_t> upper;
    std::vector<LinearConstraint> constraints;

    /// Adds a variable with the given bounds and returns its index.
    int add_variable(std::int64_t lo, std::int64_t hi = unbounded)
    {
        lower.push_back(lo);
        upper.push_back(hi);
        for (auto & c : constraints)
            c.coefficients.push_back(0);
        return var_count++;
    }

    void add_constraint(std::vector<std::int64_t> coefficients, Relation rel, std::int64_t rhs)
    {
        coefficients.resize(static_cast<std::size_t>(var_count), 0);
        constraints.push_back({std::move(coefficients), rel, rhs});
    }
};

inline bool satisfies(const ILPInstance & p, const std::vector<std::int64_t> & x)
{
    if (static_cast<int>(x.size()) != p.var_count)
        return false;
    for (int i = 0; i < p.var_count; ++i)
        if (x[i] < p.lower[i] || (p.upper[i] != ILPInstance::unbounded && x[i] > p.upper[i]))
            return false;
    for (const auto & c : p.constraints) {
        std::int64_t lhs = 0;
        for (int i = 0; i < p.var_count; ++i)
            lhs += c.coefficients[i] * x[i];
        if ((c.relation == Relation::Equal && lhs != c.rhs) || (c.relation == Relation::LessEqual && lhs > c.rhs) ||
            (c.relation == Relation::GreaterEqual && lhs < c.rhs))
            return false;
    }
    return true;
}

namespace detail {

    inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
    {
        std::int64_t q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0)))
            --q;
        return q;
    }

    inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

    class IlpSearch {
    public:
        explicit IlpSearch(const ILPInstance & p) : p_(p)
        {
            // Normalise to rows of the form  a.x <= b.
            for (const auto & c : p.constraints) {
                if (static_cast<int>(c.coefficients.size()) != p.var_count)
                    throw InvalidInput("constraint length differs from variable count");
                if (c.relation != Relation::GreaterEqual)
                    rows_.push_back({c.coefficients, c.rhs});
                if (c.relation != Relation::LessEqual) {
                    Row neg{c.coefficients, -c.rhs};
                    for (auto & a : neg.a)
                        a = -a;
                    rows_.push_back(std::move(neg));
                }
            }
        }

        std::optional<std::vector<std::int64_t>> run()
        {
            std::vector<std::int64_t> lo = p_.lower, hi = p_.upper;
            for (int i = 0; i < p_.var_count; ++i)
                if (lo[i] == ILPInstance::unbounded || lo[i] <= -ILPInstance::unbounded)
                    throw InvalidInput("variable " + std::to_string(i) + " has no finite lower bound");
            if (!propagate(lo, hi))
                return std::nullopt;
            for (int i = 0; i < p_.var_count; ++i)
                if (hi[i] >= ILPInstance::unbounded)
                    throw InvalidInput("variable " + std::to_string(i) + " is unbounded");
            if (search(lo, hi))
                return solution_;
            return std::nullopt;
        }

    private:
        struct Row {
            std::vector<std::int64_t> a;
            std::int64_t b;
        };

        // Bound tightening to a fixpoint; false on an empty domain.
        bool propagate(std::vector<std::int64_t> & lo, std::vector<std::int64_t> & hi) const
        {
            const std::int64_t inf = ILPInstance::unbounded;
            for (bool changed = true; changed;) {
                changed = false;
                for (const auto & r : rows_) {
                    // minimum of a.x over the box; track how many terms are -inf
                    std::int64_t min_sum = 0;
                    int infinite = 0;
                    int infinite_var = -1;
                    for (int i = 0; i < p_.var_count; ++i) {
                        if (r.a[i] > 0)
                            min_sum += r.a[i] * lo[i];
                        else if (r.a[i] < 0) {
                            if (hi[i] >= inf) {
                                ++infinite;
                                infinite_var = i;
                            }
                            else
                                min_sum += r.a[i] * hi[i];
                        }
                    }
                    if (infinite == 0 && min_sum > r.b)
                        return false;
                    if (infinite > 1)
                        continue;
                    for (int i = 0; i < p_.var_count; ++i) {
                        if (r.a[i] == 0 || (infinite == 1 && i != infinite_var))
                            continue;
                        std::int64_t own = r.a[i] > 0 ? r.a[i] * lo[i] : (hi[i] >= inf ? 0 : r.a[i] * hi[i]);
                        std::int64_t slack = r.b - (min_sum - own);
                        if (r.a[i] > 0) {
                            std::int64_t bound = floor_div(slack, r.a[i]);
                            if (bound < hi[i]) {
                                hi[i] = bound;
                                changed = true;
                            }
                        }
                        else {
                            std::int64_t bound = ceil_div(slack, r.a[i]);
                            if (bound > lo[i]) {
                                lo[i] = bound;
                                changed = true;
                            }
                        }
                        if (lo[i] > hi[i])
                            return false;
                    }
                }
            }
            return true;
        }

        bool search(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi)
        {
            // most constrained open variable first, ties by index
            int pick = -1;
            for (int i = 0; i < p_.var_count; ++i)
                if (lo[i] < hi[i] && (pick < 0 || hi[i] - lo[i] < hi[pick] - lo[pick]))
                    pick = i;
            if (pick < 0) {
                if (!satisfies(p_, lo))
                    return false;
                solution_ = lo;
                return true;
            }
            for (std::int64_t value = lo[pick]; value <= hi[pick]; ++value) {
                auto l = lo, h = hi;
                l[pick] = h[pick] = value;
                if (propagate(l, h) && search(std::move(l), std::move(h)))
                    return true;
            }
            return false;
        }

        const ILPInstance & p_;
        std::vector<Row> rows_;
        std::vector<std::int64_t> solution_;
    };

} // namespace detail

/// A satisfying integer assignment, or nullopt iff none exists. Complete
/// depth-first search with interval propagation after every assignment.
/// Throws InvalidInput when a variable stays unbounded after propagation.
inline std::optional<std::vector<std::int64_t>> feasible(const ILPInstance & p)
{
    if (static_cast<int>(p.lower.size()) != p.var_count || static_cast<int>(p.upper.size()) != p.var_count)
        throw InvalidInput("bounds length differs from variable count");
    return detail::IlpSearch(p).run();
}

} // namespace mfsi
