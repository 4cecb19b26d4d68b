#pragma once

#include <cstdint>
#include <vector>

#include "mfsi/errors.hpp"

namespace mfsi {

/// Arithmetic in the prime field of order 2^61 - 1.
namespace modp {

    inline constexpr std::uint64_t prime = (std::uint64_t{1} << 61) - 1;

    inline std::uint64_t add(std::uint64_t a, std::uint64_t b)
    {
        std::uint64_t s = a + b;
        return s >= prime ? s - prime : s;
    }

    inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + prime - b; }

    inline std::uint64_t mul(std::uint64_t a, std::uint64_t b)
    {
        unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        std::uint64_t lo = static_cast<std::uint64_t>(p & prime);
        std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
        return add(lo, hi);
    }

    inline std::uint64_t pow(std::uint64_t a, std::uint64_t e)
    {
        std::uint64_t r = 1;
        for (; e; e >>= 1, a = mul(a, a))
            if (e & 1)
                r = mul(r, a);
        return r;
    }

    inline std::uint64_t inverse(std::uint64_t a) { return pow(a, prime - 2); }

    inline std::uint64_t neg(std::uint64_t a) { return a == 0 ? 0 : prime - a; }

} // namespace modp

/// Shape of a truncated multivariate polynomial ring: variable i keeps
/// exponents 0..bound[i]. Monomials are stored in mixed radix, variable 0
/// least significant, so adding two exponent vectors that stay inside the box
/// is adding their indices.
class MonomialBox {
public:
    MonomialBox() : size_(1) {}

    explicit MonomialBox(std::vector<std::int64_t> bound) : bound_(std::move(bound)), size_(1)
    {
        for (auto b : bound_) {
            if (b < 0)
                throw InvalidInput("negative truncation bound");
            stride_.push_back(size_);
            size_ *= static_cast<std::size_t>(b + 1);
        }
    }

    std::size_t size() const noexcept { return size_; }
    std::size_t variables() const noexcept { return bound_.size(); }
    const std::vector<std::int64_t> & bound() const noexcept { return bound_; }

    /// Index of an exponent vector, or size() when it falls outside the box.
    std::size_t index(const std::vector<std::int64_t> & exponent) const
    {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < bound_.size(); ++i) {
            if (exponent[i] < 0 || exponent[i] > bound_[i])
                return size_;
            idx += static_cast<std::size_t>(exponent[i]) * stride_[i];
        }
        return idx;
    }

    std::vector<std::int64_t> exponent(std::size_t idx) const
    {
        std::vector<std::int64_t> e(bound_.size());
        for (std::size_t i = 0; i < bound_.size(); ++i) {
            e[i] = static_cast<std::int64_t>(idx / stride_[i] % static_cast<std::size_t>(bound_[i] + 1));
        }
        return e;
    }

private:
    std::vector<std::int64_t> bound_;
    std::vector<std::size_t> stride_;
    std::size_t size_;
};

using Poly = std::vector<std::uint64_t>; // dense coefficients over a MonomialBox

namespace detail {

    inline bool is_zero(const Poly & p)
    {
        for (auto c : p)
            if (c)
                return false;
        return true;
    }

    // out += a * b, truncated to the box.
    inline void mul_add(const MonomialBox & box, const Poly & a, const Poly & b, Poly & out)
    {
        const std::size_t vars = box.variables();
        const auto & bound = box.bound();
        std::vector<std::int64_t> ea(vars), eb(vars);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i])
                continue;
            // decompose i, then walk the sub-box bound - ea with an odometer
            std::size_t rest = i;
            for (std::size_t v = 0; v < vars; ++v) {
                ea[v] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(bound[v] + 1));
                rest /= static_cast<std::size_t>(bound[v] + 1);
            }
            std::fill(eb.begin(), eb.end(), 0);
            std::size_t j = 0;
            while (true) {
                if (b[j])
                    out[i + j] = modp::add(out[i + j], modp::mul(a[i], b[j]));
                // advance odometer
                std::size_t v = 0;
                std::size_t stride = 1;
                for (; v < vars; ++v) {
                    if (eb[v] < bound[v] - ea[v]) {
                        ++eb[v];
                        j += stride;
                        break;
                    }
                    j -= static_cast<std::size_t>(eb[v]) * stride;
                    eb[v] = 0;
                    stride *= static_cast<std::size_t>(bound[v] + 1);
                }
                if (v == vars)
                    break;
            }
        }
    }

    inline std::uint64_t scalar_determinant(std::vector<std::vector<std::uint64_t>> m)
    {
        const std::size_t n = m.size();
        std::uint64_t det = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t pivot = c;
            while (pivot < n && m[pivot][c] == 0)
                ++pivot;
            if (pivot == n)
                return 0;
            if (pivot != c) {
                std::swap(m[pivot], m[c]);
                det = modp::neg(det);
            }
            det = modp::mul(det, m[c][c]);
            std::uint64_t inv = modp::inverse(m[c][c]);
            for (std::size_t r = c + 1; r < n; ++r) {
                if (!m[r][c])
                    continue;
                std::uint64_t f = modp::mul(m[r][c], inv);
                for (std::size_t k = c; k < n; ++k)
                    m[r][k] = modp::sub(m[r][k], modp::mul(f, m[c][k]));
            }
        }
        return det;
    }

} // namespace detail

/// Determinant of a square matrix over the truncated polynomial ring. The ring
/// has zero divisors, so this uses the division-free (up to integer
/// constants) Faddeev-LeVerrier recurrence instead of elimination.
inline Poly determinant(const MonomialBox & box, const std::vector<std::vector<Poly>> & a)
{
    const std::size_t n = a.size();
    const std::size_t len = box.size();
    Poly one(len, 0);
    one[0] = 1;
    if (n == 0)
        return one;
    if (len == 1) {
        std::vector<std::vector<std::uint64_t>> s(n, std::vector<std::uint64_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s[i][j] = a[i][j][0];
        return Poly{detail::scalar_determinant(std::move(s))};
    }

    // M_1 = I;  AM_k = A * M_k;  c_{n-k} = -tr(AM_k)/k;  M_{k+1} = AM_k + c_{n-k} I
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(len, 0)));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = one;
    std::vector<std::vector<char>> a_nonzero(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a_nonzero[i][j] = !detail::is_zero(a[i][j]);

    Poly c(len, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Poly>> am(n, std::vector<Poly>(n, Poly(len, 0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                if (!a_nonzero[i][l])
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!detail::is_zero(m[l][j]))
                        detail::mul_add(box, a[i][l], m[l][j], am[i][j]);
            }
        Poly trace(len, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < len; ++t)
                trace[t] = modp::add(trace[t], am[i][i][t]);
        std::uint64_t scale = modp::neg(modp::inverse(k));
        for (std::size_t t = 0; t < len; ++t)
            c[t] = modp::mul(trace[t], scale);
        if (k == n)
            break;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < len; ++t)
                am[i][i][t] = modp::add(am[i][i][t], c[t]);
        m = std::move(am);
    }
    // det(A) = (-1)^n c_0
    if (n % 2 == 1)
        for (auto & x : c)
            x = modp::neg(x);
    return c;
}

} // namespace mfsi
