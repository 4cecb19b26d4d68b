#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "mfsi/errors.hpp"
#include "mfsi/polynomial.hpp"
#include "mfsi/rng.hpp"

namespace mfsi {

/// counts[C] = number of vertices whose colour is the subset C of {0..q-1},
/// C encoded as a bitmask.
struct ColorHistogram {
    int q = 0;
    std::vector<std::int64_t> counts;

    ColorHistogram() : counts(1, 0) {}
    explicit ColorHistogram(int colours) : q(colours), counts(std::size_t{1} << colours, 0) {}
    ColorHistogram(int colours, std::vector<std::int64_t> values) : q(colours), counts(std::move(values))
    {
        if (counts.size() != (std::size_t{1} << q))
            throw InvalidInput("histogram length must be 2^q");
    }

    std::int64_t total() const
    {
        std::int64_t s = 0;
        for (auto c : counts)
            s += c;
        return s;
    }

    /// Componentwise a <= b.
    bool fits_within(const ColorHistogram & other) const
    {
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] > other.counts[i])
                return false;
        return true;
    }

    friend bool operator==(const ColorHistogram &, const ColorHistogram &) = default;
    friend auto operator<=>(const ColorHistogram & a, const ColorHistogram & b) { return a.counts <=> b.counts; }
};

inline ColorHistogram histogram_add(const ColorHistogram & a, const ColorHistogram & b)
{
    if (a.q != b.q)
        throw InvalidInput("histograms over different colour sets");
    ColorHistogram out(a.q);
    for (std::size_t i = 0; i < out.counts.size(); ++i)
        out.counts[i] = a.counts[i] + b.counts[i];
    return out;
}

inline ColorHistogram histogram_sub(const ColorHistogram & a, const ColorHistogram & b)
{
    if (a.q != b.q)
        throw InvalidInput("histograms over different colour sets");
    ColorHistogram out(a.q);
    for (std::size_t i = 0; i < out.counts.size(); ++i)
        out.counts[i] = a.counts[i] - b.counts[i];
    return out;
}

/// Histogram of the colours of `vertices` under `colour`.
template <class Range>
ColorHistogram histogram_of(int q, const Range & vertices, const std::vector<unsigned> & colour)
{
    ColorHistogram h(q);
    for (auto v : vertices)
        ++h.counts[colour[v]];
    return h;
}

// ---------------------------------------------------------------------------
// Unweighted bipartite matching

/// Maximum matching by augmenting paths. adjacency[l] lists the right
/// vertices adjacent to left vertex l. Returns the partner of every left
/// vertex, -1 when unmatched.
inline std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>> & adjacency, int right_count)
{
    const int left_count = static_cast<int>(adjacency.size());
    std::vector<int> left_match(left_count, -1), right_match(right_count, -1);
    std::vector<int> visited(right_count, -1);
    std::function<bool(int, int)> augment = [&](int l, int stamp) {
        for (int r : adjacency[l]) {
            if (visited[r] == stamp)
                continue;
            visited[r] = stamp;
            if (right_match[r] < 0 || augment(right_match[r], stamp)) {
                left_match[l] = r;
                right_match[r] = l;
                return true;
            }
        }
        return false;
    };
    for (int l = 0; l < left_count; ++l)
        augment(l, l);
    return left_match;
}

inline int matching_size(const std::vector<int> & left_match)
{
    return static_cast<int>(std::count_if(left_match.begin(), left_match.end(), [](int r) { return r >= 0; }));
}

// ---------------------------------------------------------------------------
// Exact-weight perfect matching

struct WeightedEdge {
    int left = 0;
    int right = 0;
    ColorHistogram weight;
    int payload = -1; // caller-defined recipe id
};

/// B = (X, Y u Z; E): rows are X, columns are Y followed by the dummy_count
/// columns of Z. Every weight and target entry must be <= weight_cap.
struct WeightedBipartiteMultigraph {
    int left_count = 0;
    int right_count = 0;
    int dummy_count = 0;
    int q = 0;
    std::int64_t weight_cap = 0;
    std::vector<WeightedEdge> edges;
};

namespace detail {

    inline void validate(const WeightedBipartiteMultigraph & b, const ColorHistogram & target)
    {
        if (b.left_count != b.right_count)
            throw InvalidInput("|X| must equal |Y| + |Z|");
        if (b.dummy_count < 0 || b.dummy_count > b.right_count)
            throw InvalidInput("dummy count out of range");
        if (target.q != b.q)
            throw InvalidInput("target histogram has the wrong number of colours");
        for (auto c : target.counts)
            if (c < 0 || c > b.weight_cap)
                throw InvalidInput("target exceeds the weight cap");
        std::set<std::tuple<int, int, std::vector<std::int64_t>>> seen;
        for (const auto & e : b.edges) {
            if (e.left < 0 || e.left >= b.left_count || e.right < 0 || e.right >= b.right_count)
                throw InvalidInput("edge endpoint out of range");
            if (e.weight.q != b.q)
                throw InvalidInput("edge weight has the wrong number of colours");
            for (auto c : e.weight.counts)
                if (c < 0 || c > b.weight_cap)
                    throw InvalidInput("edge weight exceeds the weight cap");
            if (!seen.emplace(e.left, e.right, e.weight.counts).second)
                throw InvalidInput("parallel edges must have distinct weights");
        }
    }

    enum class Backend { Auto, Symbolic, Evaluation, Sparse };

    // Coefficients of a determinant, densely over `box`; monomials outside the
    // box read as zero.
    struct Coefficients {
        MonomialBox box;
        Poly values;

        std::uint64_t at(const std::vector<std::int64_t> & exponent) const
        {
            std::size_t idx = box.index(exponent);
            return idx == box.size() ? 0 : values[idx];
        }
    };

    inline std::vector<std::uint64_t> draw_rho(std::size_t count, Rng & rng)
    {
        std::vector<std::uint64_t> rho(count);
        for (auto & r : rho)
            r = rng.uniform<std::uint64_t>(1, modp::prime - 1);
        return rho;
    }

    struct ActiveMatrix {
        std::vector<int> row_pos, col_pos;
        std::vector<std::size_t> edges; // edges inside the active submatrix and within `bound`
        std::vector<std::int64_t> degree; // per variable: sum over rows of the largest exponent
    };

    inline ActiveMatrix active_matrix(const WeightedBipartiteMultigraph & b, const std::vector<std::int64_t> & bound,
        const std::vector<int> & rows, const std::vector<int> & cols)
    {
        ActiveMatrix a;
        a.row_pos.assign(static_cast<std::size_t>(b.left_count), -1);
        a.col_pos.assign(static_cast<std::size_t>(b.right_count), -1);
        for (std::size_t i = 0; i < rows.size(); ++i)
            a.row_pos[static_cast<std::size_t>(rows[i])] = static_cast<int>(i);
        for (std::size_t i = 0; i < cols.size(); ++i)
            a.col_pos[static_cast<std::size_t>(cols[i])] = static_cast<int>(i);
        const std::size_t vars = bound.size();
        std::vector<std::vector<std::int64_t>> row_max(rows.size(), std::vector<std::int64_t>(vars, 0));
        for (std::size_t i = 0; i < b.edges.size(); ++i) {
            const auto & e = b.edges[i];
            int r = a.row_pos[static_cast<std::size_t>(e.left)], c = a.col_pos[static_cast<std::size_t>(e.right)];
            if (r < 0 || c < 0)
                continue;
            bool inside = true;
            for (std::size_t v = 0; v < vars; ++v)
                if (e.weight.counts[v] > bound[v])
                    inside = false; // no matching through this edge stays within the bound
            if (!inside)
                continue;
            a.edges.push_back(i);
            for (std::size_t v = 0; v < vars; ++v)
                row_max[static_cast<std::size_t>(r)][v] = std::max(row_max[static_cast<std::size_t>(r)][v], e.weight.counts[v]);
        }
        a.degree.assign(vars, 0);
        for (const auto & m : row_max)
            for (std::size_t v = 0; v < vars; ++v)
                a.degree[v] += m[v];
        return a;
    }

    // Matrix entry (x, r) = sum_e rho_e * y^{w_e}, truncated to `box`.
    inline Coefficients symbolic_coefficients(const WeightedBipartiteMultigraph & b, const ActiveMatrix & a,
        const std::vector<std::int64_t> & bound, std::size_t n, const std::vector<std::uint64_t> & rho)
    {
        std::vector<std::int64_t> trunc(bound.size());
        for (std::size_t v = 0; v < bound.size(); ++v)
            trunc[v] = std::min(bound[v], a.degree[v]);
        MonomialBox box(trunc);
        std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(box.size(), 0)));
        for (std::size_t i : a.edges) {
            const auto & e = b.edges[i];
            std::size_t idx = box.index(e.weight.counts);
            auto & cell = m[static_cast<std::size_t>(a.row_pos[static_cast<std::size_t>(e.left)])]
                           [static_cast<std::size_t>(a.col_pos[static_cast<std::size_t>(e.right)])];
            cell[idx] = modp::add(cell[idx], rho[i]);
        }
        return {box, determinant(box, m)};
    }

    // Inverse of the Vandermonde matrix on the points 1..d+1.
    inline std::vector<std::vector<std::uint64_t>> inverse_vandermonde(std::size_t d)
    {
        const std::size_t n = d + 1;
        std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(2 * n, 0));
        for (std::size_t t = 0; t < n; ++t) {
            std::uint64_t x = t + 1, p = 1;
            for (std::size_t j = 0; j < n; ++j, p = modp::mul(p, x))
                m[t][j] = p;
            m[t][n + t] = 1;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t pivot = c;
            while (m[pivot][c] == 0)
                ++pivot;
            std::swap(m[pivot], m[c]);
            std::uint64_t inv = modp::inverse(m[c][c]);
            for (auto & x : m[c])
                x = modp::mul(x, inv);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || m[r][c] == 0)
                    continue;
                std::uint64_t f = m[r][c];
                for (std::size_t j = 0; j < 2 * n; ++j)
                    m[r][j] = modp::sub(m[r][j], modp::mul(f, m[c][j]));
            }
        }
        std::vector<std::vector<std::uint64_t>> out(n, std::vector<std::uint64_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out[i][j] = m[i][n + j];
        return out;
    }

    // Full determinant polynomial: evaluate on the grid {1..deg+1}^vars with
    // scalar elimination, then interpolate one variable at a time.
    inline Coefficients evaluated_coefficients(const WeightedBipartiteMultigraph & b, const ActiveMatrix & a,
        std::size_t n, const std::vector<std::uint64_t> & rho)
    {
        MonomialBox box(a.degree);
        const std::size_t vars = a.degree.size();
        std::vector<std::vector<std::vector<std::uint64_t>>> power(vars);
        for (std::size_t v = 0; v < vars; ++v) {
            const auto d = static_cast<std::size_t>(a.degree[v]);
            power[v].assign(d + 1, std::vector<std::uint64_t>(d + 1, 1));
            for (std::size_t t = 0; t <= d; ++t)
                for (std::size_t j = 1; j <= d; ++j)
                    power[v][t][j] = modp::mul(power[v][t][j - 1], t + 1);
        }
        Poly values(box.size());
        std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
        for (std::size_t idx = 0; idx < box.size(); ++idx) {
            auto point = box.exponent(idx);
            for (auto & row : m)
                std::fill(row.begin(), row.end(), 0);
            for (std::size_t i : a.edges) {
                const auto & e = b.edges[i];
                std::uint64_t term = rho[i];
                for (std::size_t v = 0; v < vars; ++v)
                    term = modp::mul(term, power[v][static_cast<std::size_t>(point[v])][static_cast<std::size_t>(e.weight.counts[v])]);
                auto & cell = m[static_cast<std::size_t>(a.row_pos[static_cast<std::size_t>(e.left)])]
                               [static_cast<std::size_t>(a.col_pos[static_cast<std::size_t>(e.right)])];
                cell = modp::add(cell, term);
            }
            values[idx] = scalar_determinant(m);
        }
        std::size_t stride = 1;
        for (std::size_t v = 0; v < vars; ++v) {
            const auto len = static_cast<std::size_t>(a.degree[v] + 1);
            if (len > 1) {
                auto inv = inverse_vandermonde(len - 1);
                std::vector<std::uint64_t> line(len);
                for (std::size_t base = 0; base < box.size(); ++base) {
                    if ((base / stride) % len != 0)
                        continue;
                    for (std::size_t t = 0; t < len; ++t)
                        line[t] = values[base + t * stride];
                    for (std::size_t j = 0; j < len; ++j) {
                        std::uint64_t s = 0;
                        for (std::size_t t = 0; t < len; ++t)
                            s = modp::add(s, modp::mul(inv[j][t], line[t]));
                        values[base + j * stride] = s;
                    }
                }
            }
            stride *= len;
        }
        return {box, values};
    }

    // Laplace expansion row by row as a DP over used-column masks; each state
    // keeps only the monomials that occur. Exponential in n, cheap when the
    // monomial box is huge but few weights are reachable.
    inline Coefficients sparse_coefficients(const WeightedBipartiteMultigraph & b, const ActiveMatrix & a,
        const std::vector<std::int64_t> & bound, std::size_t n, const std::vector<std::uint64_t> & rho)
    {
        std::vector<std::int64_t> trunc(bound.size());
        for (std::size_t v = 0; v < bound.size(); ++v)
            trunc[v] = std::min(bound[v], a.degree[v]);
        MonomialBox box(trunc);
        const std::size_t vars = trunc.size();
        struct Entry {
            unsigned col;
            std::vector<std::int64_t> exponent;
            std::size_t index;
            std::uint64_t coeff;
        };
        std::vector<std::vector<Entry>> rows(n);
        for (std::size_t i : a.edges) {
            const auto & e = b.edges[i];
            std::size_t idx = box.index(e.weight.counts);
            if (idx == box.size())
                continue;
            rows[static_cast<std::size_t>(a.row_pos[static_cast<std::size_t>(e.left)])].push_back(
                {static_cast<unsigned>(a.col_pos[static_cast<std::size_t>(e.right)]), e.weight.counts, idx, rho[i]});
        }
        using State = std::unordered_map<std::size_t, std::uint64_t>;
        std::vector<State> dp(std::size_t{1} << n);
        dp[0][0] = 1;
        std::vector<std::int64_t> digits(vars);
        for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
            if (dp[mask].empty())
                continue;
            const auto r = static_cast<std::size_t>(__builtin_popcountll(mask));
            for (const auto & [key, value] : dp[mask]) {
                digits = box.exponent(key);
                for (const auto & en : rows[r]) {
                    if (mask >> en.col & 1)
                        continue;
                    bool inside = true;
                    for (std::size_t v = 0; v < vars && inside; ++v)
                        inside = digits[v] + en.exponent[v] <= trunc[v];
                    if (!inside)
                        continue;
                    std::uint64_t term = modp::mul(value, en.coeff);
                    if (__builtin_popcountll(mask >> (en.col + 1)) & 1)
                        term = modp::sub(0, term);
                    auto & slot = dp[mask | std::size_t{1} << en.col][key + en.index];
                    slot = modp::add(slot, term);
                }
            }
            State().swap(dp[mask]);
        }
        Poly values(box.size(), 0);
        for (const auto & [key, value] : dp.back())
            values[key] = value;
        return {box, values};
    }

    // Rough operation count of the sparse backend: states per layer times
    // the monomials they can hold times the row's edge count.
    inline double sparse_cost(const WeightedBipartiteMultigraph & b, const ActiveMatrix & a, std::size_t n, double box)
    {
        if (n > 20)
            return 1e300;
        std::vector<double> per_row(n, 0);
        for (std::size_t i : a.edges)
            per_row[static_cast<std::size_t>(a.row_pos[static_cast<std::size_t>(b.edges[i].left)])] += 1;
        double cost = 0, binom = 1, terms = 1;
        for (std::size_t r = 0; r < n; ++r) {
            cost += binom * std::min(box, terms) * (per_row[r] + 1);
            terms *= std::max(1.0, per_row[r]);
            binom = binom * static_cast<double>(n - r) / static_cast<double>(r + 1);
        }
        return cost;
    }

    // Determinant coefficients of the active submatrix for all monomials
    // within `bound`. Auto picks the cheaper backend by a rough operation count.
    inline Coefficients matching_coefficients(const WeightedBipartiteMultigraph & b,
        const std::vector<std::int64_t> & bound, const std::vector<int> & rows, const std::vector<int> & cols,
        const std::vector<std::uint64_t> & rho, Backend backend = Backend::Auto)
    {
        auto a = active_matrix(b, bound, rows, cols);
        const std::size_t n = rows.size();
        if (backend == Backend::Auto) {
            double eval = static_cast<double>(n * n * n + 1), sym = static_cast<double>(n * n * n * n + 1), box = 1;
            for (std::size_t v = 0; v < bound.size(); ++v) {
                double d = static_cast<double>(a.degree[v] + 1);
                double t = static_cast<double>(std::min(bound[v], a.degree[v]) + 1);
                eval *= d;
                sym *= t * (t + 1) / 2;
                box *= t;
            }
            double sparse = sparse_cost(b, a, n, box);
            backend = eval <= sym ? Backend::Evaluation : Backend::Symbolic;
            if (sparse < std::min(eval, sym))
                backend = Backend::Sparse;
        }
        if (backend == Backend::Evaluation)
            return evaluated_coefficients(b, a, n, rho);
        if (backend == Backend::Sparse)
            return sparse_coefficients(b, a, bound, n, rho);
        return symbolic_coefficients(b, a, bound, n, rho);
    }

    inline bool weight_exists(const WeightedBipartiteMultigraph & b, const ColorHistogram & target,
        const std::vector<int> & rows, const std::vector<int> & cols, Rng & rng, int repeats)
    {
        if (rows.size() != cols.size())
            return false;
        for (int t = 0; t < repeats; ++t) {
            Rng stream = rng.split();
            auto rho = draw_rho(b.edges.size(), stream);
            if (matching_coefficients(b, target.counts, rows, cols, rho).at(target.counts) != 0)
                return true;
        }
        return false;
    }

    inline std::vector<int> iota_vector(int n)
    {
        std::vector<int> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] = i;
        return v;
    }

} // namespace detail

/// Total weight of a set of edges of b.
inline ColorHistogram matching_weight(const WeightedBipartiteMultigraph & b, const std::vector<int> & edge_ids)
{
    ColorHistogram sum(b.q);
    for (int id : edge_ids)
        sum = histogram_add(sum, b.edges[static_cast<std::size_t>(id)].weight);
    return sum;
}

/// True iff edge_ids is a perfect matching of b.
inline bool is_perfect_matching(const WeightedBipartiteMultigraph & b, const std::vector<int> & edge_ids)
{
    if (static_cast<int>(edge_ids.size()) != b.left_count)
        return false;
    std::vector<char> left(b.left_count, 0), right(b.right_count, 0);
    for (int id : edge_ids) {
        if (id < 0 || id >= static_cast<int>(b.edges.size()))
            return false;
        const auto & e = b.edges[static_cast<std::size_t>(id)];
        if (left[e.left] || right[e.right])
            return false;
        left[e.left] = right[e.right] = 1;
    }
    return true;
}

/// Every histogram h inside `box_bound` such that some perfect matching of b
/// has weight h, as detected by the randomised determinant in at least one of
/// `repeats` trials. Never reports a weight that no perfect matching has.
inline std::set<ColorHistogram> achievable_weights(const WeightedBipartiteMultigraph & b,
    const ColorHistogram & box_bound, Rng & rng, int repeats)
{
    detail::validate(b, box_bound);
    auto all = detail::iota_vector(b.left_count);
    std::set<ColorHistogram> out;
    for (int t = 0; t < repeats; ++t) {
        Rng stream = rng.split();
        auto rho = detail::draw_rho(b.edges.size(), stream);
        auto det = detail::matching_coefficients(b, box_bound.counts, all, all, rho);
        for (std::size_t i = 0; i < det.values.size(); ++i) {
            if (!det.values[i])
                continue;
            auto e = det.box.exponent(i);
            bool inside = true;
            for (std::size_t v = 0; v < e.size(); ++v)
                inside = inside && e[v] <= box_bound.counts[v];
            if (inside)
                out.insert(ColorHistogram(b.q, std::move(e)));
        }
    }
    return out;
}

/// A perfect matching (one edge id per row, in row order) whose weights sum to
/// exactly `target`, or nullopt. One-sided error: a returned matching is
/// always rechecked; a missed one has probability at most 2^-repeats.
/// The witness is extracted by self-reduction, fixing one edge per row.
inline std::optional<std::vector<int>> exact_weight_perfect_matching(const WeightedBipartiteMultigraph & b,
    const ColorHistogram & target, Rng & rng, int repeats)
{
    detail::validate(b, target);
    if (repeats < 1)
        throw InvalidInput("repeats must be >= 1");
    std::vector<int> rows = detail::iota_vector(b.left_count);
    std::vector<int> cols = detail::iota_vector(b.right_count);
    if (!detail::weight_exists(b, target, rows, cols, rng, repeats))
        return std::nullopt;

    std::vector<std::vector<int>> by_row(static_cast<std::size_t>(b.left_count));
    for (std::size_t i = 0; i < b.edges.size(); ++i)
        by_row[static_cast<std::size_t>(b.edges[i].left)].push_back(static_cast<int>(i));

    ColorHistogram remaining = target;
    std::vector<int> chosen;
    while (!rows.empty()) {
        const int x = rows.front();
        std::vector<int> rest_rows(rows.begin() + 1, rows.end());
        bool fixed = false;
        for (int id : by_row[static_cast<std::size_t>(x)]) {
            const auto & e = b.edges[static_cast<std::size_t>(id)];
            auto col_it = std::find(cols.begin(), cols.end(), e.right);
            if (col_it == cols.end() || !e.weight.fits_within(remaining))
                continue;
            std::vector<int> rest_cols = cols;
            rest_cols.erase(rest_cols.begin() + (col_it - cols.begin()));
            ColorHistogram rest_target = histogram_sub(remaining, e.weight);
            if (detail::weight_exists(b, rest_target, rest_rows, rest_cols, rng, repeats)) {
                chosen.push_back(id);
                remaining = rest_target;
                rows = std::move(rest_rows);
                cols = std::move(rest_cols);
                fixed = true;
                break;
            }
        }
        if (!fixed)
            return std::nullopt; // a false negative during self-reduction
    }
    if (!is_perfect_matching(b, chosen) || matching_weight(b, chosen) != target)
        throw std::logic_error("exact-weight matching produced an unverified witness");
    return chosen;
}

} // namespace mfsi
