#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "mfsi/budget.hpp"
#include "mfsi/graph.hpp"
#include "mfsi/ilp.hpp"
#include "mfsi/recognizers.hpp"

namespace mfsi {

namespace detail {

    // Max flow on a dense small network (Edmonds-Karp).
    inline std::int64_t max_flow(std::vector<std::vector<std::int64_t>> cap, int source, int sink)
    {
        const int n = static_cast<int>(cap.size());
        std::int64_t flow = 0;
        while (true) {
            std::vector<int> prev(static_cast<std::size_t>(n), -1);
            prev[static_cast<std::size_t>(source)] = source;
            std::queue<int> todo;
            todo.push(source);
            while (!todo.empty() && prev[static_cast<std::size_t>(sink)] < 0) {
                int u = todo.front();
                todo.pop();
                for (int v = 0; v < n; ++v)
                    if (prev[static_cast<std::size_t>(v)] < 0 && cap[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] > 0) {
                        prev[static_cast<std::size_t>(v)] = u;
                        todo.push(v);
                    }
            }
            if (prev[static_cast<std::size_t>(sink)] < 0)
                return flow;
            std::int64_t push = std::numeric_limits<std::int64_t>::max();
            for (int v = sink; v != source; v = prev[static_cast<std::size_t>(v)])
                push = std::min(push, cap[static_cast<std::size_t>(prev[static_cast<std::size_t>(v)])][static_cast<std::size_t>(v)]);
            for (int v = sink; v != source; v = prev[static_cast<std::size_t>(v)]) {
                cap[static_cast<std::size_t>(prev[static_cast<std::size_t>(v)])][static_cast<std::size_t>(v)] -= push;
                cap[static_cast<std::size_t>(v)][static_cast<std::size_t>(prev[static_cast<std::size_t>(v)])] += push;
            }
            flow += push;
        }
    }

    class NdSolver {
    public:
        NdSolver(const Graph & g, const Graph & q, SearchBudget & budget)
            : g_(g), q_(q), budget_(budget), host_(twin_partition(g)), pattern_(twin_partition(q))
        {
        }

        std::optional<Embedding> run()
        {
            if (q_.order() > g_.order() || q_.size() > g_.size())
                return std::nullopt;
            if (q_.order() == 0)
                return Embedding{};
            r_ = pattern_.size();
            t_ = host_.size();
            cells_ = static_cast<std::size_t>(r_ * t_);
            cap_.assign(cells_, 0);
            for (int i = 0; i < r_; ++i)
                for (int j = 0; j < t_; ++j) {
                    auto c = std::min(class_size(pattern_, i), class_size(host_, j));
                    if (pattern_adjacent(i, i) && !host_adjacent(j, j))
                        c = std::min<std::int64_t>(c, 1); // two vertices of a clique class cannot share a non-clique class
                    cap_[cell(i, j)] = c;
                }
            state_.assign(cells_, Open);
            blocked_.assign(cells_, 0);
            for (std::size_t c = 0; c < cells_; ++c)
                if (cap_[c] == 0)
                    ++blocked_[c];
            std::optional<Embedding> found;
            search(0, found);
            return found;
        }

    private:
        enum State { Open, Zero, Used };

        static std::int64_t class_size(const TwinPartition & p, int i)
        {
            return static_cast<std::int64_t>(p.classes[static_cast<std::size_t>(i)].size());
        }

        bool pattern_adjacent(int a, int b) const
        {
            if (a == b)
                return pattern_.kinds[static_cast<std::size_t>(a)] == TwinPartition::Kind::Complete;
            return pattern_.adjacent[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        }

        bool host_adjacent(int a, int b) const
        {
            if (a == b)
                return host_.kinds[static_cast<std::size_t>(a)] == TwinPartition::Kind::Complete;
            return host_.adjacent[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        }

        std::size_t cell(int i, int j) const { return static_cast<std::size_t>(i * t_ + j); }

        // Pattern classes i, i2 placed (partly) in host classes j, j2 need the
        // host classes adjacent whenever the pattern classes are.
        bool conflict(int i, int j, int i2, int j2) const { return pattern_adjacent(i, i2) && !host_adjacent(j, j2); }

        void mark(int i, int j, int delta)
        {
            for (int i2 = 0; i2 < r_; ++i2)
                for (int j2 = 0; j2 < t_; ++j2)
                    if ((i2 != i || j2 != j) && conflict(i, j, i2, j2))
                        blocked_[cell(i2, j2)] += delta;
        }

        // Exact transportation check with lower bound 1 on used cells and
        // upper bound 0 on zero or blocked cells.
        bool relaxation_feasible() const
        {
            const int source = r_ + t_, sink = r_ + t_ + 1;
            std::vector<std::vector<std::int64_t>> cap(static_cast<std::size_t>(r_ + t_ + 2),
                std::vector<std::int64_t>(static_cast<std::size_t>(r_ + t_ + 2), 0));
            std::vector<std::int64_t> row_need(static_cast<std::size_t>(r_)), col_room(static_cast<std::size_t>(t_));
            for (int i = 0; i < r_; ++i)
                row_need[static_cast<std::size_t>(i)] = class_size(pattern_, i);
            for (int j = 0; j < t_; ++j)
                col_room[static_cast<std::size_t>(j)] = class_size(host_, j);
            std::int64_t need = 0;
            for (int i = 0; i < r_; ++i)
                for (int j = 0; j < t_; ++j) {
                    const std::size_t c = cell(i, j);
                    if (state_[c] == Used) {
                        --row_need[static_cast<std::size_t>(i)];
                        --col_room[static_cast<std::size_t>(j)];
                        cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(r_ + j)] = cap_[c] - 1;
                    }
                    else if (state_[c] == Open && !blocked_[c])
                        cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(r_ + j)] = cap_[c];
                }
            for (int i = 0; i < r_; ++i) {
                if (row_need[static_cast<std::size_t>(i)] < 0)
                    return false;
                cap[static_cast<std::size_t>(source)][static_cast<std::size_t>(i)] = row_need[static_cast<std::size_t>(i)];
                need += row_need[static_cast<std::size_t>(i)];
            }
            for (int j = 0; j < t_; ++j) {
                if (col_room[static_cast<std::size_t>(j)] < 0)
                    return false;
                cap[static_cast<std::size_t>(r_ + j)][static_cast<std::size_t>(sink)] = col_room[static_cast<std::size_t>(j)];
            }
            return max_flow(std::move(cap), source, sink) == need;
        }

        void search(std::size_t c, std::optional<Embedding> & found)
        {
            budget_.tick();
            if (!relaxation_feasible())
                return;
            while (c < cells_ && blocked_[c])
                ++c;
            if (c == cells_) {
                found = realise();
                return;
            }
            const int i = static_cast<int>(c) / t_, j = static_cast<int>(c) % t_;
            state_[c] = Used;
            mark(i, j, +1);
            search(c + 1, found);
            mark(i, j, -1);
            if (found) {
                state_[c] = Open;
                return;
            }
            state_[c] = Zero;
            search(c + 1, found);
            state_[c] = Open;
        }

        // ILP over the cells of the guessed support: row sums |R_i|, column
        // sums <= |T_j|.
        std::optional<Embedding> realise()
        {
            ILPInstance ilp;
            std::vector<int> var(cells_, -1);
            for (std::size_t c = 0; c < cells_; ++c)
                if (state_[c] == Used)
                    var[c] = ilp.add_variable(1, cap_[c]);
            for (int i = 0; i < r_; ++i) {
                std::vector<std::int64_t> row(static_cast<std::size_t>(ilp.var_count), 0);
                for (int j = 0; j < t_; ++j)
                    if (var[cell(i, j)] >= 0)
                        row[static_cast<std::size_t>(var[cell(i, j)])] = 1;
                ilp.add_constraint(std::move(row), Relation::Equal, class_size(pattern_, i));
            }
            for (int j = 0; j < t_; ++j) {
                std::vector<std::int64_t> col(static_cast<std::size_t>(ilp.var_count), 0);
                for (int i = 0; i < r_; ++i)
                    if (var[cell(i, j)] >= 0)
                        col[static_cast<std::size_t>(var[cell(i, j)])] = 1;
                ilp.add_constraint(std::move(col), Relation::LessEqual, class_size(host_, j));
            }
            auto x = feasible(ilp);
            if (!x)
                return std::nullopt;
            Embedding image(static_cast<std::size_t>(q_.order()), -1);
            std::vector<std::size_t> next_host(static_cast<std::size_t>(t_), 0);
            for (int i = 0; i < r_; ++i) {
                const auto & pattern_class = pattern_.classes[static_cast<std::size_t>(i)];
                std::size_t next = 0;
                for (int j = 0; j < t_; ++j) {
                    if (var[cell(i, j)] < 0)
                        continue;
                    const auto & host_class = host_.classes[static_cast<std::size_t>(j)];
                    for (std::int64_t a = 0; a < (*x)[static_cast<std::size_t>(var[cell(i, j)])]; ++a)
                        image[static_cast<std::size_t>(pattern_class[next++])] = host_class[next_host[static_cast<std::size_t>(j)]++];
                }
            }
            if (!verify_embedding(q_, g_, image))
                throw std::logic_error("neighbourhood-diversity solver produced an invalid embedding");
            return image;
        }

        const Graph & g_;
        const Graph & q_;
        SearchBudget & budget_;
        TwinPartition host_, pattern_;
        int r_ = 0, t_ = 0;
        std::size_t cells_ = 0;
        std::vector<std::int64_t> cap_;
        std::vector<State> state_;
        std::vector<int> blocked_;
    };

} // namespace detail

/// Subgraph isomorphism by guessing which (pattern twin class, host twin
/// class) cells are used and solving the count ILP.
inline std::optional<Embedding> solve_nd(const Graph & g, const Graph & q, SearchBudget & budget)
{
    return detail::NdSolver(g, q, budget).run();
}

inline std::optional<Embedding> solve_nd(const Graph & g, const Graph & q)
{
    SearchBudget unlimited;
    return solve_nd(g, q, unlimited);
}

} // namespace mfsi
