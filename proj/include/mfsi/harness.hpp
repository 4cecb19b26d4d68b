#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "mfsi/budget.hpp"
#include "mfsi/errors.hpp"
#include "mfsi/graph.hpp"
#include "mfsi/graph_io.hpp"
#include "mfsi/neighborhood_diversity.hpp"
#include "mfsi/oracle.hpp"
#include "mfsi/p4free.hpp"
#include "mfsi/p4hitting.hpp"
#include "mfsi/recognizers.hpp"
#include "mfsi/rng.hpp"
#include "mfsi/vertex_integrity.hpp"

namespace mfsi {

enum class Answer { Yes, No, Unknown };

inline const char * to_string(Answer a)
{
    switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    default: return "unknown";
    }
}

struct SolveResult {
    Answer answer = Answer::Unknown;
    std::optional<Embedding> embedding;
    std::string algorithm;
    std::map<std::string, std::string> parameters;
    std::optional<std::uint64_t> seed;
    double elapsed_ms = 0;
    std::int64_t guesses = 0;
    std::string status = "ok"; // ok | class-violation | budget-exceeded | open-case | error
    std::string note;
};

struct SolveOptions {
    std::optional<int> param;
    std::uint64_t seed = 0;
    int repeats = 10;
    std::int64_t budget = 0; // 0 = unlimited
    bool oracle_fallback = false;
};

// ---------------------------------------------------------------------------
// Running one algorithm

namespace detail {

    template <class F>
    std::optional<int> smallest_parameter(int limit, F && ok)
    {
        for (int k = 0; k <= limit; ++k)
            if (ok(k))
                return k;
        return std::nullopt;
    }

    inline std::optional<int> min_vi(const Graph & g)
    {
        return smallest_parameter(std::max(1, g.order()), [&](int k) { return k >= 1 && find_vi_set(g, k); });
    }

    inline std::optional<int> min_p4_hitting(const Graph & g, int limit)
    {
        return smallest_parameter(limit, [&](int k) { return find_p4_hitting_set(g, k).has_value(); });
    }

    inline SearchBudget make_budget(std::int64_t limit) { return limit > 0 ? SearchBudget(limit) : SearchBudget(); }

} // namespace detail

inline const std::vector<std::string> & algorithm_names()
{
    static const std::vector<std::string> names{"p4free", "p4kp3", "vi", "hitting", "nd", "oracle"};
    return names;
}

/// Runs the named algorithm. Class violations and budget exhaustion become
/// answer unknown with the matching status; other errors propagate.
inline SolveResult run_algorithm(const std::string & algo, const Graph & g, const Graph & q, const SolveOptions & opt)
{
    SolveResult r;
    r.algorithm = algo;
    auto budget = detail::make_budget(opt.budget);
    const auto start = std::chrono::steady_clock::now();
    try {
        std::optional<Embedding> e;
        if (algo == "p4free")
            e = solve_p4free(g, q);
        else if (algo == "p4kp3") {
            int k = opt.param.value_or(1);
            r.parameters["k"] = std::to_string(k);
            e = solve_p4_union_kp3(g, q, k, budget);
        }
        else if (algo == "vi") {
            auto k = opt.param ? opt.param : detail::min_vi(g);
            r.parameters["k"] = std::to_string(*k);
            e = solve_vi(g, q, *k, budget);
        }
        else if (algo == "hitting") {
            auto k = opt.param ? opt.param : detail::min_p4_hitting(g, g.order());
            r.parameters["k"] = std::to_string(*k);
            r.parameters["repeats"] = std::to_string(opt.repeats);
            r.seed = opt.seed;
            Rng rng(opt.seed);
            e = solve_hitting(g, q, *k, rng, opt.repeats, budget);
        }
        else if (algo == "nd") {
            r.parameters["classes"] = std::to_string(twin_partition(g).size());
            e = solve_nd(g, q, budget);
        }
        else if (algo == "oracle")
            e = solve_backtracking(g, q, budget);
        else
            throw InvalidInput("unknown algorithm: " + algo);
        if (e) {
            if (!verify_embedding(q, g, *e))
                throw std::logic_error(algo + " returned an embedding that does not verify");
            r.answer = Answer::Yes;
            r.embedding = std::move(e);
        }
        else
            r.answer = Answer::No;
    }
    catch (const ClassViolation & ex) {
        r.status = "class-violation";
        r.note = ex.what();
    }
    catch (const BudgetExceeded & ex) {
        r.status = "budget-exceeded";
        r.note = ex.what();
    }
    r.guesses = budget.used();
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// ---------------------------------------------------------------------------
// Dispatch on a forbidden linear forest

/// Forbidden linear forest as the multiset of its path orders, largest first.
struct LinearForest {
    std::vector<int> paths;

    int order() const { return std::accumulate(paths.begin(), paths.end(), 0); }
    int count(int len) const { return static_cast<int>(std::count(paths.begin(), paths.end(), len)); }
    int longest() const { return paths.empty() ? 0 : paths.front(); }
};

inline LinearForest parse_linear_forest(const std::string & text)
{
    LinearForest h;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
        if (item.empty())
            continue;
        std::size_t used = 0;
        int len = 0;
        try {
            len = std::stoi(item, &used);
        }
        catch (const std::exception &) {
            throw InvalidInput("malformed forbidden-minor descriptor: " + text);
        }
        if (used != item.size() || len < 1)
            throw InvalidInput("malformed forbidden-minor descriptor: " + text);
        h.paths.push_back(len);
    }
    if (h.paths.empty())
        throw InvalidInput("forbidden-minor descriptor is empty");
    std::sort(h.paths.rbegin(), h.paths.rend());
    return h;
}

/// Is the linear forest `small` a minor of the linear forest `big`? Paths of
/// `small` are packed into paths of `big` by total order.
inline bool linear_forest_minor(const std::vector<int> & small, std::vector<int> big)
{
    std::vector<int> items = small;
    std::sort(items.rbegin(), items.rend());
    std::function<bool(std::size_t)> pack = [&](std::size_t i) {
        if (i == items.size())
            return true;
        for (std::size_t b = 0; b < big.size(); ++b) {
            if (big[b] < items[i] || (b > 0 && big[b] == big[b - 1]))
                continue;
            big[b] -= items[i];
            bool ok = pack(i + 1);
            big[b] += items[i];
            if (ok)
                return true;
        }
        return false;
    };
    return pack(0);
}

inline std::optional<int> min_kp3_parameter(const LinearForest & h)
{
    for (int k = 1; k <= static_cast<int>(h.paths.size()); ++k) {
        std::vector<int> host{4};
        host.insert(host.end(), static_cast<std::size_t>(k), 3);
        if (linear_forest_minor(h.paths, host))
            return k;
    }
    return std::nullopt;
}

inline std::optional<int> min_kp4_parameter(const LinearForest & h)
{
    for (int k = 1; k <= static_cast<int>(h.paths.size()); ++k)
        if (linear_forest_minor(h.paths, std::vector<int>(static_cast<std::size_t>(k), 4)))
            return k;
    return std::nullopt;
}

/// Routes an instance whose inputs exclude `h` as a minor to the matching
/// algorithm.
inline SolveResult dispatch(const Graph & g, const Graph & q, const LinearForest & h, SolveOptions opt)
{
    auto fallback = [&](std::string status, std::string note) {
        SolveResult r;
        if (opt.oracle_fallback) {
            r = run_algorithm("oracle", g, q, opt);
            r.note = note + "; answered by the backtracking oracle";
            if (r.status == "ok")
                return r;
        }
        else
            r.algorithm = "none";
        r.answer = Answer::Unknown;
        r.status = std::move(status);
        r.note = std::move(note);
        return r;
    };
    auto with_hitting = [&](int bound) -> std::optional<SolveResult> {
        auto kg = detail::min_p4_hitting(g, bound);
        if (!kg)
            return std::nullopt;
        opt.param = std::max(*kg, 0);
        auto r = run_algorithm("hitting", g, q, opt);
        r.parameters["hitting_bound"] = std::to_string(bound);
        return r;
    };

    if (h.order() <= 4) {
        if (is_p4_free(g) && is_p4_free(q))
            return run_algorithm("p4free", g, q, opt);
        return fallback("class-violation", "inputs are not P4-free");
    }
    if (h.longest() <= 4 && h.count(4) <= 1) {
        if (auto k = min_kp3_parameter(h)) {
            opt.param = *k;
            return run_algorithm("p4kp3", g, q, opt);
        }
    }
    if (h.longest() <= 4) {
        auto k = *min_kp4_parameter(h);
        if (auto r = with_hitting(4 * (k - 1)))
            return *r;
        return fallback("class-violation", "host P4-hitting number exceeds 4(k-1)");
    }
    const int p = h.count(5);
    if (h.longest() >= 6 || p >= 3)
        return fallback("hard", "forbidden minor contains P6 or 3P5: NP-hard class, no polynomial algorithm");
    const int others = static_cast<int>(h.paths.size()) - p;
    if (others == 0)
        return fallback("open-case", "open case: forbidden minor is P5 or 2P5");
    std::vector<int> rest(h.paths.begin() + p, h.paths.end());
    auto k = *min_kp4_parameter(LinearForest{rest});
    const int big = k + 5 * p;
    if (auto r = with_hitting(4 * (big - 1)))
        return *r;
    return fallback("open-case", "open case: inputs reduce to the pP5-minor-free case");
}

// ---------------------------------------------------------------------------
// Instance generation

struct ClassSpec {
    enum class Kind { P4Free, Vi, Hitting, Nd } kind = Kind::P4Free;
    int param = 0;
};

inline ClassSpec parse_class_spec(const std::string & text)
{
    auto open = text.find_first_of("(:");
    std::string name = text.substr(0, open);
    int param = 0;
    if (open != std::string::npos) {
        std::string rest = text.substr(open + 1);
        if (!rest.empty() && rest.back() == ')')
            rest.pop_back();
        try {
            param = std::stoi(rest);
        }
        catch (const std::exception &) {
            throw InvalidInput("malformed class parameter: " + text);
        }
    }
    if (name == "p4free")
        return {ClassSpec::Kind::P4Free, 0};
    if ((name == "vi" || name == "hitting" || name == "nd") && open == std::string::npos)
        throw InvalidInput("class " + name + " needs a parameter, e.g. " + name + ":3");
    if (name == "vi" && param >= 1)
        return {ClassSpec::Kind::Vi, param};
    if (name == "hitting" && param >= 0)
        return {ClassSpec::Kind::Hitting, param};
    if (name == "nd" && param >= 1)
        return {ClassSpec::Kind::Nd, param};
    throw InvalidInput("unknown class: " + text);
}

struct GeneratedInstance {
    Graph host;
    Graph pattern;
    std::optional<bool> expected;
};

namespace detail {

    inline VertexSet random_permutation(int n, Rng & rng)
    {
        VertexSet p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    }

    inline Graph shuffled(const Graph & g, Rng & rng) { return relabel(g, random_permutation(g.order(), rng)); }

    // Union of K1, K3 and stars on exactly n vertices, appended to `edges`
    // starting at vertex `base`.
    inline void add_p4_free_part(std::vector<Edge> & edges, int base, int n, Rng & rng)
    {
        int v = base;
        const int end = base + n;
        while (v < end) {
            const int left = end - v;
            const int roll = rng.uniform(0, 9);
            if (roll < 2 || left == 1) {
                ++v;
            }
            else if (roll < 4 && left >= 3) {
                edges.emplace_back(v, v + 1);
                edges.emplace_back(v + 1, v + 2);
                edges.emplace_back(v, v + 2);
                v += 3;
            }
            else {
                const int leaves = rng.uniform(1, std::min(left - 1, 1 + n / 4));
                for (int l = 1; l <= leaves; ++l)
                    edges.emplace_back(v, v + l);
                v += leaves + 1;
            }
        }
    }

    inline Graph random_p4_free(int n, Rng & rng)
    {
        std::vector<Edge> edges;
        add_p4_free_part(edges, 0, n, rng);
        return Graph(n, edges);
    }

    // Connected random graph on vertices base..base+n-1.
    inline void add_connected_part(std::vector<Edge> & edges, int base, int n, Rng & rng)
    {
        for (int v = 1; v < n; ++v)
            edges.emplace_back(base + rng.uniform(0, v - 1), base + v);
        for (int a = 0; a < n; ++a)
            for (int b = a + 2; b < n; ++b)
                if (rng.coin(0.3))
                    edges.emplace_back(base + a, base + b);
    }

    inline Graph random_vi(int n, int k, Rng & rng)
    {
        const int s = std::min(n, rng.uniform(0, k - 1));
        const int limit = k - s;
        std::vector<Edge> edges;
        for (int a = 0; a < s; ++a)
            for (int b = a + 1; b < s; ++b)
                if (rng.coin(0.5))
                    edges.emplace_back(a, b);
        int v = s;
        while (v < n) {
            const int size = rng.uniform(1, std::min(limit, n - v));
            add_connected_part(edges, v, size, rng);
            v += size;
        }
        for (int a = 0; a < s; ++a)
            for (int b = s; b < n; ++b)
                if (rng.coin(0.4))
                    edges.emplace_back(a, b);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return Graph(n, edges);
    }

    inline Graph random_hitting(int n, int k, Rng & rng)
    {
        const int t = std::min(n, k);
        std::vector<Edge> edges;
        add_p4_free_part(edges, t, n - t, rng);
        for (int a = 0; a < t; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.coin(0.3))
                    edges.emplace_back(a, b);
        return Graph(n, edges);
    }

    struct ClassLayout {
        std::vector<int> sizes;
        std::vector<char> complete;
        std::vector<std::vector<char>> adjacent;
    };

    inline Graph build_classes(const ClassLayout & l)
    {
        std::vector<int> start(l.sizes.size() + 1, 0);
        for (std::size_t i = 0; i < l.sizes.size(); ++i)
            start[i + 1] = start[i] + l.sizes[i];
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < l.sizes.size(); ++i)
            for (std::size_t j = i; j < l.sizes.size(); ++j) {
                if (i == j ? !l.complete[i] : !l.adjacent[i][j])
                    continue;
                for (int a = start[i]; a < start[i + 1]; ++a)
                    for (int b = (i == j ? a + 1 : start[j]); b < start[j + 1]; ++b)
                        edges.emplace_back(a, b);
            }
        return Graph(start.back(), edges);
    }

    inline ClassLayout random_class_layout(int n, int k, Rng & rng)
    {
        ClassLayout l;
        const int classes = std::min(n, rng.uniform(1, k));
        l.sizes.assign(static_cast<std::size_t>(classes), 1);
        for (int extra = n - classes; extra > 0; --extra)
            ++l.sizes[rng.uniform<std::size_t>(0, l.sizes.size() - 1)];
        l.complete.resize(l.sizes.size());
        for (auto && c : l.complete)
            c = rng.coin(0.5);
        l.adjacent.assign(l.sizes.size(), std::vector<char>(l.sizes.size(), 0));
        for (std::size_t i = 0; i < l.sizes.size(); ++i)
            for (std::size_t j = i + 1; j < l.sizes.size(); ++j)
                l.adjacent[i][j] = l.adjacent[j][i] = rng.coin(0.5);
        return l;
    }

    // Random subgraph: keep each vertex and each edge with the given odds.
    inline Graph random_subgraph(const Graph & g, Rng & rng)
    {
        VertexSet keep;
        const double p = 0.4 + 0.6 * rng.uniform(0, 100) / 100.0;
        for (Vertex v = 0; v < g.order(); ++v)
            if (rng.coin(p))
                keep.push_back(v);
        if (keep.empty() && g.order() > 0)
            keep.push_back(rng.uniform(0, g.order() - 1));
        Graph sub = induced_subgraph(g, keep);
        std::vector<Edge> edges;
        for (Vertex a = 0; a < sub.order(); ++a)
            for (Vertex b : sub.neighbors(a))
                if (a < b && rng.coin(0.85))
                    edges.emplace_back(a, b);
        return Graph(sub.order(), edges);
    }

    // Subgraph that keeps the twin-class structure: fewer vertices per class,
    // cliques may become independent, class adjacencies may be dropped.
    inline Graph random_class_subgraph(const ClassLayout & l, Rng & rng)
    {
        ClassLayout sub = l;
        for (std::size_t i = 0; i < l.sizes.size(); ++i) {
            sub.sizes[i] = rng.uniform(0, l.sizes[i]);
            sub.complete[i] = l.complete[i] && rng.coin(0.8);
            for (std::size_t j = i + 1; j < l.sizes.size(); ++j)
                sub.adjacent[i][j] = sub.adjacent[j][i] = l.adjacent[i][j] && rng.coin(0.8);
        }
        return build_classes(sub);
    }

    inline Graph sample_in_class(const ClassSpec & spec, int n, Rng & rng)
    {
        switch (spec.kind) {
        case ClassSpec::Kind::P4Free: return random_p4_free(n, rng);
        case ClassSpec::Kind::Vi: return random_vi(n, spec.param, rng);
        case ClassSpec::Kind::Hitting: return random_hitting(n, spec.param, rng);
        default: return build_classes(random_class_layout(n, spec.param, rng));
        }
    }

} // namespace detail

/// Host of `size` vertices inside the class, randomly relabelled. Planted
/// patterns are random subgraphs of the host (expected yes); otherwise the
/// pattern is sampled independently in the class.
inline GeneratedInstance generate(const ClassSpec & spec, int size, Rng & rng, bool planted)
{
    if (size < 1)
        throw InvalidInput("instance size must be positive");
    GeneratedInstance out;
    if (spec.kind == ClassSpec::Kind::Nd) {
        auto layout = detail::random_class_layout(size, spec.param, rng);
        out.host = detail::build_classes(layout);
        out.pattern = planted ? detail::random_class_subgraph(layout, rng)
                              : detail::sample_in_class(spec, rng.uniform(1, size), rng);
    }
    else {
        out.host = detail::sample_in_class(spec, size, rng);
        out.pattern = planted ? detail::random_subgraph(out.host, rng) : detail::sample_in_class(spec, rng.uniform(1, size), rng);
    }
    if (planted)
        out.expected = true;
    out.host = detail::shuffled(out.host, rng);
    out.pattern = detail::shuffled(out.pattern, rng);
    return out;
}

// ---------------------------------------------------------------------------
// Benchmarks

struct CorpusEntry {
    std::string id;
    Graph host;
    Graph pattern;
};

/// Reads `<id>.host` / `<id>.pattern` pairs from a directory, sorted by id.
inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path & dir)
{
    if (!std::filesystem::is_directory(dir))
        throw InvalidInput("corpus directory not found: " + dir.string());
    std::vector<std::string> ids;
    for (const auto & entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".host")
            ids.push_back(entry.path().stem().string());
    std::sort(ids.begin(), ids.end());
    std::vector<CorpusEntry> out;
    for (const auto & id : ids) {
        auto pattern_path = dir / (id + ".pattern");
        if (!std::filesystem::exists(pattern_path))
            throw InvalidInput("missing pattern file for " + id);
        out.push_back({id, load_graph((dir / (id + ".host")).string()), load_graph(pattern_path.string())});
    }
    return out;
}

inline void save_corpus_entry(const std::filesystem::path & dir, const std::string & id, const Graph & host, const Graph & pattern)
{
    std::filesystem::create_directories(dir);
    save_graph((dir / (id + ".host")).string(), host);
    save_graph((dir / (id + ".pattern")).string(), pattern);
}

struct BenchOptions {
    std::vector<std::string> algorithms;
    std::uint64_t seed = 0;
    int repeats = 10;
    std::int64_t budget = 0;
    bool timing = false; // include wall-clock fields in the JSON
};

inline nlohmann::ordered_json to_json(const SolveResult & r, bool timing)
{
    nlohmann::ordered_json j;
    j["answer"] = to_string(r.answer);
    j["algorithm"] = r.algorithm;
    j["status"] = r.status;
    if (!r.note.empty())
        j["note"] = r.note;
    j["parameters"] = r.parameters;
    if (r.seed)
        j["seed"] = *r.seed;
    j["guesses"] = r.guesses;
    if (timing)
        j["elapsed_ms"] = r.elapsed_ms;
    if (r.embedding) {
        std::vector<int> one_based;
        for (Vertex v : *r.embedding)
            one_based.push_back(v + 1);
        j["embedding"] = one_based;
    }
    return j;
}

struct BenchReport {
    nlohmann::ordered_json json;
    std::string text;
};

/// Runs every algorithm on every corpus entry. Each (instance, algorithm)
/// cell gets its own seed derived from the bench seed, so the output depends
/// only on the corpus and the options. Agreement is measured against the
/// first algorithm of the list on rows where both gave yes/no.
inline BenchReport bench(const std::vector<CorpusEntry> & corpus, const BenchOptions & opt)
{
    BenchReport report;
    auto & rows = report.json["rows"] = nlohmann::ordered_json::array();
    struct Tally {
        int yes = 0, no = 0, unknown = 0, compared = 0, agreed = 0;
        double total_ms = 0;
    };
    std::map<std::string, Tally> tally;
    Rng master(opt.seed);
    for (const auto & entry : corpus) {
        Rng instance_rng = master.split();
        std::optional<Answer> reference;
        nlohmann::ordered_json row;
        row["id"] = entry.id;
        row["host_order"] = entry.host.order();
        row["pattern_order"] = entry.pattern.order();
        auto & results = row["results"] = nlohmann::ordered_json::array();
        for (std::size_t a = 0; a < opt.algorithms.size(); ++a) {
            const auto & algo = opt.algorithms[a];
            SolveOptions so;
            so.seed = instance_rng();
            so.repeats = opt.repeats;
            so.budget = opt.budget;
            auto r = run_algorithm(algo, entry.host, entry.pattern, so);
            auto & t = tally[algo];
            t.total_ms += r.elapsed_ms;
            (r.answer == Answer::Yes ? t.yes : r.answer == Answer::No ? t.no : t.unknown)++;
            if (a == 0 && r.answer != Answer::Unknown)
                reference = r.answer;
            if (a > 0 && reference && r.answer != Answer::Unknown) {
                ++t.compared;
                t.agreed += r.answer == *reference;
            }
            results.push_back(to_json(r, opt.timing));
        }
        rows.push_back(std::move(row));
    }
    auto & summary = report.json["summary"] = nlohmann::ordered_json::array();
    std::ostringstream text;
    text << std::left;
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %6s %6s %8s %10s %12s\n", "algorithm", "yes", "no", "unknown", "agreement",
        "total_ms");
    text << line;
    for (const auto & algo : opt.algorithms) {
        const auto & t = tally[algo];
        nlohmann::ordered_json s;
        s["algorithm"] = algo;
        s["yes"] = t.yes;
        s["no"] = t.no;
        s["unknown"] = t.unknown;
        s["compared"] = t.compared;
        s["agreed"] = t.agreed;
        if (opt.timing)
            s["total_ms"] = t.total_ms;
        summary.push_back(std::move(s));
        std::string agreement = t.compared ? std::to_string(100 * t.agreed / t.compared) + "%" : "-";
        std::snprintf(line, sizeof line, "%-10s %6d %6d %8d %10s %12.1f\n", algo.c_str(), t.yes, t.no, t.unknown,
            agreement.c_str(), t.total_ms);
        text << line;
    }
    report.text = text.str();
    return report;
}

} // namespace mfsi
