// Command-line front end: solve, recognize, reduce, gen, bench.
// Exit codes: 0 yes, 1 no, 2 unknown, 3 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mfsi/mfsi.hpp"

using namespace mfsi;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 3;

int exit_code(Answer a)
{
    return a == Answer::Yes ? kExitYes : a == Answer::No ? kExitNo : kExitUnknown;
}

void write_file(const std::string & path, const std::function<void(std::ostream &)> & body)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    body(out);
}

std::vector<std::string> split_list(const std::string & text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

// Without a forbidden minor: the cheapest algorithm whose class holds.
std::string choose_algorithm(const Graph & g, const Graph & q)
{
    if (is_p4_free(g) && is_p4_free(q))
        return "p4free";
    if (twin_partition(g).size() <= 6)
        return "nd";
    if (find_vi_set(g, 5))
        return "vi";
    if (find_p4_hitting_set(g, 3))
        return "hitting";
    return "oracle";
}

struct SolveArgs {
    std::string host, pattern, algo = "auto", forbidden, witness;
    std::optional<int> param;
    std::uint64_t seed = 0;
    int repeats = 10;
    std::int64_t budget = 0;
    bool json = false, fallback = false;
};

int run_solve(const SolveArgs & a)
{
    Graph g = load_graph(a.host), q = load_graph(a.pattern);
    SolveOptions opt;
    opt.param = a.param;
    opt.seed = a.seed;
    opt.repeats = a.repeats;
    opt.budget = a.budget;
    opt.oracle_fallback = a.fallback;
    SolveResult r;
    if (!a.forbidden.empty())
        r = dispatch(g, q, parse_linear_forest(a.forbidden), opt);
    else
        r = run_algorithm(a.algo == "auto" ? choose_algorithm(g, q) : a.algo, g, q, opt);
    if (a.json)
        std::cout << to_json(r, true).dump(2) << "\n";
    else {
        std::cout << to_string(r.answer) << " (" << r.algorithm;
        for (const auto & [k, v] : r.parameters)
            std::cout << ", " << k << "=" << v;
        std::cout << ")\n";
        if (!r.note.empty())
            std::cout << "c " << r.status << ": " << r.note << "\n";
        if (r.embedding)
            write_embedding(std::cout, *r.embedding);
    }
    if (r.embedding && !a.witness.empty())
        write_file(a.witness, [&](std::ostream & out) { write_embedding(out, *r.embedding); });
    return exit_code(r.answer);
}

int run_recognize(const std::string & path, const std::string & cls, std::optional<int> param)
{
    Graph g = load_graph(path);
    auto print_set = [](const VertexSet & s) {
        std::cout << "set";
        for (Vertex v : s)
            std::cout << " " << v + 1;
        std::cout << "\n";
    };
    if (cls == "p4free") {
        bool ok = is_p4_free(g);
        std::cout << (ok ? "yes" : "no") << "\n";
        return ok ? kExitYes : kExitNo;
    }
    if (cls == "vi") {
        if (!param) {
            std::cout << "vi " << *detail::min_vi(g) << "\n";
            return kExitYes;
        }
        auto cert = find_vi_set(g, *param);
        std::cout << (cert ? "yes" : "no") << "\n";
        if (cert)
            print_set(cert->deletion_set);
        return cert ? kExitYes : kExitNo;
    }
    if (cls == "hitting") {
        if (!param) {
            std::cout << "hitting " << *detail::min_p4_hitting(g, g.order()) << "\n";
            return kExitYes;
        }
        auto set = find_p4_hitting_set(g, *param);
        std::cout << (set ? "yes" : "no") << "\n";
        if (set)
            print_set(*set);
        return set ? kExitYes : kExitNo;
    }
    if (cls == "nd") {
        auto p = twin_partition(g);
        std::cout << "nd " << p.size() << "\n";
        for (std::size_t c = 0; c < p.classes.size(); ++c) {
            std::cout << "class " << (p.kinds[c] == TwinPartition::Kind::Complete ? "clique" : "independent");
            for (Vertex v : p.classes[c])
                std::cout << " " << v + 1;
            std::cout << "\n";
        }
        if (!param)
            return kExitYes;
        return p.size() <= *param ? kExitYes : kExitNo;
    }
    throw InvalidInput("unknown class: " + cls);
}

struct ReduceArgs {
    std::string from, input, out_host, out_pattern, witness, mode = "linear";
};

int run_reduce(const ReduceArgs & a)
{
    std::ifstream in(a.input);
    if (!in)
        throw InvalidInput("cannot read " + a.input);
    Graph host, pattern;
    std::optional<Embedding> witness;
    bool solvable = true;
    if (a.from == "3partition") {
        auto inst = parse_3partition(in);
        if (a.mode != "linear" && a.mode != "cluster")
            throw InvalidInput("mode must be linear or cluster");
        auto red = reduce_3partition(inst, a.mode == "linear" ? PartitionMode::LinearForest : PartitionMode::Cluster);
        host = red.host;
        pattern = red.pattern;
        if (!a.witness.empty()) {
            auto triples = solve_3partition(inst);
            solvable = triples.has_value();
            if (triples)
                witness = build_3partition_witness(inst, *triples);
        }
    }
    else if (a.from == "x3c") {
        auto inst = parse_x3c(in);
        auto red = reduce_x3c(inst);
        host = red.host;
        pattern = red.pattern;
        if (!a.witness.empty()) {
            auto cover = solve_x3c(inst);
            solvable = cover.has_value();
            if (cover)
                witness = build_x3c_witness(inst, red, *cover);
        }
    }
    else if (a.from == "3sat21") {
        auto f = parse_sat21(in);
        auto red = reduce_3sat21(f);
        host = red.host;
        pattern = red.pattern;
        if (!a.witness.empty()) {
            auto assignment = solve_sat21(f);
            solvable = assignment.has_value();
            if (assignment)
                witness = build_3sat21_witness(f, red, *assignment);
        }
    }
    else
        throw InvalidInput("unknown source problem: " + a.from);
    save_graph(a.out_host, host);
    save_graph(a.out_pattern, pattern);
    std::cout << "host " << host.order() << " vertices " << host.size() << " edges\n";
    std::cout << "pattern " << pattern.order() << " vertices " << pattern.size() << " edges\n";
    if (a.witness.empty())
        return kExitYes;
    if (!witness) {
        std::cout << "source instance has no solution; no witness written\n";
        return kExitNo;
    }
    if (!verify_embedding(pattern, host, *witness))
        throw std::logic_error("witness does not verify");
    write_file(a.witness, [&](std::ostream & out) { write_embedding(out, *witness); });
    std::cout << "witness verified\n";
    return solvable ? kExitYes : kExitNo;
}

struct GenArgs {
    std::string cls, out_host, out_pattern, out_dir;
    int size = 10, count = 1;
    std::uint64_t seed = 0;
    bool planted = false;
};

int run_gen(const GenArgs & a)
{
    auto spec = parse_class_spec(a.cls);
    Rng rng(a.seed);
    if (!a.out_dir.empty()) {
        for (int i = 0; i < a.count; ++i) {
            auto inst = generate(spec, a.size, rng, a.planted);
            char id[32];
            std::snprintf(id, sizeof id, "inst%04d", i);
            save_corpus_entry(a.out_dir, id, inst.host, inst.pattern);
        }
        std::cout << "wrote " << a.count << " instances to " << a.out_dir << "\n";
        return kExitYes;
    }
    if (a.out_host.empty() || a.out_pattern.empty())
        throw InvalidInput("gen needs --out-host and --out-pattern, or --out-dir");
    auto inst = generate(spec, a.size, rng, a.planted);
    save_graph(a.out_host, inst.host);
    save_graph(a.out_pattern, inst.pattern);
    std::cout << "expected " << (inst.expected ? (*inst.expected ? "yes" : "no") : "unknown") << "\n";
    return kExitYes;
}

struct BenchArgs {
    std::string corpus, algos = "oracle", json_out;
    std::uint64_t seed = 0;
    int repeats = 10;
    std::int64_t budget = 0;
    bool timing = false;
};

int run_bench(const BenchArgs & a)
{
    BenchOptions opt;
    opt.algorithms = split_list(a.algos);
    for (const auto & name : opt.algorithms)
        if (std::find(algorithm_names().begin(), algorithm_names().end(), name) == algorithm_names().end())
            throw InvalidInput("unknown algorithm: " + name);
    opt.seed = a.seed;
    opt.repeats = a.repeats;
    opt.budget = a.budget;
    opt.timing = a.timing;
    auto report = bench(load_corpus(a.corpus), opt);
    if (a.json_out.empty()) {
        std::cout << report.json.dump(2) << "\n";
        std::cerr << report.text;
    }
    else {
        write_file(a.json_out, [&](std::ostream & out) { out << report.json.dump(2) << "\n"; });
        std::cout << report.text;
    }
    return kExitYes;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Subgraph isomorphism on linear-forest-minor-free graph classes"};
    app.require_subcommand(1);
    int code = kExitError;

    SolveArgs solve;
    auto * s = app.add_subcommand("solve", "decide whether the pattern is a subgraph of the host");
    s->add_option("--host", solve.host)->required();
    s->add_option("--pattern", solve.pattern)->required();
    s->add_option("--algo", solve.algo)
        ->check(CLI::IsMember({"auto", "p4free", "p4kp3", "vi", "hitting", "nd", "oracle"}));
    s->add_option("--param", solve.param, "class parameter k");
    s->add_option("--forbidden", solve.forbidden, "forbidden linear forest as path orders, e.g. \"4,3,3\"");
    s->add_option("--seed", solve.seed);
    s->add_option("--repeats", solve.repeats)->check(CLI::PositiveNumber);
    s->add_option("--budget", solve.budget, "search-node cap, 0 = none");
    s->add_option("--witness", solve.witness, "write the embedding here");
    s->add_flag("--json", solve.json);
    s->add_flag("--fallback-oracle", solve.fallback, "use the oracle when no polynomial route applies");
    s->callback([&] { code = run_solve(solve); });

    std::string rec_graph, rec_class;
    std::optional<int> rec_param;
    auto * r = app.add_subcommand("recognize", "class membership and certificates");
    r->add_option("--graph", rec_graph)->required();
    r->add_option("--class", rec_class)->required()->check(CLI::IsMember({"p4free", "vi", "hitting", "nd"}));
    r->add_option("--param", rec_param);
    r->callback([&] { code = run_recognize(rec_graph, rec_class, rec_param); });

    ReduceArgs reduce;
    auto * d = app.add_subcommand("reduce", "build a hardness-reduction instance");
    d->add_option("--from", reduce.from)->required()->check(CLI::IsMember({"3partition", "x3c", "3sat21"}));
    d->add_option("--input", reduce.input)->required();
    d->add_option("--out-host", reduce.out_host)->required();
    d->add_option("--out-pattern", reduce.out_pattern)->required();
    d->add_option("--witness", reduce.witness, "solve the source instance and write the forward embedding");
    d->add_option("--mode", reduce.mode, "3partition host shape: linear or cluster");
    d->callback([&] { code = run_reduce(reduce); });

    GenArgs gen;
    auto * gsub = app.add_subcommand("gen", "generate a random instance in a class");
    gsub->add_option("--class", gen.cls, "p4free | vi:k | hitting:k | nd:k")->required();
    gsub->add_option("--size", gen.size)->required();
    gsub->add_option("--seed", gen.seed);
    gsub->add_flag("--planted", gen.planted);
    gsub->add_option("--out-host", gen.out_host);
    gsub->add_option("--out-pattern", gen.out_pattern);
    gsub->add_option("--out-dir", gen.out_dir, "write a corpus of --count instances");
    gsub->add_option("--count", gen.count);
    gsub->callback([&] { code = run_gen(gen); });

    BenchArgs bench_args;
    auto * b = app.add_subcommand("bench", "run algorithms over a corpus");
    b->add_option("--corpus", bench_args.corpus)->required();
    b->add_option("--algos", bench_args.algos, "comma-separated; the first is the agreement reference");
    b->add_option("--seed", bench_args.seed);
    b->add_option("--repeats", bench_args.repeats);
    b->add_option("--budget", bench_args.budget);
    b->add_option("--json", bench_args.json_out, "write JSON here instead of stdout");
    b->add_flag("--timing", bench_args.timing, "include wall-clock times in the JSON");
    b->callback([&] { code = run_bench(bench_args); });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitError;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return code;
}
