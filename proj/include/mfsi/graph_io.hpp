#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mfsi/graph.hpp"

namespace mfsi {

// Text format:
//   c <comment>
//   p si <n> <m>
//   e <u> <v>        (1-based endpoints, m lines)

inline Graph read_graph(std::istream & in)
{
    std::string line;
    int n = -1;
    long long m = -1;
    long long seen = 0;
    Graph g;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == 'c')
            continue;
        auto fail = [&](const std::string & why) {
            throw InvalidInput("line " + std::to_string(line_no) + ": " + why);
        };
        if (tag == "p") {
            std::string kind;
            if (n >= 0)
                fail("duplicate header");
            if (!(ls >> kind >> n >> m) || kind != "si" || n < 0 || m < 0)
                fail("expected 'p si <n> <m>'");
            g = Graph(n);
        }
        else if (tag == "e") {
            if (n < 0)
                fail("edge before header");
            long long u = 0, v = 0;
            if (!(ls >> u >> v))
                fail("expected 'e <u> <v>'");
            if (u < 1 || v < 1 || u > n || v > n)
                fail("endpoint out of range");
            g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
            ++seen;
        }
        else
            fail("unknown line tag '" + tag + "'");
    }
    if (n < 0)
        throw InvalidInput("missing 'p si' header");
    if (seen != m)
        throw InvalidInput("header announces " + std::to_string(m) + " edges, found " + std::to_string(seen));
    return g;
}

inline void write_graph(std::ostream & out, const Graph & g)
{
    out << "p si " << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges())
        out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

inline Graph load_graph(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    return read_graph(in);
}

inline void save_graph(const std::string & path, const Graph & g)
{
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write " + path);
    write_graph(out, g);
}

inline std::string to_text(const Graph & g)
{
    std::ostringstream s;
    write_graph(s, g);
    return s.str();
}

inline Graph from_text(const std::string & text)
{
    std::istringstream s(text);
    return read_graph(s);
}

// Witness file: one `v <patternId> <hostId>` line per pattern vertex, 1-based.

inline void write_embedding(std::ostream & out, const Embedding & e)
{
    for (std::size_t i = 0; i < e.size(); ++i)
        out << "v " << i + 1 << ' ' << e[i] + 1 << '\n';
}

inline Embedding read_embedding(std::istream & in)
{
    Embedding e;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        long long p = 0, h = 0;
        if (!(ls >> tag) || tag[0] == 'c')
            continue;
        if (tag != "v" || !(ls >> p >> h) || p < 1 || h < 1)
            throw InvalidInput("bad witness line: " + line);
        if (static_cast<std::size_t>(p) > e.size())
            e.resize(static_cast<std::size_t>(p), -1);
        e[static_cast<std::size_t>(p - 1)] = static_cast<Vertex>(h - 1);
    }
    return e;
}

} // namespace mfsi
