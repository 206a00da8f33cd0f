#include "zf/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "zf/errors.hpp"

namespace zf {

namespace {

void write_sorted(std::ostream &out, int n, std::vector<Edge> edges, int d) {
    std::sort(edges.begin(), edges.end());
    out << n << ' ' << edges.size() << ' ' << d << '\n';
    for (const auto &e : edges) out << e.u << ' ' << e.v << '\n';
}

int common_degree(const std::vector<int> &deg) {
    if (deg.empty()) return 0;
    return std::all_of(deg.begin(), deg.end(), [&](int x) { return x == deg[0]; }) ? deg[0] : 0;
}

} // namespace

void write_edge_list(std::ostream &out, const MultiGraph &g) {
    write_sorted(out, g.n(), g.edges(), common_degree(g.degrees()));
}

void write_edge_list(std::ostream &out, const Graph &g) {
    write_sorted(out, g.n(), g.edges(), g.regular_degree().value_or(0));
}

MultiGraph read_edge_list(std::istream &in) {
    std::string line;
    auto next_line = [&](std::string &dst) {
        while (std::getline(in, dst)) {
            const auto first = dst.find_first_not_of(" \t\r");
            if (first != std::string::npos && dst[first] != '#') return true;
        }
        return false;
    };
    if (!next_line(line)) throw PreconditionError("edge list: missing header");
    long long n = -1, m = -1, d = -1;
    {
        std::istringstream hs(line);
        if (!(hs >> n >> m >> d) || n < 0 || m < 0 || d < 0)
            throw PreconditionError("edge list: header must be \"n m d\"");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_line(line)) throw PreconditionError("edge list: fewer edges than declared");
        std::istringstream es(line);
        long long u, v;
        if (!(es >> u >> v)) throw PreconditionError("edge list: bad edge line \"" + line + "\"");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw PreconditionError("edge list: endpoint out of range in \"" + line + "\"");
        edges.push_back({static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))});
    }
    MultiGraph g(static_cast<int>(n), std::move(edges));
    if (d > 0) {
        for (int deg : g.degrees())
            if (deg != d) throw PreconditionError("edge list: degree disagrees with header d");
    }
    return g;
}

MultiGraph load_edge_list(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open " + path);
    return read_edge_list(in);
}

void save_edge_list(const std::string &path, const Graph &g) {
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write " + path);
    write_edge_list(out, g);
}

} // namespace zf
