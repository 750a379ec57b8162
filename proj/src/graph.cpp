#include "pg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "pg/errors.hpp"
#include "pg/rng.hpp"

namespace pg {

namespace {

Graph finalize(int n, std::vector<std::pair<int, int>> edges) {
    Graph g;
    g.n = n;
    g.adjacency.assign(static_cast<std::size_t>(n) * n, 0);
    g.degrees.assign(n, 0);
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : edges) {
        if (i == j) throw param_error("graph: self-loop rejected");
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= n) throw param_error("graph: edge endpoint out of range");
        if (!seen.insert({i, j}).second) throw param_error("graph: duplicate edge rejected");
    }
    for (auto [i, j] : seen) {
        g.edges.emplace_back(i, j);
        g.adjacency[static_cast<std::size_t>(i) * n + j] = 1;
        g.adjacency[static_cast<std::size_t>(j) * n + i] = 1;
        ++g.degrees[i];
        ++g.degrees[j];
    }
    return g;
}

}  // namespace

Graph make_complete(int n) {
    if (n < 2) throw param_error("complete: n must be >= 2");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return finalize(n, std::move(edges));
}

Graph make_cycle(int n) {
    if (n < 3) throw param_error("cycle: n must be >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return finalize(n, std::move(edges));
}

Graph make_grid2d(int rows, int cols, bool wrap) {
    if (rows < 1 || cols < 1 || rows * cols < 2)
        throw param_error("grid2d: need rows*cols >= 2");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::set<std::pair<int, int>> edges;
    auto add = [&edges](int a, int b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        edges.insert({a, b});
    };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) add(id(r, c), id(r, c + 1));
            else if (wrap && cols > 2) add(id(r, c), id(r, 0));
            if (r + 1 < rows) add(id(r, c), id(r + 1, c));
            else if (wrap && rows > 2) add(id(r, c), id(0, c));
        }
    }
    return finalize(rows * cols, {edges.begin(), edges.end()});
}

Graph make_watts_strogatz(int n, int k, double p, std::uint64_t seed, int* effective_k) {
    if (n < 4) throw param_error("watts_strogatz: n must be >= 4");
    if (k < 2) throw param_error("watts_strogatz: k must be >= 2");
    if (!(p > 0.0 && p < 1.0)) throw param_error("watts_strogatz: p must be in (0,1)");
    int keff = (k % 2 == 0) ? k : k + 1;  // ring lattice needs even degree
    if (keff >= n) throw param_error("watts_strogatz: k must be < n");
    if (effective_k) *effective_k = keff;

    for (int attempt = 0; attempt < 100; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt));
        // adjacency sets for duplicate checks during rewiring
        std::vector<std::set<int>> adj(n);
        std::vector<std::pair<int, int>> ring;
        for (int i = 0; i < n; ++i) {
            for (int j = 1; j <= keff / 2; ++j) {
                int v = (i + j) % n;
                ring.emplace_back(i, v);
                adj[i].insert(v);
                adj[v].insert(i);
            }
        }
        // Rewire the far endpoint of each lattice edge with probability p;
        // redraw targets that would create self-loops or duplicates.
        std::vector<std::pair<int, int>> edges;
        edges.reserve(ring.size());
        for (auto [u, v] : ring) {
            if (rng.next_unit() < p) {
                int w = -1;
                for (int tries = 0; tries < 10 * n; ++tries) {
                    int cand = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
                    if (cand == u || adj[u].count(cand)) continue;
                    w = cand;
                    break;
                }
                if (w >= 0) {
                    adj[u].erase(v);
                    adj[v].erase(u);
                    adj[u].insert(w);
                    adj[w].insert(u);
                    v = w;
                }
            }
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        Graph g = finalize(n, std::move(edges));
        if (is_connected(g)) return g;
    }
    throw param_error("watts_strogatz: no connected graph within 100 attempts");
}

Graph make_from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs) {
    if (n < 2) throw param_error("edge_list: n must be >= 2");
    return finalize(n, pairs);
}

Matrix laplacian(const Graph& g) {
    Matrix l(g.n, g.n);
    for (int i = 0; i < g.n; ++i) l(i, i) = g.degrees[i];
    for (auto [i, j] : g.edges) {
        l(i, j) = -1.0;
        l(j, i) = -1.0;
    }
    return l;
}

Spectrum spectrum(const Graph& g) {
    Spectrum s;
    s.laplacian = laplacian(g);
    s.eigenvalues = jacobi_eigen_sym(s.laplacian).values;
    s.spectral_gap = g.n >= 2 ? s.eigenvalues[1] : 0.0;
    return s;
}

TransitionMatrix transition(const Graph& g, double alpha) {
    if (alpha < 1.0) throw param_error("transition: alpha must be >= 1");
    if (!is_connected(g)) throw param_error("transition: graph must be connected");
    const double m = static_cast<double>(g.edge_count());
    TransitionMatrix t;
    t.alpha = alpha;
    t.w = Matrix(g.n, g.n);
    for (int i = 0; i < g.n; ++i) t.w(i, i) = 1.0 - g.degrees[i] / (alpha * m);
    for (auto [i, j] : g.edges) {
        t.w(i, j) = 1.0 / (alpha * m);
        t.w(j, i) = 1.0 / (alpha * m);
    }
    t.lambda2 = 1.0 - spectrum(g).spectral_gap / (alpha * m);
    return t;
}

Graph tensor_with_complete(const Graph& g, int k) {
    if (k < 2) throw param_error("tensor_with_complete: k must be >= 2");
    if (!is_connected(g)) throw param_error("tensor_with_complete: graph must be connected");
    if (is_bipartite(g)) throw param_error("tensor_with_complete: graph must be non-bipartite");
    if (g.edge_count() == g.n * (g.n - 1) / 2)
        throw param_error("tensor_with_complete: graph must not be complete");
    // Node (a,i) -> a*n + i for copy a of the base graph.
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(k) * k * g.edges.size());
    for (auto [i, j] : g.edges) {
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) edges.emplace_back(a * g.n + i, b * g.n + j);
    }
    return finalize(k * g.n, std::move(edges));
}

DistanceTable distances(const Graph& g) {
    DistanceTable table;
    table.n = g.n;
    table.dist.assign(static_cast<std::size_t>(g.n) * g.n, -1);
    std::vector<std::vector<int>> nbrs(g.n);
    for (auto [i, j] : g.edges) {
        nbrs[i].push_back(j);
        nbrs[j].push_back(i);
    }
    int diameter = 0;
    for (int src = 0; src < g.n; ++src) {
        int* row = table.dist.data() + static_cast<std::size_t>(src) * g.n;
        std::deque<int> frontier{src};
        row[src] = 0;
        while (!frontier.empty()) {
            int u = frontier.front();
            frontier.pop_front();
            for (int v : nbrs[u]) {
                if (row[v] < 0) {
                    row[v] = row[u] + 1;
                    diameter = std::max(diameter, row[v]);
                    frontier.push_back(v);
                }
            }
        }
    }
    table.diameter = diameter;
    return table;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    std::vector<std::vector<int>> nbrs(g.n);
    for (auto [i, j] : g.edges) {
        nbrs[i].push_back(j);
        nbrs[j].push_back(i);
    }
    std::vector<char> seen(g.n, 0);
    std::deque<int> frontier{0};
    seen[0] = 1;
    int count = 1;
    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop_front();
        for (int v : nbrs[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                frontier.push_back(v);
            }
        }
    }
    return count == g.n;
}

bool is_bipartite(const Graph& g) {
    std::vector<std::vector<int>> nbrs(g.n);
    for (auto [i, j] : g.edges) {
        nbrs[i].push_back(j);
        nbrs[j].push_back(i);
    }
    std::vector<int> color(g.n, -1);
    for (int src = 0; src < g.n; ++src) {
        if (color[src] >= 0) continue;
        color[src] = 0;
        std::deque<int> frontier{src};
        while (!frontier.empty()) {
            int u = frontier.front();
            frontier.pop_front();
            for (int v : nbrs[u]) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    frontier.push_back(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

namespace {

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, delim)) parts.push_back(cur);
    return parts;
}

int to_int(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw param_error(std::string("topology: bad integer for ") + what + ": '" + s + "'");
    }
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw param_error(std::string("topology: bad number for ") + what + ": '" + s + "'");
    }
}

}  // namespace

Graph parse_topology(const std::string& descriptor, std::vector<std::string>* notes) {
    auto parts = split(descriptor, ':');
    if (parts.empty()) throw param_error("topology: empty descriptor");
    const std::string& kind = parts[0];

    if (kind == "complete") {
        if (parts.size() != 2) throw param_error("topology: expected complete:<n>");
        return make_complete(to_int(parts[1], "n"));
    }
    if (kind == "cycle") {
        if (parts.size() != 2) throw param_error("topology: expected cycle:<n>");
        return make_cycle(to_int(parts[1], "n"));
    }
    if (kind == "grid2d") {
        if (parts.size() != 2 && parts.size() != 3)
            throw param_error("topology: expected grid2d:<rows>x<cols>[:wrap]");
        auto dims = split(parts[1], 'x');
        if (dims.size() != 2) throw param_error("topology: expected grid2d:<rows>x<cols>[:wrap]");
        bool wrap = false;
        if (parts.size() == 3) {
            if (parts[2] != "wrap") throw param_error("topology: grid2d trailing token must be 'wrap'");
            wrap = true;
        }
        return make_grid2d(to_int(dims[0], "rows"), to_int(dims[1], "cols"), wrap);
    }
    if (kind == "grid") {
        // Unqualified grid:<n>: most nearly square rows x cols = n torus
        // (699 factors as 3 x 233).
        if (parts.size() != 2) throw param_error("topology: expected grid:<n>");
        int n = to_int(parts[1], "n");
        if (n < 2) throw param_error("topology: grid needs n >= 2");
        int rows = 1;
        for (int r = 1; r * r <= n; ++r)
            if (n % r == 0) rows = r;
        if (notes)
            notes->push_back("grid:" + std::to_string(n) + " realized as grid2d:" +
                             std::to_string(rows) + "x" + std::to_string(n / rows) + ":wrap");
        return make_grid2d(rows, n / rows, true);
    }
    if (kind == "ws") {
        if (parts.size() != 5) throw param_error("topology: expected ws:<n>:<k>:<p>:<seed>");
        int n = to_int(parts[1], "n");
        int k = to_int(parts[2], "k");
        double p = to_double(parts[3], "p");
        int seed = to_int(parts[4], "seed");
        int keff = k;
        Graph g = make_watts_strogatz(n, k, p, static_cast<std::uint64_t>(seed), &keff);
        if (notes && keff != k)
            notes->push_back("watts_strogatz: odd k=" + std::to_string(k) + " rounded up to " +
                             std::to_string(keff));
        return g;
    }
    if (kind == "file") {
        if (parts.size() < 2) throw param_error("topology: expected file:<path>");
        // Re-join in case the path itself contains ':'.
        std::string path = descriptor.substr(5);
        std::ifstream in(path);
        if (!in) throw data_error("topology: cannot open edge list file '" + path + "'");
        std::vector<std::pair<int, int>> pairs;
        int maxnode = -1;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            int a, b;
            if (!(ls >> a >> b))
                throw data_error("topology: bad edge at " + path + ":" + std::to_string(lineno));
            pairs.emplace_back(a, b);
            maxnode = std::max({maxnode, a, b});
        }
        if (pairs.empty()) throw data_error("topology: edge list file '" + path + "' is empty");
        return make_from_edge_list(maxnode + 1, pairs);
    }
    throw param_error("topology: unknown kind '" + kind + "'");
}

}  // namespace pg
