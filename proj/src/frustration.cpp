#include "magicwit/frustration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace magicwit {

bool FrustrationGraph::edge(int a, int b) const {
    const auto& nb = adjacency[a];
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::optional<std::vector<int>> FrustrationGraph::bipartition() const {
    std::vector<int> color(size(), -1);
    for (size_t start = 0; start < size(); ++start) {
        if (color[start] >= 0) continue;
        color[start] = 0;
        std::deque<int> queue{int(start)};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int u : adjacency[v]) {
                if (color[u] < 0) {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if (color[u] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

std::string FrustrationGraph::edge_list() const {
    std::ostringstream out;
    out << "V " << size() << "\n";
    for (size_t i = 0; i < size(); ++i)
        out << "v " << i << " " << vertices[i].str() << " " << weights[i] << "\n";
    for (size_t i = 0; i < size(); ++i)
        for (int j : adjacency[i])
            if (int(i) < j) out << "e " << i << " " << j << "\n";
    return out.str();
}

FrustrationGraph build_graph(const PauliHamiltonian& h) {
    FrustrationGraph g;
    for (const auto& t : h.terms()) {
        g.vertices.push_back(t.op);
        g.weights.push_back(t.weight);
    }
    g.adjacency.assign(g.size(), {});
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i + 1; j < g.size(); ++j)
            if (!g.vertices[i].commutes_with(g.vertices[j])) {
                g.adjacency[i].push_back(int(j));
                g.adjacency[j].push_back(int(i));
            }
    for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
    return g;
}

bool CommutingSubset::all_consistent() const {
    return std::all_of(agreement.begin(), agreement.end(), [](int a) { return a == +1; });
}

namespace {

// Symplectic span of a commuting member list: basis member positions, and for
// each member its decomposition mask over basis positions plus the sign
// relation c = (product of basis Paulis) vs the stored term.
struct SpanInfo {
    /// Reduced row products: independent generators of the span. Every member
    /// equals base_sign * prod_{j in combo} row_products[j].
    std::vector<PauliString> row_products;
    std::vector<uint64_t> combo;  // per member: bitmask over row positions
    std::vector<int> base_sign;   // per member: c_t in {-1, +1}
};

SpanInfo analyze_span(const std::vector<PauliString>& ops) {
    struct Row {
        uint64_t x, z;
        uint64_t combo;
    };
    SpanInfo info;
    std::vector<Row> rows;
    for (size_t t = 0; t < ops.size(); ++t) {
        uint64_t x = ops[t].x_bits(), z = ops[t].z_bits();
        uint64_t combo = 0;
        PauliString acc = PauliString::identity(ops[t].n());
        for (size_t j = 0; j < rows.size(); ++j) {
            const auto& row = rows[j];
            uint64_t lead_x = row.x & ~(row.x - 1);
            bool hit = row.x ? ((x & lead_x) != 0) : ((z & (row.z & ~(row.z - 1))) != 0);
            if (!hit) continue;
            x ^= row.x;
            z ^= row.z;
            combo ^= row.combo;
            acc = multiply(acc, info.row_products[j]).value;
        }
        if (x == 0 && z == 0) {
            // Dependent: acc has the member's pattern; record the sign relation
            // relative to the stored term.
            info.combo.push_back(combo);
            info.base_sign.push_back(acc.sign() * ops[t].sign());
        } else {
            uint64_t position = uint64_t(1) << info.row_products.size();
            info.row_products.push_back(multiply(acc, ops[t]).value);
            rows.push_back({x, z, combo | position});
            info.combo.push_back(combo | position);
            info.base_sign.push_back(+1);
        }
    }
    return info;
}

// Best sign assignment on the basis generators: maximizes
// sum_t w_t * c_t * prod_{j in combo_t} sigma_j over sigma in {+-1}^r.
struct SignOptimum {
    double weight;
    uint64_t sigma;  // bit set = sigma_j == -1
};

SignOptimum optimize_signs(const SpanInfo& info, const std::vector<double>& weights) {
    int r = int(info.row_products.size());
    if (r > 20) throw std::invalid_argument("optimize_signs: rank too large");
    SignOptimum best{-std::numeric_limits<double>::infinity(), 0};
    for (uint64_t sigma = 0; sigma < (uint64_t(1) << r); ++sigma) {
        double w = 0.0;
        for (size_t t = 0; t < weights.size(); ++t) {
            int flip = (std::popcount(sigma & info.combo[t]) & 1) ? -1 : +1;
            w += weights[t] * info.base_sign[t] * flip;
        }
        if (w > best.weight + 1e-15) best = {w, sigma};
    }
    return best;
}

CommutingSubset make_subset(const PauliHamiltonian& h, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    std::vector<PauliString> ops;
    std::vector<double> weights;
    for (int m : members) {
        ops.push_back(h.terms()[m].op);
        weights.push_back(h.terms()[m].weight);
    }
    SpanInfo info = analyze_span(ops);
    SignOptimum best = optimize_signs(info, weights);

    CommutingSubset subset;
    subset.members = std::move(members);
    subset.signed_weight = best.weight;
    for (size_t t = 0; t < ops.size(); ++t) {
        int flip = (std::popcount(best.sigma & info.combo[t]) & 1) ? -1 : +1;
        subset.agreement.push_back(info.base_sign[t] * flip);
    }
    for (size_t j = 0; j < info.row_products.size(); ++j) {
        const PauliString& row = info.row_products[j];
        subset.generators.push_back(((best.sigma >> j) & 1) ? row.negated() : row);
    }
    return subset;
}

// Bron-Kerbosch with pivoting over bitmask sets (commutation graph cliques =
// independent sets of the frustration graph).
void bron_kerbosch(uint64_t r, uint64_t p, uint64_t x, const std::vector<uint64_t>& compat,
                   std::vector<uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    uint64_t px = p | x;
    int pivot = std::countr_zero(px);
    int best_cover = -1;
    for (uint64_t m = px; m; m &= m - 1) {
        int v = std::countr_zero(m);
        int cover = std::popcount(p & compat[v]);
        if (cover > best_cover) {
            best_cover = cover;
            pivot = v;
        }
    }
    for (uint64_t m = p & ~compat[pivot]; m; m &= m - 1) {
        int v = std::countr_zero(m);
        uint64_t vbit = uint64_t(1) << v;
        bron_kerbosch(r | vbit, p & compat[v], x & compat[v], compat, out);
        p &= ~vbit;
        x |= vbit;
    }
}

}  // namespace

std::vector<CommutingSubset> enumerate_cmax(const PauliHamiltonian& h) {
    size_t v = h.term_count();
    if (v == 0) throw std::invalid_argument("enumerate_cmax: empty Hamiltonian");
    if (v > 30) throw std::invalid_argument("enumerate_cmax: more than 30 terms");
    std::vector<uint64_t> compat(v, 0);
    for (size_t i = 0; i < v; ++i)
        for (size_t j = 0; j < v; ++j)
            if (i != j && h.terms()[i].op.commutes_with(h.terms()[j].op))
                compat[i] |= uint64_t(1) << j;

    std::vector<uint64_t> cliques;
    bron_kerbosch(0, (v == 64) ? ~uint64_t(0) : ((uint64_t(1) << v) - 1), 0, compat, cliques);
    std::sort(cliques.begin(), cliques.end());

    std::vector<CommutingSubset> out;
    out.reserve(cliques.size());
    for (uint64_t clique : cliques) {
        std::vector<int> members;
        for (uint64_t m = clique; m; m &= m - 1) members.push_back(std::countr_zero(m));
        out.push_back(make_subset(h, std::move(members)));
    }
    return out;
}

bool subset_sign_consistent(const PauliHamiltonian& h, const std::vector<int>& members) {
    std::vector<PauliString> ops;
    for (int m : members) {
        if (m < 0 || size_t(m) >= h.term_count())
            throw std::invalid_argument("subset_sign_consistent: bad member index");
        ops.push_back(h.terms()[m].op);
    }
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = i + 1; j < ops.size(); ++j)
            if (!ops[i].commutes_with(ops[j])) return false;
    SpanInfo info = analyze_span(ops);
    return std::all_of(info.base_sign.begin(), info.base_sign.end(), [](int c) { return c == +1; });
}

namespace {

struct BranchAndBound {
    const std::vector<double>& w;
    const std::vector<uint64_t>& adj;
    double best = 0.0;

    double clique_cover_bound(uint64_t cand) const {
        double bound = 0.0;
        while (cand) {
            // Heaviest uncovered vertex starts a clique; greedily absorb
            // mutually adjacent candidates.
            int seed = -1;
            for (uint64_t m = cand; m; m &= m - 1) {
                int v = std::countr_zero(m);
                if (seed < 0 || w[v] > w[seed]) seed = v;
            }
            uint64_t clique = uint64_t(1) << seed;
            uint64_t pool = cand & adj[seed];
            while (pool) {
                int v = std::countr_zero(pool);
                clique |= uint64_t(1) << v;
                pool &= adj[v];
            }
            bound += w[seed];
            cand &= ~clique;
        }
        return bound;
    }

    void run(uint64_t cand, double cur) {
        if (cur > best) best = cur;
        if (!cand) return;
        if (cur + clique_cover_bound(cand) <= best + 1e-12) return;
        int v = -1;
        for (uint64_t m = cand; m; m &= m - 1) {
            int u = std::countr_zero(m);
            if (v < 0 || w[u] > w[v]) v = u;
        }
        uint64_t vbit = uint64_t(1) << v;
        run(cand & ~(vbit | adj[v]), cur + w[v]);
        run(cand & ~vbit, cur);
    }
};

double greedy_lower_bound_masked(const FrustrationGraph& g, uint64_t allowed) {
    std::vector<int> order;
    for (size_t i = 0; i < g.size(); ++i)
        if ((allowed >> i) & 1) order.push_back(int(i));
    std::sort(order.begin(), order.end(), [&](int a, int b) { return g.weights[a] > g.weights[b]; });
    std::vector<char> blocked(g.size(), 0);
    double total = 0.0;
    for (int v : order) {
        if (blocked[v]) continue;
        total += g.weights[v];
        blocked[v] = 1;
        for (int u : g.adjacency[v]) blocked[u] = 1;
    }
    return total;
}

// Max weight over independent sets within `allowed` (bitmask path, V <= 64).
double mwis_weight_masked(const FrustrationGraph& g, uint64_t allowed) {
    std::vector<uint64_t> adj(g.size(), 0);
    for (size_t i = 0; i < g.size(); ++i)
        for (int j : g.adjacency[i]) adj[i] |= uint64_t(1) << j;
    for (auto& m : adj) m &= allowed;
    BranchAndBound solver{g.weights, adj};
    solver.best = greedy_lower_bound_masked(g, allowed) - 1e-12;
    solver.run(allowed, 0.0);
    return solver.best;
}

// Dinic max-flow on doubles for the bipartite vertex-cover reduction.
struct Dinic {
    struct Edge {
        int to;
        double cap;
        int rev;
    };
    std::vector<std::vector<Edge>> graph;
    std::vector<int> level, iter;

    explicit Dinic(int nodes) : graph(nodes) {}

    void add_edge(int from, int to, double cap) {
        graph[from].push_back({to, cap, int(graph[to].size())});
        graph[to].push_back({from, 0.0, int(graph[from].size()) - 1});
    }

    bool bfs(int s, int t) {
        level.assign(graph.size(), -1);
        std::deque<int> queue{s};
        level[s] = 0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (const auto& e : graph[v])
                if (e.cap > 1e-12 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    queue.push_back(e.to);
                }
        }
        return level[t] >= 0;
    }

    double dfs(int v, int t, double f) {
        if (v == t) return f;
        for (int& i = iter[v]; i < int(graph[v].size()); ++i) {
            Edge& e = graph[v][i];
            if (e.cap > 1e-12 && level[v] < level[e.to]) {
                double d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 1e-12) {
                    e.cap -= d;
                    graph[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0.0;
    }

    double max_flow(int s, int t) {
        double flow = 0.0;
        while (bfs(s, t)) {
            iter.assign(graph.size(), 0);
            double f;
            while ((f = dfs(s, t, 1e30)) > 1e-12) flow += f;
        }
        return flow;
    }

    std::vector<bool> source_side(int s) {
        std::vector<bool> reach(graph.size(), false);
        std::deque<int> queue{s};
        reach[s] = true;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (const auto& e : graph[v])
                if (e.cap > 1e-12 && !reach[e.to]) {
                    reach[e.to] = true;
                    queue.push_back(e.to);
                }
        }
        return reach;
    }
};

// MWIS weight over an allowed subset for a bipartite graph via min cut.
double mwis_weight_bipartite(const FrustrationGraph& g, const std::vector<int>& color,
                             const std::vector<char>& allowed) {
    int v = int(g.size());
    Dinic dinic(v + 2);
    int source = v, sink = v + 1;
    double total = 0.0;
    for (int i = 0; i < v; ++i) {
        if (!allowed[i]) continue;
        total += g.weights[i];
        if (color[i] == 0)
            dinic.add_edge(source, i, g.weights[i]);
        else
            dinic.add_edge(i, sink, g.weights[i]);
    }
    for (int i = 0; i < v; ++i) {
        if (!allowed[i] || color[i] != 0) continue;
        for (int j : g.adjacency[i])
            if (allowed[j]) dinic.add_edge(i, j, 1e30);
    }
    return total - dinic.max_flow(source, sink);
}

}  // namespace

MwisResult mwis_exact(const FrustrationGraph& g) {
    int v = int(g.size());
    if (v == 0) return {};
    auto color = g.bipartition();
    if (!color && v > 40) throw std::invalid_argument("mwis_exact: more than 40 vertices");
    if (!color && v > 64) throw std::invalid_argument("mwis_exact: mask capacity exceeded");

    auto solve_allowed = [&](const std::vector<char>& allowed) -> double {
        if (color) return mwis_weight_bipartite(g, *color, allowed);
        uint64_t mask = 0;
        for (int i = 0; i < v; ++i)
            if (allowed[i]) mask |= uint64_t(1) << i;
        return mwis_weight_masked(g, mask);
    };

    std::vector<char> allowed(v, 1);
    double target = solve_allowed(allowed);

    // Lexicographically smallest optimum: fix vertices in index order whenever
    // doing so preserves the optimal weight.
    MwisResult result;
    double fixed_weight = 0.0;
    for (int i = 0; i < v; ++i) {
        if (!allowed[i]) continue;
        std::vector<char> rest = allowed;
        rest[i] = 0;
        for (int u : g.adjacency[i]) rest[u] = 0;
        for (int j = 0; j <= i; ++j) rest[j] = 0;
        double with_i = fixed_weight + g.weights[i] + solve_allowed(rest);
        if (with_i >= target - 1e-9) {
            result.members.push_back(i);
            fixed_weight += g.weights[i];
            allowed = rest;
        } else {
            allowed[i] = 0;
        }
    }
    result.weight = fixed_weight;
    if (std::abs(result.weight - target) > 1e-7)
        throw std::logic_error("mwis_exact: lexicographic reconstruction drifted");
    return result;
}

bool is_sum_of_stabilizers(const PauliHamiltonian& h, const std::vector<StabilizerGroup>& groups) {
    if (groups.empty()) return false;
    for (const auto& g : groups)
        if (g.n() != h.n()) throw std::invalid_argument("is_sum_of_stabilizers: qubit count mismatch");

    // Signed generator union must match the support exactly.
    std::vector<PauliString> gens;
    for (const auto& g : groups)
        for (const auto& p : g.generators()) gens.push_back(p);
    if (gens.size() != h.term_count()) return false;
    std::vector<char> used(gens.size(), 0);
    for (const auto& t : h.terms()) {
        bool found = false;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (!used[i] && gens[i] == t.op) {
                used[i] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }

    // Joint independence: total symplectic rank equals the sum of ranks.
    std::vector<std::pair<uint64_t, uint64_t>> rows;
    for (const auto& p : gens) {
        uint64_t x = p.x_bits(), z = p.z_bits();
        for (const auto& [rx, rz] : rows) {
            uint64_t lead_x = rx & ~(rx - 1);
            bool hit = rx ? (x & lead_x) : ((z & (rz & ~(rz - 1))) != 0);
            if (hit) {
                x ^= rx;
                z ^= rz;
            }
        }
        if (x || z) rows.emplace_back(x, z);
    }
    size_t rank_sum = 0;
    for (const auto& g : groups) rank_sum += size_t(g.rank());
    return rows.size() == rank_sum;
}

bool sum_of_stabilizers_literal_check(const std::vector<StabilizerGroup>& groups) {
    size_t l = groups.size();
    if (l > 12) throw std::invalid_argument("literal check limited to 12 groups");
    // Pattern-level GF(2) spans: an element of S_j can only lie in the group
    // generated by other groups' generators if its pattern is in their span.
    auto in_span = [](const std::vector<std::pair<uint64_t, uint64_t>>& rows, uint64_t x, uint64_t z) {
        for (const auto& [rx, rz] : rows) {
            uint64_t lead_x = rx & ~(rx - 1);
            bool hit = rx ? ((x & lead_x) != 0) : ((z & (rz & ~(rz - 1))) != 0);
            if (hit) {
                x ^= rx;
                z ^= rz;
            }
        }
        return x == 0 && z == 0;
    };
    for (size_t j = 0; j < l; ++j) {
        for (uint64_t subset = 0; subset < (uint64_t(1) << l); ++subset) {
            if ((subset >> j) & 1) continue;
            std::vector<std::pair<uint64_t, uint64_t>> rows;
            for (size_t k = 0; k < l; ++k) {
                if (!((subset >> k) & 1)) continue;
                for (const auto& p : groups[k].generators()) {
                    uint64_t x = p.x_bits(), z = p.z_bits();
                    for (const auto& [rx, rz] : rows) {
                        uint64_t lead_x = rx & ~(rx - 1);
                        bool hit = rx ? ((x & lead_x) != 0) : ((z & (rz & ~(rz - 1))) != 0);
                        if (hit) {
                            x ^= rx;
                            z ^= rz;
                        }
                    }
                    if (x || z) rows.emplace_back(x, z);
                }
            }
            if (rows.empty()) continue;
            for (const auto& el : groups[j].elements())
                if (!el.is_identity_pattern() && in_span(rows, el.x_bits(), el.z_bits())) return false;
        }
    }
    return true;
}

}  // namespace magicwit
