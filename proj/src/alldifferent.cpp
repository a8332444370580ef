#include "hybridcp/constraints.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace hybridcp {

namespace {

// Bipartite value graph of one propagation call. Variables are nodes
// 0..n-1, values n..n+m-1, the sink is n+m.
struct ValueGraph {
    std::size_t n = 0;
    std::vector<IntDomain::value_type> values;
    std::vector<std::vector<std::size_t>> adj; // variable -> value slots
    std::vector<long> var_match;               // variable -> value slot or -1
    std::vector<long> val_match;               // value slot -> variable or -1

    bool augment(std::size_t x, std::vector<char>& seen)
    {
        for (std::size_t v : adj[x]) {
            if (seen[v]) {
                continue;
            }
            seen[v] = 1;
            if (val_match[v] < 0 || augment(static_cast<std::size_t>(val_match[v]), seen)) {
                var_match[x] = static_cast<long>(v);
                val_match[v] = static_cast<long>(x);
                return true;
            }
        }
        return false;
    }

    bool maximum_matching()
    {
        var_match.assign(n, -1);
        val_match.assign(values.size(), -1);
        // Fixed and small domains first keeps augmenting paths short.
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return adj[a].size() < adj[b].size(); });
        std::vector<char> seen(values.size());
        for (std::size_t x : order) {
            std::fill(seen.begin(), seen.end(), 0);
            if (!augment(x, seen)) {
                return false;
            }
        }
        return true;
    }

    // Tarjan on the oriented residual graph:
    //   var -> its matched value, value -> every other var containing it,
    //   matched value -> sink, sink -> every free value.
    std::vector<std::size_t> components() const
    {
        const std::size_t m = values.size();
        const std::size_t total = n + m + 1;
        const std::size_t sink = n + m;
        std::vector<std::vector<std::size_t>> out(total);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t v : adj[x]) {
                if (var_match[x] == static_cast<long>(v)) {
                    out[x].push_back(n + v);
                } else {
                    out[n + v].push_back(x);
                }
            }
        }
        for (std::size_t v = 0; v < m; ++v) {
            if (val_match[v] >= 0) {
                out[n + v].push_back(sink);
            } else {
                out[sink].push_back(n + v);
            }
        }

        constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
        std::vector<std::size_t> index(total, kUnvisited), low(total), comp(total, kUnvisited);
        std::vector<char> on_stack(total, 0);
        std::vector<std::size_t> stack;
        std::size_t counter = 0;
        std::size_t ncomp = 0;

        // Iterative to stay safe on large value sets.
        struct Frame {
            std::size_t node;
            std::size_t edge;
        };
        std::vector<Frame> calls;
        for (std::size_t root = 0; root < total; ++root) {
            if (index[root] != kUnvisited) {
                continue;
            }
            calls.push_back({root, 0});
            index[root] = low[root] = counter++;
            stack.push_back(root);
            on_stack[root] = 1;
            while (!calls.empty()) {
                Frame& f = calls.back();
                if (f.edge < out[f.node].size()) {
                    const std::size_t w = out[f.node][f.edge++];
                    if (index[w] == kUnvisited) {
                        index[w] = low[w] = counter++;
                        stack.push_back(w);
                        on_stack[w] = 1;
                        calls.push_back({w, 0});
                    } else if (on_stack[w]) {
                        low[f.node] = std::min(low[f.node], index[w]);
                    }
                    continue;
                }
                const std::size_t v = f.node;
                if (low[v] == index[v]) {
                    std::size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = ncomp;
                    } while (w != v);
                    ++ncomp;
                }
                calls.pop_back();
                if (!calls.empty()) {
                    low[calls.back().node] = std::min(low[calls.back().node], low[v]);
                }
            }
        }
        return comp;
    }
};

} // namespace

AllDifferent::AllDifferent(std::vector<IntVar> vars) : vars_(std::move(vars))
{
    if (vars_.empty()) {
        throw std::invalid_argument("alldifferent needs at least one variable");
    }
}

bool AllDifferent::propagate(Solver& solver)
{
    ValueGraph g;
    g.n = vars_.size();
    std::unordered_map<IntDomain::value_type, std::size_t> slot;
    g.adj.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const auto& d = solver.domain(vars_[i]);
        for (auto v = d.min(); v <= d.max(); v = d.next(v)) {
            auto [it, inserted] = slot.try_emplace(v, g.values.size());
            if (inserted) {
                g.values.push_back(v);
            }
            g.adj[i].push_back(it->second);
        }
    }
    if (g.values.size() < g.n || !g.maximum_matching()) {
        return false;
    }
    const auto comp = g.components();
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t v : g.adj[i]) {
            if (g.var_match[i] == static_cast<long>(v) || comp[i] == comp[g.n + v]) {
                continue;
            }
            if (!solver.remove(vars_[i], g.values[v])) {
                return false;
            }
        }
    }
    return true;
}

PropId post_alldifferent(Solver& solver, std::vector<IntVar> vars)
{
    for (IntVar x : vars) {
        if (!solver.domain(x).is_enumerated()) {
            throw std::invalid_argument("alldifferent needs enumerated domains; '" + solver.name(x) +
                                        "' is bounded");
        }
    }
    return solver.post(std::make_unique<AllDifferent>(std::move(vars)));
}

} // namespace hybridcp
