#include "p7col/sat2.hpp"

#include <string>

namespace p7col {

void TwoSatInstance::add_clause(Literal a, Literal b) {
    for (Literal l : {a, b})
        if (l.code < 0 || l.var() >= var_count_)
            throw std::out_of_range("2-SAT literal references variable " + std::to_string(l.var()) + " of " +
                                    std::to_string(var_count_));
    clauses_.emplace_back(a, b);
}

bool TwoSatInstance::satisfied_by(const std::vector<bool>& assignment) const {
    auto holds = [&](Literal l) { return assignment[l.var()] == l.positive(); };
    for (auto [a, b] : clauses_)
        if (!holds(a) && !holds(b)) return false;
    return true;
}

namespace {

// Implication graph in compressed adjacency form: clause (a or b) yields
// arcs ~a -> b and ~b -> a.
struct ImplicationGraph {
    std::vector<int> offset;
    std::vector<int> target;

    explicit ImplicationGraph(const TwoSatInstance& inst) {
        const int nodes = 2 * inst.var_count();
        offset.assign(nodes + 1, 0);
        for (auto [a, b] : inst.clauses()) {
            ++offset[(~a).code + 1];
            ++offset[(~b).code + 1];
        }
        for (int i = 0; i < nodes; ++i) offset[i + 1] += offset[i];
        target.resize(offset[nodes]);
        std::vector<int> fill(offset.begin(), offset.end() - 1);
        for (auto [a, b] : inst.clauses()) {
            target[fill[(~a).code]++] = b.code;
            target[fill[(~b).code]++] = a.code;
        }
    }
};

// Iterative Tarjan. Components are numbered in completion order, which is a
// reverse topological order of the condensation.
std::vector<int> tarjan(const ImplicationGraph& graph, int nodes) {
    std::vector<int> index(nodes, -1), low(nodes, 0), comp(nodes, -1);
    std::vector<int> stack;
    std::vector<std::pair<int, int>> call; // (node, next arc position)
    int counter = 0, comp_count = 0;
    for (int root = 0; root < nodes; ++root) {
        if (index[root] != -1) continue;
        call.emplace_back(root, graph.offset[root]);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < graph.offset[v + 1]) {
                int w = graph.target[pos++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    call.emplace_back(w, graph.offset[w]);
                } else if (comp[w] == -1) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const int done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    comp[w] = comp_count;
                } while (w != done);
                ++comp_count;
            }
        }
    }
    return comp;
}

} // namespace

std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& instance) {
    const int vars = instance.var_count();
    ImplicationGraph graph(instance);
    auto comp = tarjan(graph, 2 * vars);
    std::vector<bool> assignment(vars);
    for (int v = 0; v < vars; ++v) {
        const int p = comp[Literal::pos(v).code];
        const int q = comp[Literal::neg(v).code];
        if (p == q) return std::nullopt;
        // The literal whose component completes first lies later in
        // topological order and is made true.
        assignment[v] = p < q;
    }
    if (!instance.satisfied_by(assignment)) throw std::logic_error("2-SAT assignment violates a clause");
    return assignment;
}

} // namespace p7col
