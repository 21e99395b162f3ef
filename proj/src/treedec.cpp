#include "tempo/treedec.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tempo/io.hpp"

namespace tempo {

int TreeDecomposition::root() const {
    for (int i = 0; i < node_count(); ++i)
        if (parent[i] == -1) return i;
    throw std::logic_error("decomposition has no root");
}

std::vector<int> min_fill_order(const StaticGraph& g, TieBreak tie) {
    int n = g.vertex_count();
    std::vector<std::set<int>> adj(n + 1);
    for (const Edge& e : g.edges()) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    std::vector<bool> gone(n + 1, false);
    std::vector<int> order;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = -1;
        for (int v = 1; v <= n; ++v) {
            if (gone[v]) continue;
            long fill = 0;
            for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
                for (auto b = std::next(a); b != adj[v].end(); ++b)
                    if (!adj[*a].count(*b)) ++fill;
            bool better = best < 0 || fill < best_fill;
            if (!better && fill == best_fill && tie == TieBreak::HighVertex) better = v > best;
            if (better) {
                best = v;
                best_fill = fill;
            }
        }
        order.push_back(best);
        for (int a : adj[best])
            for (int b : adj[best])
                if (a < b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
        for (int a : adj[best]) adj[a].erase(best);
        adj[best].clear();
        gone[best] = true;
    }
    return order;
}

namespace {

// Vertices u (not in seen, != v) reachable from v through eliminated
// vertices, as a bitmask. Bit i stands for vertex i+1.
unsigned eliminated_neighborhood(const std::vector<unsigned>& adj, int n, unsigned eliminated,
                                 int v) {
    unsigned comp = 1u << (v - 1);
    for (;;) {
        unsigned frontier = 0;
        for (int i = 0; i < n; ++i)
            if (comp >> i & 1u) frontier |= adj[i + 1];
        unsigned next = comp | (frontier & eliminated);
        if (next == comp) return frontier & ~eliminated & ~(1u << (v - 1));
        comp = next;
    }
}

}  // namespace

std::vector<int> exact_elimination_order(const StaticGraph& g) {
    int n = g.vertex_count();
    if (n > 12) throw std::invalid_argument("exact elimination order supports at most 12 vertices");
    std::vector<unsigned> adj(n + 1, 0);
    for (const Edge& e : g.edges()) {
        adj[e.u] |= 1u << (e.v - 1);
        adj[e.v] |= 1u << (e.u - 1);
    }
    unsigned full = n == 0 ? 0u : (1u << n) - 1u;
    std::vector<signed char> f(full + 1u, 0);
    // f[S]: best achievable max-degree when the vertices of S are
    // eliminated first, in some order
    for (unsigned S = 1; S <= full; ++S) {
        int best = n + 1;
        for (int v = 1; v <= n; ++v) {
            if (!(S >> (v - 1) & 1u)) continue;
            unsigned rest = S & ~(1u << (v - 1));
            int deg = static_cast<int>(__builtin_popcount(eliminated_neighborhood(adj, n, rest, v)));
            best = std::min(best, std::max<int>(f[rest], deg));
        }
        f[S] = static_cast<signed char>(best);
    }
    std::vector<int> order(n);
    unsigned S = full;
    for (int pos = n - 1; pos >= 0; --pos) {
        for (int v = 1; v <= n; ++v) {
            if (!(S >> (v - 1) & 1u)) continue;
            unsigned rest = S & ~(1u << (v - 1));
            int deg = static_cast<int>(__builtin_popcount(eliminated_neighborhood(adj, n, rest, v)));
            if (std::max<int>(f[rest], deg) == f[S]) {
                order[pos] = v;
                S = rest;
                break;
            }
        }
    }
    return order;
}

TreeDecomposition decomposition_from_order(const StaticGraph& g, const std::vector<int>& order) {
    int n = g.vertex_count();
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("elimination order must list every vertex exactly once");
    std::vector<int> pos(n + 1, -1);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        if (v < 1 || v > n || pos[v] != -1)
            throw std::invalid_argument("elimination order must list every vertex exactly once");
        pos[v] = i;
    }
    std::vector<std::set<int>> adj(n + 1);
    for (const Edge& e : g.edges()) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    TreeDecomposition d;
    d.bags.assign(n + 1, {});
    d.parent.assign(n + 1, -1);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> bag{v};
        int attach = n;  // empty root when v has no later neighbors
        for (int u : adj[v]) {
            bag.push_back(u);
            attach = std::min(attach, pos[u]);
        }
        std::sort(bag.begin(), bag.end());
        d.bags[i] = std::move(bag);
        d.parent[i] = attach;
        for (int a : adj[v])
            for (int b : adj[v])
                if (a < b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
        for (int a : adj[v]) adj[a].erase(v);
        adj[v].clear();
    }
    // node n: empty root bag, parent already -1
    return d;
}

TreeDecomposition build_tree_decomposition(const StaticGraph& g, DecompMode mode) {
    std::vector<int> order =
        mode == DecompMode::Exact ? exact_elimination_order(g) : min_fill_order(g);
    return decomposition_from_order(g, order);
}

int width(const TreeDecomposition& d) {
    int w = 0;
    for (const auto& bag : d.bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

DecompReport validate_decomposition(const StaticGraph& g, const TreeDecomposition& d) {
    DecompReport rep;
    auto bad = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
    if (d.bags.size() != d.parent.size()) {
        bad("bag list and parent list differ in length");
        return rep;
    }
    int k = d.node_count();
    int roots = 0;
    for (int i = 0; i < k; ++i) {
        if (d.parent[i] == -1)
            ++roots;
        else if (d.parent[i] < 0 || d.parent[i] >= k)
            bad("node " + std::to_string(i) + " has out-of-range parent");
    }
    if (roots != 1) bad("expected exactly one root, found " + std::to_string(roots));
    // climb to detect parent cycles
    for (int i = 0; i < k; ++i) {
        int steps = 0, cur = i;
        while (cur != -1 && ++steps <= k) cur = d.parent[cur];
        if (cur != -1) {
            bad("parent links contain a cycle");
            return rep;
        }
    }
    if (!rep.violations.empty()) return rep;

    int n = g.vertex_count();
    std::vector<std::vector<int>> holds(n + 1);
    for (int i = 0; i < k; ++i) {
        for (int v : d.bags[i]) {
            if (v < 1 || v > n) {
                bad("node " + std::to_string(i) + " holds out-of-range vertex " +
                    std::to_string(v));
                continue;
            }
            holds[v].push_back(i);
        }
    }
    for (int v = 1; v <= n; ++v)
        if (holds[v].empty()) bad("vertex " + std::to_string(v) + " appears in no bag");
    for (const Edge& e : g.edges()) {
        bool found = false;
        for (int i : holds[e.u]) {
            if (std::find(d.bags[i].begin(), d.bags[i].end(), e.v) != d.bags[i].end()) {
                found = true;
                break;
            }
        }
        if (!found)
            bad("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                ") is contained in no bag");
    }
    for (int v = 1; v <= n; ++v) {
        if (holds[v].empty()) continue;
        // occurrences must induce a connected subtree; walk parent links
        // inside the occurrence set from one seed
        std::set<int> occ(holds[v].begin(), holds[v].end());
        std::set<int> seen;
        std::vector<int> stack{holds[v].front()};
        seen.insert(stack.back());
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            if (d.parent[cur] != -1 && occ.count(d.parent[cur]) && !seen.count(d.parent[cur])) {
                seen.insert(d.parent[cur]);
                stack.push_back(d.parent[cur]);
            }
            for (int j = 0; j < k; ++j)
                if (d.parent[j] == cur && occ.count(j) && !seen.count(j)) {
                    seen.insert(j);
                    stack.push_back(j);
                }
        }
        if (seen.size() != occ.size())
            bad("occurrences of vertex " + std::to_string(v) + " are not connected");
    }
    rep.ok = rep.violations.empty();
    return rep;
}

std::string to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Leaf: return "leaf";
        case NodeKind::Introduce: return "introduce";
        case NodeKind::Forget: return "forget";
        case NodeKind::Join: return "join";
    }
    return "?";
}

namespace {

struct NiceBuilder {
    NiceTreeDecomposition nd;

    int add(NodeKind kind, int vertex, std::vector<int> bag, std::vector<int> children) {
        int id = static_cast<int>(nd.nodes.size());
        for (int c : children) nd.nodes[c].parent = id;
        NiceNode node;
        node.kind = kind;
        node.vertex = vertex;
        node.bag = std::move(bag);
        node.children = std::move(children);
        nd.nodes.push_back(std::move(node));
        return id;
    }

    // chain of introduces for `grow` (ascending) on top of `cur`
    int introduce_all(int cur, std::vector<int> bag, const std::vector<int>& grow) {
        for (int v : grow) {
            bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
            cur = add(NodeKind::Introduce, v, bag, {cur});
        }
        return cur;
    }

    int forget_all(int cur, std::vector<int> bag, const std::vector<int>& drop) {
        for (int v : drop) {
            bag.erase(std::find(bag.begin(), bag.end(), v));
            cur = add(NodeKind::Forget, v, bag, {cur});
        }
        return cur;
    }
};

void check_tree(const TreeDecomposition& d) {
    if (d.bags.size() != d.parent.size() || d.bags.empty())
        throw std::invalid_argument("invalid decomposition: malformed node list");
    int k = d.node_count();
    int roots = 0;
    for (int i = 0; i < k; ++i) {
        if (d.parent[i] == -1) {
            ++roots;
            continue;
        }
        if (d.parent[i] < 0 || d.parent[i] >= k)
            throw std::invalid_argument("invalid decomposition: out-of-range parent");
    }
    if (roots != 1) throw std::invalid_argument("invalid decomposition: need exactly one root");
    for (int i = 0; i < k; ++i) {
        int steps = 0, cur = i;
        while (cur != -1 && ++steps <= k) cur = d.parent[cur];
        if (cur != -1) throw std::invalid_argument("invalid decomposition: parent cycle");
    }
    // per-vertex occurrence connectivity: each occurrence other than the
    // highest one must have its parent occurrence in the set too
    std::map<int, std::vector<int>> holds;
    for (int i = 0; i < k; ++i)
        for (int v : d.bags[i]) holds[v].push_back(i);
    for (auto& [v, occ] : holds) {
        std::set<int> set(occ.begin(), occ.end());
        int tops = 0;
        for (int i : occ) {
            if (d.parent[i] == -1 || !set.count(d.parent[i])) ++tops;
        }
        if (tops != 1)
            throw std::invalid_argument("invalid decomposition: occurrences of vertex " +
                                        std::to_string(v) + " are not connected");
    }
}

}  // namespace

NiceTreeDecomposition to_nice(const TreeDecomposition& d) {
    check_tree(d);
    int k = d.node_count();
    std::vector<std::vector<int>> children(k);
    int root = d.root();
    for (int i = 0; i < k; ++i)
        if (d.parent[i] != -1) children[d.parent[i]].push_back(i);

    NiceBuilder b;
    // post-order over d with an explicit stack; out[i] = top nice node
    // whose bag equals d.bags[i]
    std::vector<int> out(k, -1);
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [node, next_child] = stack.back();
        if (next_child < static_cast<int>(children[node].size())) {
            int c = children[node][next_child++];
            stack.emplace_back(c, 0);
            continue;
        }
        stack.pop_back();
        const std::vector<int>& bag = d.bags[node];
        if (children[node].empty()) {
            out[node] = b.introduce_all(b.add(NodeKind::Leaf, 0, {}, {}), {}, bag);
            continue;
        }
        std::vector<int> parts;
        for (int c : children[node]) {
            std::vector<int> drop, grow;
            std::set_difference(d.bags[c].begin(), d.bags[c].end(), bag.begin(), bag.end(),
                                std::back_inserter(drop));
            std::set_difference(bag.begin(), bag.end(), d.bags[c].begin(), d.bags[c].end(),
                                std::back_inserter(grow));
            int cur = b.forget_all(out[c], d.bags[c], drop);
            std::vector<int> shrunk;
            std::set_intersection(d.bags[c].begin(), d.bags[c].end(), bag.begin(), bag.end(),
                                  std::back_inserter(shrunk));
            parts.push_back(b.introduce_all(cur, shrunk, grow));
        }
        int acc = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i)
            acc = b.add(NodeKind::Join, 0, bag, {acc, parts[i]});
        out[node] = acc;
    }
    b.nd.root = b.forget_all(out[root], d.bags[root], d.bags[root]);
    return b.nd;
}

int width(const NiceTreeDecomposition& d) {
    int w = 0;
    for (const auto& node : d.nodes) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
    return w;
}

std::string dump_decomposition(const NiceTreeDecomposition& d) {
    std::ostringstream out;
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const NiceNode& node = d.nodes[i];
        out << "b " << i << ' ' << to_string(node.kind);
        for (std::size_t k = 0; k < node.bag.size(); ++k) out << (k ? ',' : ' ') << node.bag[k];
        out << '\n';
    }
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
        if (d.nodes[i].parent != -1) out << "t " << d.nodes[i].parent << ' ' << i << '\n';
    return out.str();
}

TreeDecomposition parse_decomposition(std::string_view text) {
    static const std::set<std::string> kinds{"leaf", "introduce", "forget", "join", "bag"};
    std::map<int, std::vector<int>> bags;
    std::vector<std::pair<int, int>> links;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string raw(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty() || raw[0] == '#') continue;
        std::istringstream ss(raw);
        std::string type;
        ss >> type;
        if (type == "b") {
            int id;
            std::string kind, list;
            if (!(ss >> id >> kind) || !kinds.count(kind))
                throw ParseError(number, "expected 'b <id> <kind> <v1,v2,...>'");
            std::vector<int> bag;
            if (ss >> list) {
                std::istringstream ls(list);
                std::string item;
                while (std::getline(ls, item, ',')) {
                    try {
                        bag.push_back(std::stoi(item));
                    } catch (const std::exception&) {
                        throw ParseError(number, "bad bag entry '" + item + "'");
                    }
                }
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            if (bags.count(id)) throw ParseError(number, "duplicate node id " + std::to_string(id));
            bags[id] = std::move(bag);
        } else if (type == "t") {
            int a, c;
            if (!(ss >> a >> c)) throw ParseError(number, "expected 't <parent> <child>'");
            links.emplace_back(a, c);
        } else {
            throw ParseError(number, "unknown line type '" + type + "'");
        }
    }
    if (bags.empty()) throw ParseError(1, "decomposition has no nodes");
    int k = static_cast<int>(bags.size());
    TreeDecomposition d;
    d.bags.resize(k);
    d.parent.assign(k, -1);
    for (auto& [id, bag] : bags) {
        if (id < 0 || id >= k) throw ParseError(1, "node ids must form 0.." + std::to_string(k - 1));
        d.bags[id] = std::move(bag);
    }
    for (auto [a, c] : links) {
        if (a < 0 || a >= k || c < 0 || c >= k || a == c)
            throw ParseError(1, "tree edge references unknown node");
        if (d.parent[c] != -1) throw ParseError(1, "node " + std::to_string(c) + " has two parents");
        d.parent[c] = a;
    }
    return d;
}

}  // namespace tempo
