#include "tempo/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace tempo {

namespace {

struct Line {
    int number = 0;           // 1-based position in the input
    std::vector<std::string> tokens;
};

// Splits into non-comment, non-blank lines, each tokenized on spaces.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (raw.empty() || raw.front() == '#') continue;
        Line line;
        line.number = number;
        std::istringstream ss{std::string(raw)};
        std::string tok;
        while (ss >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

int parse_int(const std::string& tok, int line, const char* what) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
            return std::isdigit(c);
        }))
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    try {
        return std::stoi(tok);
    } catch (const std::exception&) {
        throw ParseError(line, std::string(what) + " out of range: '" + tok + "'");
    }
}

// "1,4,7" -> {1,4,7}; elements must be positive integers.
std::vector<int> parse_int_list(const std::string& tok, int line, const char* what) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= tok.size()) {
        std::size_t comma = tok.find(',', pos);
        std::string item = tok.substr(pos, comma == std::string::npos ? comma : comma - pos);
        out.push_back(parse_int(item, line, what));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

TemporalGraph parse_temporal_graph(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "missing 'p tgraph' header");
    const Line& head = lines[0];
    if (head.tokens[0] != "p" || head.tokens.size() != 5 || head.tokens[1] != "tgraph")
        throw ParseError(head.number, "expected 'p tgraph <n> <m> <tau>' header");
    int n = parse_int(head.tokens[2], head.number, "vertex count");
    int m = parse_int(head.tokens[3], head.number, "edge count");
    int tau = parse_int(head.tokens[4], head.number, "lifetime");
    if (tau < 1) throw ParseError(head.number, "lifetime must be at least 1");

    std::vector<Edge> edges;
    std::vector<std::vector<int>> labels;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] == "p") throw ParseError(line.number, "duplicate header");
        if (line.tokens[0] != "e")
            throw ParseError(line.number, "unknown line type '" + line.tokens[0] + "'");
        if (line.tokens.size() != 4)
            throw ParseError(line.number, "expected 'e <u> <v> <t1,t2,...>'");
        int u = parse_int(line.tokens[1], line.number, "endpoint");
        int v = parse_int(line.tokens[2], line.number, "endpoint");
        if (u >= v) throw ParseError(line.number, "endpoints must satisfy u < v");
        if (u < 1 || v > n) throw ParseError(line.number, "endpoint out of range 1..n");
        Edge e(u, v);
        if (std::find(edges.begin(), edges.end(), e) != edges.end())
            throw ParseError(line.number, "duplicate edge");
        std::vector<int> times = parse_int_list(line.tokens[3], line.number, "time label");
        for (std::size_t k = 0; k < times.size(); ++k) {
            if (times[k] < 1 || times[k] > tau)
                throw ParseError(line.number, "time label outside 1..tau");
            if (k > 0 && times[k] <= times[k - 1])
                throw ParseError(line.number, "time labels must be strictly ascending");
        }
        edges.push_back(e);
        labels.push_back(std::move(times));
    }
    if (static_cast<int>(edges.size()) != m)
        throw ParseError(head.number, "header declares " + std::to_string(m) + " edges, found " +
                                          std::to_string(edges.size()));
    // keep labels aligned while the constructor re-sorts the edge list
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
    std::vector<Edge> se;
    std::vector<std::vector<int>> sl;
    for (std::size_t i : order) {
        se.push_back(edges[i]);
        sl.push_back(std::move(labels[i]));
    }
    return TemporalGraph(StaticGraph(n, std::move(se)), tau, std::move(sl));
}

std::string serialize_temporal_graph(const TemporalGraph& g) {
    std::ostringstream out;
    out << "p tgraph " << g.vertex_count() << ' ' << g.edge_count() << ' ' << g.tau() << '\n';
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.base().edge(i);
        out << "e " << e.u << ' ' << e.v << ' ';
        const auto& lab = g.label(i);
        for (std::size_t k = 0; k < lab.size(); ++k) {
            if (k) out << ',';
            out << lab[k];
        }
        out << '\n';
    }
    return out.str();
}

SolutionSet parse_solution(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "missing 's' header");
    const Line& head = lines[0];
    if (head.tokens[0] != "s" || head.tokens.size() != 3)
        throw ParseError(head.number, "expected 's <cover|matching> <count>' header");
    SolutionKind kind;
    if (head.tokens[1] == "cover")
        kind = SolutionKind::Cover;
    else if (head.tokens[1] == "matching")
        kind = SolutionKind::Matching;
    else
        throw ParseError(head.number, "unknown solution kind '" + head.tokens[1] + "'");
    int count = parse_int(head.tokens[2], head.number, "edge count");

    std::vector<Edge> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] != "e" || line.tokens.size() != 3)
            throw ParseError(line.number, "expected 'e <u> <v>'");
        int u = parse_int(line.tokens[1], line.number, "endpoint");
        int v = parse_int(line.tokens[2], line.number, "endpoint");
        if (u >= v) throw ParseError(line.number, "endpoints must satisfy u < v");
        edges.emplace_back(u, v);
    }
    if (static_cast<int>(edges.size()) != count)
        throw ParseError(head.number, "header declares " + std::to_string(count) +
                                          " edges, found " + std::to_string(edges.size()));
    std::size_t before = edges.size();
    SolutionSet s = make_solution(kind, std::move(edges));
    if (s.edges.size() != before) throw ParseError(head.number, "duplicate solution edge");
    return s;
}

std::string serialize_solution(const SolutionSet& s) {
    std::ostringstream out;
    out << "s " << to_string(s.kind) << ' ' << s.edges.size() << '\n';
    std::vector<Edge> edges = s.edges;
    std::sort(edges.begin(), edges.end());
    for (const Edge& e : edges) out << "e " << e.u << ' ' << e.v << '\n';
    return out.str();
}

SetSystem parse_set_system(std::string_view text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "missing 'p setsys' header");
    const Line& head = lines[0];
    if (head.tokens[0] != "p" || head.tokens.size() != 4 || head.tokens[1] != "setsys")
        throw ParseError(head.number, "expected 'p setsys <n> <m>' header");
    int n = parse_int(head.tokens[2], head.number, "universe size");
    int m = parse_int(head.tokens[3], head.number, "set count");

    SetSystem sys;
    for (int x = 1; x <= n; ++x) sys.universe.push_back(x);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& line = lines[i];
        if (line.tokens[0] != "s" || line.tokens.size() > 2)
            throw ParseError(line.number, "expected 's <e1,e2,...>'");
        std::vector<int> elems;
        if (line.tokens.size() == 2)
            elems = parse_int_list(line.tokens[1], line.number, "element");
        for (std::size_t k = 0; k < elems.size(); ++k) {
            if (elems[k] < 1 || elems[k] > n)
                throw ParseError(line.number, "element outside universe 1..n");
            if (k > 0 && elems[k] <= elems[k - 1])
                throw ParseError(line.number, "elements must be strictly ascending");
        }
        sys.sets.push_back(std::move(elems));
    }
    if (static_cast<int>(sys.sets.size()) != m)
        throw ParseError(head.number, "header declares " + std::to_string(m) + " sets, found " +
                                          std::to_string(sys.sets.size()));
    return sys;
}

std::string serialize_set_system(const SetSystem& sys) {
    // the text format can only name contiguous universes 1..n
    int n = sys.universe.empty() ? 0 : sys.universe.back();
    for (std::size_t i = 0; i < sys.universe.size(); ++i)
        if (sys.universe[i] != static_cast<int>(i) + 1)
            throw std::invalid_argument("set system universe is not contiguous 1..n");
    std::ostringstream out;
    out << "p setsys " << n << ' ' << sys.sets.size() << '\n';
    for (const auto& s : sys.sets) {
        out << 's';
        for (std::size_t k = 0; k < s.size(); ++k) out << (k ? ',' : ' ') << s[k];
        out << '\n';
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tempo
