#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tempo/graph.hpp"
#include "tempo/setcover.hpp"

namespace tempo {

// Input rejection with the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Text format:
//   p tgraph <n> <m> <tau>
//   e <u> <v> <t1,t2,...>     (u < v, times strictly ascending)
// '#' lines and blank lines are ignored.
TemporalGraph parse_temporal_graph(std::string_view text);
std::string serialize_temporal_graph(const TemporalGraph& g);

// Text format:
//   s <cover|matching> <count>
//   e <u> <v>
SolutionSet parse_solution(std::string_view text);
std::string serialize_solution(const SolutionSet& s);

// Text format (universe is 1..n):
//   p setsys <n> <m>
//   s <e1,e2,...>             (one line per set; bare "s" is the empty set)
SetSystem parse_set_system(std::string_view text);
std::string serialize_set_system(const SetSystem& sys);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace tempo
