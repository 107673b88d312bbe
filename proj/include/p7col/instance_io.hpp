#pragma once

#include "p7col/engine.hpp"
#include "p7col/graph.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace p7col {

/// Instance text format, one item per line (`c` lines are comments):
///
///     p lcol <n> <m>
///     e <u> <v>          1-indexed, undirected, no duplicates
///     l <v> <digits>     optional, ascending digits from {1, 2, 3}
struct Instance {
    Graph graph;
    std::vector<ColourMask> lists;
    friend bool operator==(const Instance& a, const Instance& b) {
        return a.lists == b.lists && a.graph.order() == b.graph.order() && a.graph.edges() == b.graph.edges();
    }
};

enum class ParseErrorKind { Syntax, OutOfRange, DuplicateEdge, DuplicateListLine, EmptyList, LoopEdge };

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, int line, const std::string& message);
    ParseErrorKind kind() const { return kind_; }
    int line() const { return line_; }

private:
    ParseErrorKind kind_;
    int line_;
};

Instance parse_instance(std::string_view text);

/// Canonical text: sorted edges, list lines only for non-full lists.
std::string emit_instance(const Graph& g, std::span<const ColourMask> lists);

/// Reads `v <id> <colour>` lines (a leading SAT line and comments are
/// skipped). Every vertex 1..n must appear exactly once.
std::vector<Colour> parse_colouring(std::string_view text, int n);

enum class OutputFormat { Text, Json };

/// Text: SAT + `v <id> <colour>` lines, UNSAT, or INVALID + `witness ...`.
/// JSON mirrors it with a stats record; `millis` is included only on request
/// so that the default output is byte-deterministic.
std::string emit_result(const Outcome& outcome, OutputFormat format, bool with_millis = false);

} // namespace p7col
