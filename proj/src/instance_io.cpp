#include "p7col/instance_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace p7col {

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::OutOfRange: return "out_of_range";
    case ParseErrorKind::DuplicateEdge: return "duplicate_edge";
    case ParseErrorKind::DuplicateListLine: return "duplicate_list_line";
    case ParseErrorKind::EmptyList: return "empty_list";
    case ParseErrorKind::LoopEdge: return "loop_edge";
    }
    return "?";
}

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

long long number(std::string_view token, int line) {
    long long value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size())
        throw ParseError(ParseErrorKind::Syntax, line, "expected an integer, got '" + std::string(token) + "'");
    return value;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
    int line_no = 0;
    while (!text.empty()) {
        const std::size_t cut = text.find('\n');
        std::string_view line = text.substr(0, cut);
        text = cut == std::string_view::npos ? std::string_view{} : text.substr(cut + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto parts = tokens(line);
        if (parts.empty() || parts[0] == "c") continue;
        f(line_no, parts);
    }
}

} // namespace

Instance parse_instance(std::string_view text) {
    long long n = -1, m = -1;
    int problem_line = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::vector<ColourMask> lists;
    std::vector<char> has_list;

    auto vertex = [&](std::string_view token, int line) {
        const long long v = number(token, line);
        if (v < 1 || v > n)
            throw ParseError(ParseErrorKind::OutOfRange, line,
                             "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
        return static_cast<Vertex>(v - 1);
    };

    for_each_line(text, [&](int line, const std::vector<std::string_view>& t) {
        if (t[0] == "p") {
            if (n >= 0) throw ParseError(ParseErrorKind::Syntax, line, "second problem line");
            if (t.size() != 4 || t[1] != "lcol")
                throw ParseError(ParseErrorKind::Syntax, line, "expected 'p lcol <n> <m>'");
            n = number(t[2], line);
            m = number(t[3], line);
            if (n < 0 || m < 0 || n > 100'000'000)
                throw ParseError(ParseErrorKind::Syntax, line, "invalid problem size");
            problem_line = line;
            lists.assign(n, kAllColours);
            has_list.assign(n, 0);
            return;
        }
        if (n < 0) throw ParseError(ParseErrorKind::Syntax, line, "item before the problem line");
        if (t[0] == "e") {
            if (t.size() != 3) throw ParseError(ParseErrorKind::Syntax, line, "expected 'e <u> <v>'");
            Vertex u = vertex(t[1], line), v = vertex(t[2], line);
            if (u == v)
                throw ParseError(ParseErrorKind::LoopEdge, line, "loop at vertex " + std::to_string(u + 1));
            if (u > v) std::swap(u, v);
            if (!seen.insert({u, v}).second)
                throw ParseError(ParseErrorKind::DuplicateEdge, line,
                                 "edge " + std::to_string(u + 1) + " " + std::to_string(v + 1) + " repeated");
            edges.emplace_back(u, v);
            return;
        }
        if (t[0] == "l") {
            if (t.size() == 2) throw ParseError(ParseErrorKind::EmptyList, line, "list without colours");
            if (t.size() != 3) throw ParseError(ParseErrorKind::Syntax, line, "expected 'l <v> <digits>'");
            const Vertex v = vertex(t[1], line);
            if (has_list[v])
                throw ParseError(ParseErrorKind::DuplicateListLine, line,
                                 "second list for vertex " + std::to_string(v + 1));
            ColourMask mask = 0;
            char prev = '0';
            for (char ch : t[2]) {
                if (ch >= '0' && ch <= '9' && (ch < '1' || ch > '3'))
                    throw ParseError(ParseErrorKind::OutOfRange, line, "colour " + std::string(1, ch) + " outside 1..3");
                if (ch < '1' || ch > '3' || ch <= prev)
                    throw ParseError(ParseErrorKind::Syntax, line,
                                     "list '" + std::string(t[2]) + "' is not an ascending subset of 123");
                mask |= mask_of(ch - '0');
                prev = ch;
            }
            has_list[v] = 1;
            lists[v] = mask;
            return;
        }
        throw ParseError(ParseErrorKind::Syntax, line, "unknown item '" + std::string(t[0]) + "'");
    });

    if (n < 0) throw ParseError(ParseErrorKind::Syntax, 0, "missing problem line");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError(ParseErrorKind::Syntax, problem_line,
                         "problem line announces " + std::to_string(m) + " edges, found " +
                             std::to_string(edges.size()));
    return {Graph::build(static_cast<int>(n), edges), std::move(lists)};
}

std::string emit_instance(const Graph& g, std::span<const ColourMask> lists) {
    std::ostringstream out;
    out << "p lcol " << g.order() << ' ' << g.size() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    for (Vertex v = 0; v < g.order(); ++v) {
        if (lists[v] == kAllColours) continue;
        out << "l " << v + 1 << ' ';
        for (Colour c = 1; c <= 3; ++c)
            if (mask_has(lists[v], c)) out << c;
        out << '\n';
    }
    return out.str();
}

std::vector<Colour> parse_colouring(std::string_view text, int n) {
    std::vector<Colour> out(n, 0);
    for_each_line(text, [&](int line, const std::vector<std::string_view>& t) {
        if (t.size() == 1 && t[0] == "SAT") return;
        if (t.size() != 3 || t[0] != "v") throw ParseError(ParseErrorKind::Syntax, line, "expected 'v <id> <colour>'");
        const long long v = number(t[1], line);
        const long long c = number(t[2], line);
        if (v < 1 || v > n) throw ParseError(ParseErrorKind::OutOfRange, line, "vertex out of range");
        if (c < 1 || c > 3) throw ParseError(ParseErrorKind::Syntax, line, "colour outside 1..3");
        if (out[v - 1] != 0) throw ParseError(ParseErrorKind::DuplicateListLine, line, "vertex coloured twice");
        out[v - 1] = static_cast<Colour>(c);
    });
    for (Vertex v = 0; v < n; ++v)
        if (out[v] == 0) throw ParseError(ParseErrorKind::Syntax, 0, "vertex " + std::to_string(v + 1) + " uncoloured");
    return out;
}

std::string emit_result(const Outcome& outcome, OutputFormat format, bool with_millis) {
    if (format == OutputFormat::Text) {
        std::ostringstream out;
        if (outcome.colourable()) {
            out << "SAT\n";
            const auto& f = outcome.colouring();
            for (std::size_t v = 0; v < f.size(); ++v) out << "v " << v + 1 << ' ' << f[v] << '\n';
        } else if (outcome.uncolourable()) {
            out << "UNSAT\n";
        } else {
            const auto& w = outcome.violation();
            out << "INVALID\nwitness " << to_string(w.kind);
            for (Vertex v : w.vertices) out << ' ' << v + 1;
            out << '\n';
            if (!w.note.empty()) out << "note " << w.note << '\n';
        }
        return out.str();
    }
    nlohmann::ordered_json j;
    if (outcome.colourable()) {
        j["status"] = "SAT";
        j["colouring"] = outcome.colouring();
    } else if (outcome.uncolourable()) {
        j["status"] = "UNSAT";
    } else {
        const auto& w = outcome.violation();
        j["status"] = "INVALID";
        std::vector<Vertex> vertices;
        for (Vertex v : w.vertices) vertices.push_back(v + 1);
        j["witness"] = {{"kind", to_string(w.kind)}, {"vertices", vertices}, {"note", w.note}};
    }
    const auto& s = outcome.stats;
    nlohmann::ordered_json stats = {{"branches", s.branches},
                                    {"survived", s.survived},
                                    {"propagations", s.propagations},
                                    {"sat_instances", s.sat_instances},
                                    {"fallback_used", s.fallback_activations > 0},
                                    {"fallback_activations", s.fallback_activations},
                                    {"anchor_colourings", s.anchor_colourings}};
    if (with_millis) stats["millis"] = s.millis;
    j["stats"] = std::move(stats);
    return j.dump(2) + "\n";
}

} // namespace p7col
