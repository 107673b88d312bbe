#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace p7col {

/// Literal of variable v: 2v for v, 2v + 1 for its negation.
struct Literal {
    int code = 0;

    static Literal pos(int var) { return {2 * var}; }
    static Literal neg(int var) { return {2 * var + 1}; }
    static Literal of(int var, bool value) { return value ? pos(var) : neg(var); }

    int var() const { return code >> 1; }
    bool positive() const { return (code & 1) == 0; }
    Literal operator~() const { return {code ^ 1}; }
    friend bool operator==(Literal, Literal) = default;
};

class TwoSatInstance {
public:
    TwoSatInstance() = default;
    explicit TwoSatInstance(int var_count) : var_count_(var_count) {}

    int var_count() const { return var_count_; }
    const std::vector<std::pair<Literal, Literal>>& clauses() const { return clauses_; }

    /// Appends (a or b). Throws std::out_of_range for unknown variables.
    void add_clause(Literal a, Literal b);

    bool satisfied_by(const std::vector<bool>& assignment) const;

private:
    int var_count_ = 0;
    std::vector<std::pair<Literal, Literal>> clauses_;
};

/// Satisfying assignment via strongly connected components of the
/// implication graph, or nothing when unsatisfiable. Linear time.
std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& instance);

} // namespace p7col
