#pragma once

#include "p7col/graph.hpp"
#include "p7col/recognition.hpp"
#include "p7col/sat2.hpp"
#include "p7col/skeleton.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace p7col {

using Colour = int;

/// Admissible colours of a vertex: bit c-1 stands for colour c in {1, 2, 3}.
using ColourMask = std::uint8_t;

inline constexpr ColourMask kAllColours = 0b111;

constexpr ColourMask mask_of(Colour c) { return static_cast<ColourMask>(1u << (c - 1)); }
constexpr int mask_size(ColourMask m) { return std::popcount(static_cast<unsigned>(m)); }
constexpr bool mask_has(ColourMask m, Colour c) { return (m >> (c - 1)) & 1u; }
/// Smallest colour in a non-empty mask.
constexpr Colour smallest_colour(ColourMask m) { return std::countr_zero(static_cast<unsigned>(m)) + 1; }
constexpr Colour largest_colour(ColourMask m) { return 32 - std::countl_zero(static_cast<unsigned>(m)); }

enum class Cause : std::uint8_t { Seed, Propagation, Safe };

struct TrailEntry {
    Vertex vertex;
    Colour removed;
    Cause cause;
    /// Vertex whose colour forced the removal (propagation only).
    Vertex source;
};

/// Per-vertex colour lists during one branch.
class ListState {
public:
    ListState() = default;
    explicit ListState(std::vector<ColourMask> masks, bool record_trail = false);

    int order() const { return static_cast<int>(masks_.size()); }
    ColourMask mask(Vertex v) const { return masks_[v]; }
    const std::vector<ColourMask>& masks() const { return masks_; }
    bool assigned(Vertex v) const { return mask_size(masks_[v]) == 1; }
    Colour colour(Vertex v) const { return smallest_colour(masks_[v]); }

    /// Intersects the list of v with `keep`. Returns false once a list is empty.
    [[nodiscard]] bool restrict(Vertex v, ColourMask keep, Cause cause, Vertex source = -1);
    [[nodiscard]] bool assign(Vertex v, Colour c, Cause cause = Cause::Seed) { return restrict(v, mask_of(c), cause); }

    const std::vector<TrailEntry>& trail() const { return trail_; }
    std::uint64_t propagation_steps() const { return steps_; }

    friend bool propagate(ListState& state, const Graph& g);
    friend std::vector<std::pair<Vertex, Colour>> eliminate_safe(ListState& state, const Graph& g);

private:
    std::vector<ColourMask> masks_;
    std::vector<char> propagated_;
    std::vector<Vertex> pending_;
    std::vector<TrailEntry> trail_;
    bool record_ = false;
    bool empty_ = false;
    std::uint64_t steps_ = 0;
};

/// Fixpoint of "an assigned vertex removes its colour from its neighbours".
/// Returns false on a conflict (some list became empty).
[[nodiscard]] bool propagate(ListState& state, const Graph& g);

/// Assigns every full-list vertex whose neighbours all miss a common colour
/// (the smallest such colour; colour 1 for isolated vertices). One pass is a
/// fixpoint, since the chosen colour is absent from every neighbour.
std::vector<std::pair<Vertex, Colour>> eliminate_safe(ListState& state, const Graph& g);

std::vector<Vertex> full_list_vertices(const ListState& state);

class PreconditionBreach : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// One boolean variable per two-colour vertex; true selects its smaller colour.
struct Residual2Sat {
    TwoSatInstance instance;
    std::vector<Vertex> var_vertex;
    std::vector<int> vertex_var;
};

/// Throws PreconditionBreach if a full list remains or an assigned vertex
/// still conflicts with a neighbour's list.
Residual2Sat residual_to_2sat(const ListState& state, const Graph& g);

/// Completes the lists of a residual instance from a 2-SAT assignment.
std::vector<Colour> read_colouring(const ListState& state, const Residual2Sat& residual,
                                   const std::vector<bool>& assignment);

using C5Colouring = std::array<Colour, 5>;

/// Proper colourings of the anchor cycle within the given lists, in
/// lexicographic order.
std::vector<C5Colouring> enumerate_c5_colourings(const std::array<ColourMask, 5>& lists);

/// Colour options implied by a fixed colouring of the anchor cycle.
struct Palette {
    C5Colouring c5{};
    /// Options of T_i (a single colour when forced) and of D_i.
    std::array<ColourMask, 5> t_options{};
    std::array<ColourMask, 5> d_options{};
    /// The two consecutive T-indices left with two options, ascending.
    std::array<int, 2> open_t{};
    /// Colour used exactly once on the cycle; shared by both open T sets.
    Colour shared = 0;
    /// Other colour of each open T set, aligned with open_t.
    std::array<Colour, 2> own{};
    /// The three D-indices branched on by the D cases, ascending.
    std::array<int, 3> free_d{};
};

Palette palette_analysis(const C5Colouring& c5);

enum class CaseTag : char { None = '-', A = 'a', B = 'b', C = 'c', D = 'd', E = 'e', F = 'f', G = 'g', H = 'h' };

/// One case for one open T set (tags a-d) or free D set (tags e-h).
/// `level` is k for tags a and b; `witness` is w (a, b) or v' (e, f).
struct CaseChoice {
    int index = -1;
    CaseTag tag = CaseTag::None;
    int level = -1;
    Vertex witness = -1;
    friend bool operator==(const CaseChoice&, const CaseChoice&) = default;
};

/// A partial colouring: the anchor colouring plus one case for each of the
/// two open T sets (cases[0..1]) and each of the three free D sets (cases[2..4]).
struct BranchDescriptor {
    C5Colouring c5{};
    std::array<CaseChoice, 5> cases{};
    friend bool operator==(const BranchDescriptor&, const BranchDescriptor&) = default;
};

/// The per-level case lists for one anchor colouring. The branches are their
/// Cartesian product in lexicographic order (level 0 most significant).
class BranchPlan {
public:
    BranchPlan(const SkeletonAnalysis& analysis, const Palette& palette);

    const Palette& palette() const { return palette_; }
    const SkeletonAnalysis& analysis() const { return *analysis_; }
    const std::array<std::vector<CaseChoice>, 5>& levels() const { return levels_; }
    std::uint64_t size() const;
    BranchDescriptor descriptor(const std::array<std::size_t, 5>& pick) const;
    /// Assignments made by one case.
    std::vector<std::pair<Vertex, Colour>> seeds(const CaseChoice& choice) const;

private:
    const SkeletonAnalysis* analysis_;
    Palette palette_;
    std::array<std::vector<CaseChoice>, 5> levels_;
};

/// Lazy stream over a plan's branches in order.
class BranchEnumerator {
public:
    explicit BranchEnumerator(const BranchPlan& plan) : plan_(&plan) {}
    std::optional<BranchDescriptor> next();

private:
    const BranchPlan* plan_;
    std::array<std::size_t, 5> pick_{};
    bool started_ = false;
    bool done_ = false;
};

/// Closed form: product over the open T sets of 2 + 2 * sum_k |N_{k+1} - N_k|
/// and over the free D sets of 2 + 2 * |D_i - {v_i}|, empty sets counting 1.
std::uint64_t branch_count_formula(const SkeletonAnalysis& analysis, const Palette& palette);

/// Anchor colours plus every case seed of the branch.
std::vector<std::pair<Vertex, Colour>> branch_seeds(const BranchDescriptor& branch, const BranchPlan& plan);

/// Restricts the anchor, the forced T palettes, the D option pairs and the
/// case seeds. Returns false on a conflict. Does not propagate.
[[nodiscard]] bool apply_branch(ListState& state, const BranchDescriptor& branch, const BranchPlan& plan,
                                const Skeleton& sk);

struct BranchStats {
    std::uint64_t enumerated = 0;
    std::uint64_t survived = 0;
    std::uint64_t propagations = 0;
    std::uint64_t sat_instances = 0;

    BranchStats& operator+=(const BranchStats& o) {
        enumerated += o.enumerated;
        survived += o.survived;
        propagations += o.propagations;
        sat_instances += o.sat_instances;
        return *this;
    }
    friend bool operator==(const BranchStats&, const BranchStats&) = default;
};

struct BranchSearchResult {
    enum class Kind { Exhausted, Coloured, ClaimBreach };
    Kind kind = Kind::Exhausted;
    std::vector<Colour> colouring;
    BranchDescriptor branch;
    /// Full-list vertices left after safe elimination (ClaimBreach only).
    std::vector<Vertex> residue;
    BranchStats stats;
};

/// Serial reference: evaluates every branch independently in order
/// (apply, propagate, eliminate, 2-SAT) and stops at the first outcome.
/// `base` holds the input lists.
BranchSearchResult search_branches_reference(const Graph& g, const BranchPlan& plan, const Skeleton& sk,
                                             const ListState& base);

/// OpenMP kernel: work items are the pairs of cases on the two open T sets;
/// each item descends through the D levels, propagating after every level
/// and skipping subtrees whose prefix conflicts. The reported branch and the
/// stats are those of the least successful item, independent of `threads`.
BranchSearchResult search_branches(const Graph& g, const BranchPlan& plan, const Skeleton& sk, const ListState& base,
                                   int threads);

/// Colouring of a blown-up C7 within the lists, or nothing. Classes get
/// disjoint colour sets chosen lexicographically smallest.
std::optional<std::vector<Colour>> colour_blownup_c7(const TwinDecomposition& dec, std::span<const ColourMask> lists);

bool verify_colouring(const Graph& g, std::span<const ColourMask> lists, std::span<const Colour> colouring);

enum class Mode { Trust, Verify };

struct SolveOptions {
    Mode mode = Mode::Trust;
    int threads = 1;
    bool reference_kernel = false;
    /// Re-runs safe elimination and checks it is idempotent.
    bool debug_checks = false;
};

struct SolveStats {
    std::uint64_t branches = 0;
    std::uint64_t survived = 0;
    std::uint64_t propagations = 0;
    std::uint64_t sat_instances = 0;
    std::uint64_t fallback_activations = 0;
    std::uint64_t claim_breaches = 0;
    std::uint64_t anchor_colourings = 0;
    double millis = 0;
};

struct Uncolourable {};

struct Outcome {
    std::variant<std::vector<Colour>, Uncolourable, PromiseViolation> result;
    SolveStats stats;

    bool colourable() const { return result.index() == 0; }
    bool uncolourable() const { return result.index() == 1; }
    bool invalid() const { return result.index() == 2; }
    const std::vector<Colour>& colouring() const { return std::get<0>(result); }
    const PromiseViolation& violation() const { return std::get<2>(result); }
};

/// List 3-colouring of a {P7, triangle}-free graph. Components are solved
/// independently; the first component without a colouring decides.
/// `lists` has one non-empty mask per vertex.
Outcome solve(const Graph& g, std::span<const ColourMask> lists, const SolveOptions& options = {});

} // namespace p7col
