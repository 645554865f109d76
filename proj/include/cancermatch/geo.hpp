#pragma once

#include <istream>
#include <optional>
#include <utility>
#include <vector>

#include "cancermatch/domain.hpp"

namespace cancermatch {

// Undirected state graph with an all-pairs hop table computed once at
// construction. Immutable afterwards.
class StateAdjacency {
public:
    StateAdjacency() = default;

    // Edges may repeat in either orientation; duplicates collapse. Every
    // endpoint is added to the vertex set. Throws std::invalid_argument on a
    // self-loop or an invalid code.
    StateAdjacency(std::vector<StateCode> states, const std::vector<std::pair<StateCode, StateCode>>& edges);

    // Text format: one `A,B` edge per line, `#` comments, blank lines ignored.
    // A line holding a single code declares an isolated vertex. Throws
    // ParseError with the 1-based line number.
    static StateAdjacency parse(std::istream& in);

    const std::vector<StateCode>& states() const noexcept { return states_; }
    bool contains(StateCode s) const;
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::vector<StateCode> neighbors(StateCode s) const;

    // Shortest-path hop count; nullopt when no path exists. Throws
    // ValidationError(UnknownState) for a state outside the graph.
    std::optional<int> hops(StateCode from, StateCode to) const;

    // 0.5 for the same state, otherwise the hop count; nullopt = unreachable.
    std::optional<Distance> hop_distance(StateCode from, StateCode to) const;

private:
    std::size_t index_of(StateCode s) const;

    std::vector<StateCode> states_;                 // sorted
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::vector<int>> hops_;            // -1 = unreachable
    std::size_t edge_count_ = 0;
};

// Strict: an unreachable center is never accessible.
inline bool is_accessible(std::optional<Distance> d, Distance t_ad) {
    return d.has_value() && *d < t_ad;
}

}  // namespace cancermatch
