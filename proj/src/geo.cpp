#include "cancermatch/geo.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

#include "cancermatch/errors.hpp"

namespace cancermatch {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

StateAdjacency::StateAdjacency(std::vector<StateCode> states,
                               const std::vector<std::pair<StateCode, StateCode>>& edges) {
    std::set<StateCode> vertices(states.begin(), states.end());
    std::set<std::pair<StateCode, StateCode>> unique_edges;
    for (const auto& [a, b] : edges) {
        if (!a.valid() || !b.valid()) {
            throw std::invalid_argument("invalid state code in edge");
        }
        if (a == b) {
            throw std::invalid_argument("self-loop on " + a.str());
        }
        vertices.insert(a);
        vertices.insert(b);
        unique_edges.insert(std::minmax(a, b));
    }
    if (vertices.count(StateCode{})) {
        throw std::invalid_argument("invalid state code in vertex list");
    }
    states_.assign(vertices.begin(), vertices.end());
    edge_count_ = unique_edges.size();

    adjacency_.resize(states_.size());
    for (const auto& [a, b] : unique_edges) {
        const auto ia = index_of(a);
        const auto ib = index_of(b);
        adjacency_[ia].push_back(ib);
        adjacency_[ib].push_back(ia);
    }

    const std::size_t n = states_.size();
    hops_.assign(n, std::vector<int>(n, -1));
    for (std::size_t src = 0; src < n; ++src) {
        auto& row = hops_[src];
        std::deque<std::size_t> frontier{src};
        row[src] = 0;
        while (!frontier.empty()) {
            const auto u = frontier.front();
            frontier.pop_front();
            for (const auto v : adjacency_[u]) {
                if (row[v] < 0) {
                    row[v] = row[u] + 1;
                    frontier.push_back(v);
                }
            }
        }
    }
}

StateAdjacency StateAdjacency::parse(std::istream& in) {
    std::vector<StateCode> states;
    std::vector<std::pair<StateCode, StateCode>> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) {
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string_view::npos) {
            const auto s = StateCode::parse(text);
            if (!s.valid()) {
                throw ParseError(line_no, "bad state code '" + std::string(text) + "'");
            }
            states.push_back(s);
            continue;
        }
        const auto a = StateCode::parse(trim(text.substr(0, comma)));
        const auto b = StateCode::parse(trim(text.substr(comma + 1)));
        if (!a.valid() || !b.valid()) {
            throw ParseError(line_no, "expected STATE_A,STATE_B");
        }
        if (a == b) {
            throw ParseError(line_no, "self-loop on " + a.str());
        }
        edges.emplace_back(a, b);
    }
    return StateAdjacency(std::move(states), edges);
}

bool StateAdjacency::contains(StateCode s) const {
    return std::binary_search(states_.begin(), states_.end(), s);
}

std::size_t StateAdjacency::index_of(StateCode s) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || *it != s) {
        throw ValidationError(ValidationErrorKind::UnknownState, "'" + s.str() + "' not in adjacency table");
    }
    return static_cast<std::size_t>(it - states_.begin());
}

std::vector<StateCode> StateAdjacency::neighbors(StateCode s) const {
    std::vector<StateCode> out;
    for (const auto v : adjacency_[index_of(s)]) {
        out.push_back(states_[v]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> StateAdjacency::hops(StateCode from, StateCode to) const {
    const int h = hops_[index_of(from)][index_of(to)];
    if (h < 0) {
        return std::nullopt;
    }
    return h;
}

std::optional<Distance> StateAdjacency::hop_distance(StateCode from, StateCode to) const {
    const auto h = hops(from, to);
    if (!h) {
        return std::nullopt;
    }
    return Distance::from_hops(*h);
}

}  // namespace cancermatch
