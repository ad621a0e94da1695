#pragma once

#include "irmia/model.hpp"

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace irmia::detail {

// Mutable graph used while constructing operator results. Edge modalities are
// merged so that a must edge absorbs a parallel may edge.
class Graph {
public:
    std::size_t add_state(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        std::size_t id = names_.size();
        names_.push_back(name);
        index_[name] = id;
        return id;
    }
    bool has_state(const std::string& name) const { return index_.count(name) != 0; }
    std::size_t id(const std::string& name) const { return index_.at(name); }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }

    void add_edge(std::size_t src, const std::string& action, std::size_t dst, Modality mod) {
        auto [it, fresh] = edges_.emplace(Key{src, action, dst}, mod);
        if (!fresh && mod == Modality::Must) it->second = Modality::Must;
    }

    using Key = std::tuple<std::size_t, std::string, std::size_t>;
    std::map<Key, Modality>& edges() { return edges_; }
    const std::map<Key, Modality>& edges() const { return edges_; }

    // States reachable from `from` over the current edges.
    std::vector<char> reachable(std::size_t from) const {
        std::vector<std::vector<std::size_t>> succ(names_.size());
        for (const auto& [k, m] : edges_) succ[std::get<0>(k)].push_back(std::get<2>(k));
        std::vector<char> seen(names_.size(), 0);
        std::vector<std::size_t> stack{from};
        seen[from] = 1;
        while (!stack.empty()) {
            auto s = stack.back();
            stack.pop_back();
            for (auto t : succ[s])
                if (!seen[t]) {
                    seen[t] = 1;
                    stack.push_back(t);
                }
        }
        return seen;
    }

    // Keeps states with keep[s] != 0 (declaration order preserved) and the edges between them.
    Description to_description(const std::string& name, const ActionAlphabet& alpha, std::size_t initial,
                               std::size_t failure, const std::vector<char>& keep) const {
        Description d;
        d.name = name;
        d.alphabet = alpha;
        for (std::size_t s = 0; s < names_.size(); ++s)
            if (keep[s]) d.states.push_back(names_[s]);
        d.initial = names_[initial];
        d.failure = names_[failure];
        for (const auto& [k, m] : edges_) {
            auto [src, act, dst] = k;
            if (keep[src] && keep[dst]) d.edges.push_back({names_[src], act, names_[dst], m});
        }
        return d;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
    std::map<Key, Modality> edges_;
};

inline std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

inline bool has_name(const std::vector<std::string>& v, const std::string& n) {
    for (const auto& x : v)
        if (x == n) return true;
    return false;
}

}  // namespace irmia::detail
