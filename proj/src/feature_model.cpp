#include "carve/feature_model.hpp"

namespace carve::model {

int FeatureHierarchy::index_of(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

bool FeatureHierarchy::add(const std::string& name, const std::string& parent) {
    if (contains(name)) return false;
    int parent_idx = -1;
    if (!parent.empty()) {
        parent_idx = index_of(parent);
        if (parent_idx < 0) throw UnknownFeatureError(parent);
    }
    int idx = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{name, parent_idx, {}});
    if (parent_idx >= 0) nodes_[static_cast<size_t>(parent_idx)].children.push_back(idx);
    index_.emplace(name, idx);
    return true;
}

bool FeatureHierarchy::contains(std::string_view name) const {
    return index_of(name) >= 0;
}

std::vector<std::string> FeatureHierarchy::descendants(std::string_view name) const {
    int at = index_of(name);
    if (at < 0) throw UnknownFeatureError(std::string(name));
    std::vector<std::string> out;
    std::vector<int> stack(nodes_[static_cast<size_t>(at)].children.rbegin(),
                           nodes_[static_cast<size_t>(at)].children.rend());
    while (!stack.empty()) {
        int idx = stack.back();
        stack.pop_back();
        const Node& n = nodes_[static_cast<size_t>(idx)];
        out.push_back(n.name);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

const std::string& FeatureHierarchy::parent_of(std::string_view name) const {
    static const std::string kNone;
    int at = index_of(name);
    if (at < 0) throw UnknownFeatureError(std::string(name));
    int p = nodes_[static_cast<size_t>(at)].parent;
    return p < 0 ? kNone : nodes_[static_cast<size_t>(p)].name;
}

std::vector<FeatureHierarchy::Entry> FeatureHierarchy::entries() const {
    std::vector<Entry> out;
    out.reserve(nodes_.size());
    // nodes_ is already in insertion order; recover depth by chasing parents.
    for (const Node& n : nodes_) {
        int depth = 0;
        for (int p = n.parent; p >= 0; p = nodes_[static_cast<size_t>(p)].parent) ++depth;
        out.push_back(Entry{n.name, depth});
    }
    return out;
}

RemovalSet close_removal_set(const FeatureHierarchy& hierarchy,
                             const std::set<std::string>& requested) {
    RemovalSet out;
    for (const std::string& name : requested) {
        if (!hierarchy.contains(name)) throw UnknownFeatureError(name);
        out.features.insert(name);
        for (std::string& d : hierarchy.descendants(name)) out.features.insert(std::move(d));
    }
    return out;
}

bool mapping_fires(const std::vector<std::string>& mapping_features,
                   const RemovalSet& removal) {
    for (const std::string& f : mapping_features)
        if (!removal.contains(f)) return false;
    return true;
}

}  // namespace carve::model
