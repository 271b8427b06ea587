#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace carve::model {

struct UnknownFeatureError : std::runtime_error {
    explicit UnknownFeatureError(const std::string& name)
        : std::runtime_error("unknown feature: " + name), feature(name) {}
    std::string feature;
};

/// Ordered forest of feature names. Names are unique across the whole forest,
/// and insertion order is preserved (it drives config rendering).
class FeatureHierarchy {
public:
    /// Adds `name` under `parent` ("" for a root). Returns false when the
    /// name is already present. Throws UnknownFeatureError for a bad parent.
    bool add(const std::string& name, const std::string& parent = "");

    bool contains(std::string_view name) const;
    size_t size() const { return nodes_.size(); }

    /// Strict descendants, preorder. Throws UnknownFeatureError.
    std::vector<std::string> descendants(std::string_view name) const;

    const std::string& parent_of(std::string_view name) const;  // "" for roots

    /// Every name in insertion (preorder-compatible) order, with its depth.
    struct Entry {
        std::string name;
        int depth = 0;
        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries() const;

    bool operator==(const FeatureHierarchy& other) const { return entries() == other.entries(); }

private:
    struct Node {
        std::string name;
        int parent = -1;
        std::vector<int> children;
    };
    int index_of(std::string_view name) const;  // -1 when absent
    std::vector<Node> nodes_;
    std::map<std::string, int, std::less<>> index_;
};

/// A removal request closed under the hierarchy: selecting a feature selects
/// all of its descendants, never its ancestors.
struct RemovalSet {
    std::set<std::string, std::less<>> features;
    bool contains(std::string_view name) const {
        return features.find(name) != features.end();
    }
    bool operator==(const RemovalSet&) const = default;
};

/// requested plus every descendant of each requested feature.
/// Throws UnknownFeatureError for names outside the hierarchy.
RemovalSet close_removal_set(const FeatureHierarchy& hierarchy,
                             const std::set<std::string>& requested);

/// True when every feature of the mapping is in the (closed) removal set.
bool mapping_fires(const std::vector<std::string>& mapping_features,
                   const RemovalSet& removal);

}  // namespace carve::model
