#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "carve/feature_model.hpp"

using namespace carve::model;

namespace {

// Hierarchy of the first worked example:
//   FeatureGroup_A
//       Feature_G
//       Feature_Y
//   Feature_Z
FeatureHierarchy sample() {
    FeatureHierarchy h;
    h.add("FeatureGroup_A");
    h.add("Feature_G", "FeatureGroup_A");
    h.add("Feature_Y", "FeatureGroup_A");
    h.add("Feature_Z");
    return h;
}

}  // namespace

TEST_CASE("add and contains") {
    auto h = sample();
    CHECK(h.size() == 4);
    CHECK(h.contains("Feature_G"));
    CHECK(!h.contains("Feature_Q"));
    CHECK(!h.add("Feature_Z"));  // duplicate
    CHECK(h.size() == 4);
    CHECK_THROWS_AS(h.add("X", "NoSuchParent"), UnknownFeatureError);
}

TEST_CASE("parent_of") {
    auto h = sample();
    CHECK(h.parent_of("Feature_G") == "FeatureGroup_A");
    CHECK(h.parent_of("FeatureGroup_A") == "");
    CHECK_THROWS_AS(h.parent_of("Nope"), UnknownFeatureError);
}

TEST_CASE("descendants are strict and preorder") {
    FeatureHierarchy h;
    h.add("root");
    h.add("a", "root");
    h.add("a1", "a");
    h.add("a2", "a");
    h.add("b", "root");
    CHECK(h.descendants("root") == std::vector<std::string>{"a", "a1", "a2", "b"});
    CHECK(h.descendants("a") == std::vector<std::string>{"a1", "a2"});
    CHECK(h.descendants("a2").empty());
    CHECK_THROWS_AS(h.descendants("zzz"), UnknownFeatureError);
}

TEST_CASE("entries carry depths in insertion order") {
    auto h = sample();
    auto e = h.entries();
    REQUIRE(e.size() == 4);
    CHECK(e[0].name == "FeatureGroup_A");
    CHECK(e[0].depth == 0);
    CHECK(e[1].name == "Feature_G");
    CHECK(e[1].depth == 1);
    CHECK(e[3].name == "Feature_Z");
    CHECK(e[3].depth == 0);
}

TEST_CASE("closure adds descendants only") {
    auto h = sample();
    auto r = close_removal_set(h, {"FeatureGroup_A"});
    CHECK(r.features ==
          std::set<std::string, std::less<>>{"FeatureGroup_A", "Feature_G", "Feature_Y"});

    // selecting a leaf never drags in the parent
    auto leaf = close_removal_set(h, {"Feature_Y"});
    CHECK(leaf.contains("Feature_Y"));
    CHECK(!leaf.contains("FeatureGroup_A"));
    CHECK(!leaf.contains("Feature_G"));

    CHECK_THROWS_AS(close_removal_set(h, {"Bogus"}), UnknownFeatureError);
}

TEST_CASE("firing needs every feature of the mapping") {
    auto h = sample();
    auto r = close_removal_set(h, {"Feature_Y"});
    CHECK(mapping_fires({"Feature_Y"}, r));
    CHECK(!mapping_fires({"Feature_Y", "Feature_Z"}, r));
    CHECK(!mapping_fires({"FeatureGroup_A"}, r));

    auto both = close_removal_set(h, {"Feature_Y", "Feature_Z"});
    CHECK(mapping_fires({"Feature_Y", "Feature_Z"}, both));

    // group selection fires mappings on all of its descendants
    auto grp = close_removal_set(h, {"FeatureGroup_A"});
    CHECK(mapping_fires({"FeatureGroup_A", "Feature_G"}, grp));
    CHECK(mapping_fires({"Feature_Y"}, grp));
}

TEST_CASE("closure is monotone and idempotent") {
    std::mt19937 rng(23);
    for (int iter = 0; iter < 100; ++iter) {
        CAPTURE(iter);
        FeatureHierarchy h;
        int n = 1 + static_cast<int>(rng() % 12);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) {
            std::string name = "N" + std::to_string(i);
            std::string parent;
            if (i > 0 && rng() % 2) parent = names[rng() % names.size()];
            h.add(name, parent);
            names.push_back(name);
        }
        std::set<std::string> s1, s2;
        for (const auto& name : names) {
            bool in2 = rng() % 3 != 0;
            bool in1 = in2 && (rng() % 2 != 0);  // s1 subset of s2
            if (in1) s1.insert(name);
            if (in2) s2.insert(name);
        }
        auto c1 = close_removal_set(h, s1);
        auto c2 = close_removal_set(h, s2);
        CHECK(std::includes(c2.features.begin(), c2.features.end(), c1.features.begin(),
                            c1.features.end()));

        // closing a closed set changes nothing
        std::set<std::string> plain(c1.features.begin(), c1.features.end());
        CHECK(close_removal_set(h, plain) == c1);

        // every added name is a descendant of something requested
        for (const auto& f : c1.features) {
            if (s1.count(f)) continue;
            bool reachable = false;
            for (const auto& req : s1) {
                auto d = h.descendants(req);
                if (std::find(d.begin(), d.end(), f) != d.end()) reachable = true;
            }
            CHECK(reachable);
        }
    }
}
