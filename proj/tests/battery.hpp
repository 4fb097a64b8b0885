#pragma once

// Deterministic battery of small instances shared by the acceptance suite:
// every feasible instance has M1(R) <= 12 and an enumerable pairing space,
// with handpicked additions so every switching kind has nonempty classes
// somewhere in the battery.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "bgraph/exact_count.hpp"
#include "bgraph/formulas.hpp"

namespace battery {

struct Instance {
    bgraph::DegreeSequence ds;
    bgraph::Bipartition bip;
    std::string label;
};

inline std::string label_of(const std::vector<int>& degrees, const std::vector<int>& left) {
    std::string out = "degrees=";
    for (std::size_t i = 0; i < degrees.size(); ++i)
        out += (i ? "," : "") + std::to_string(degrees[i]);
    out += ";L=";
    if (left.empty()) out += "none";
    for (std::size_t i = 0; i < left.size(); ++i)
        out += (i ? "," : "") + std::to_string(left[i] + 1);
    return out;
}

inline std::vector<Instance> make_battery() {
    using namespace bgraph;
    std::vector<Instance> out;
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    const auto push = [&](const std::vector<int>& degrees, const std::vector<int>& left) {
        if (!seen.insert({degrees, left}).second) return;
        const DegreeSequence ds(degrees);
        const Bipartition bip(ds.n(), left);
        if (feasibility(ds, bip) != Feasibility::feasible) return;
        const long long m1r = ds.total_degree() - moments_left(ds, bip).m1;
        if (m1r > 12) return;
        if (count_restricted_pairings(ds, bip) > 11000) return;
        out.push_back({ds, bip, label_of(degrees, left)});
    };

    // systematic part: all nonincreasing degree vectors with n <= 4,
    // entries <= 3 and even positive total, under a few left sets
    std::vector<int> degrees;
    const auto emit = [&](const std::vector<int>& d) {
        long long total = 0;
        for (int x : d) total += x;
        if (total == 0 || total % 2 != 0) return;
        const int n = static_cast<int>(d.size());
        std::vector<std::vector<int>> lefts = {{}, {0}, {n - 1}};
        if (n >= 2) {
            lefts.push_back({0, 1});
            lefts.push_back({n - 2, n - 1});
        }
        for (const auto& left : lefts) push(d, left);
    };
    const std::function<void(int, int)> gen = [&](int n, int max_value) {
        if (static_cast<int>(degrees.size()) == n) {
            emit(degrees);
            return;
        }
        for (int v = max_value; v >= 0; --v) {
            degrees.push_back(v);
            gen(n, v);
            degrees.pop_back();
        }
    };
    for (int n = 2; n <= 4; ++n) gen(n, 3);

    // handpicked richness: loops with many pure pairs, mixed doubles,
    // pure doubles with enough mixed pairs to drive D4, and so on
    push({3, 3, 3, 3}, {});
    push({2, 2, 2, 2, 2}, {});
    push({2, 2, 1, 1, 1, 1}, {2, 3});
    push({3, 3, 1, 1, 1, 1}, {2, 3});
    push({3, 2, 2, 1, 1, 1}, {3, 4});
    push({2, 2, 2, 2, 1, 1, 1, 1}, {4, 5});
    push({2, 2, 1, 1, 1, 1, 1, 1}, {2, 3, 4});
    push({2, 2, 1, 1, 1, 1, 1, 1, 1, 1}, {2, 3, 4, 5});  // ten vertices: reaches D4
    return out;
}

}  // namespace battery
