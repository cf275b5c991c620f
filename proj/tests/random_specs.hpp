#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "kirigami/cut_graph.hpp"
#include "kirigami/geodesic.hpp"

namespace kirigami::testing {

// Valid specs in the unit square with at most 8 vertices and 5 cuts; p on the
// left side and q on the right side, connected in the slit domain. Cuts may
// share endpoints, so trees with branching occur.
inline std::vector<KirigamiSpec> random_specs(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> inner(0.1, 0.9), side(0.05, 0.95), coin(0.0, 1.0);
    std::uniform_int_distribution<int> ncuts(1, 5);
    std::vector<KirigamiSpec> out;
    while (int(out.size()) < count) {
        KirigamiSpec s;
        s.domain = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        s.p = {0.0, side(rng)};
        s.q = {1.0, side(rng)};
        int want = ncuts(rng);
        for (int attempt = 0; attempt < 60 && int(s.edges.size()) < want; ++attempt) {
            KirigamiSpec t = s;
            int a;
            if (!t.vertices.empty() && coin(rng) < 0.35) {
                a = std::uniform_int_distribution<int>(0, int(t.vertices.size()) - 1)(rng);
            } else {
                if (t.vertices.size() >= 8) continue;
                t.vertices.push_back({inner(rng), inner(rng)});
                a = int(t.vertices.size()) - 1;
            }
            if (t.vertices.size() >= 8) continue;
            t.vertices.push_back({inner(rng), inner(rng)});
            int b = int(t.vertices.size()) - 1;
            if (dist(t.vertices[a], t.vertices[b]) < 0.05) continue;
            t.edges.push_back({a, b});
            if (!validate(t).ok()) continue;
            s = t;
        }
        if (s.edges.empty() || !validate(s).ok()) continue;
        if (!std::isfinite(geodesic_distance(s))) continue;
        out.push_back(s);
    }
    return out;
}

}  // namespace kirigami::testing
