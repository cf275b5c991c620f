#include "kirigami/cut_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "kirigami/geodesic.hpp"

namespace kirigami {

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].code << ": " << violations[i].message;
    }
    return os.str();
}

ValidationReport validate(const KirigamiSpec& spec, const Tolerance& tol) {
    ValidationReport rep;
    auto add = [&](std::string code, std::string msg, std::vector<int> idx = {}) {
        rep.violations.push_back({std::move(code), std::move(msg), std::move(idx)});
    };

    const auto& dom = spec.domain;
    bool domain_ok = dom.size() >= 3;
    if (!domain_ok) add("domain", "domain needs at least 3 vertices");
    for (size_t i = 0; i < dom.size(); ++i)
        if (!finite(dom[i])) {
            add("non-finite", "domain vertex is not finite", {int(i)});
            domain_ok = false;
        }
    if (domain_ok) {
        if (signed_area(dom) <= 0) {
            add("domain orientation", "domain is not counterclockwise");
            domain_ok = false;
        } else if (!is_convex_ccw(dom, tol)) {
            add("domain convexity", "domain is not convex");
            domain_ok = false;
        }
    }

    const int nv = int(spec.vertices.size());
    for (int i = 0; i < nv; ++i) {
        if (!finite(spec.vertices[i])) {
            add("non-finite", "vertex is not finite", {i});
            continue;
        }
        if (domain_ok && polygon_contains_unchecked(dom, spec.vertices[i], tol) == Containment::Outside)
            add("vertex outside domain", "cut vertex lies outside the closed domain", {i});
    }
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (dist(spec.vertices[i], spec.vertices[j]) <= tol.eps)
                add("duplicate vertices", "two vertices coincide", {i, j});

    std::vector<int> degree(nv, 0);
    std::vector<bool> edge_ok(spec.edges.size(), true);
    for (size_t e = 0; e < spec.edges.size(); ++e) {
        auto [a, b] = spec.edges[e];
        if (a < 0 || b < 0 || a >= nv || b >= nv) {
            add("edge index", "edge references a missing vertex", {int(e)});
            edge_ok[e] = false;
            continue;
        }
        if (a == b || dist(spec.vertices[a], spec.vertices[b]) <= tol.eps) {
            add("zero-length edge", "edge has zero length", {int(e)});
            edge_ok[e] = false;
            continue;
        }
        degree[a]++;
        degree[b]++;
    }
    for (size_t e = 0; e < spec.edges.size(); ++e) {
        if (!edge_ok[e]) continue;
        for (size_t f = e + 1; f < spec.edges.size(); ++f) {
            if (!edge_ok[f]) continue;
            auto [a, b] = spec.edges[e];
            auto [c, d] = spec.edges[f];
            if ((a == c && b == d) || (a == d && b == c)) {
                add("duplicate edge", "edge listed twice", {int(e), int(f)});
                continue;
            }
            Segment s1{spec.vertices[a], spec.vertices[b]};
            Segment s2{spec.vertices[c], spec.vertices[d]};
            Intersection x = seg_intersect(s1, s2, tol);
            if (x.kind == Intersection::Kind::Empty) continue;
            if (x.kind == Intersection::Kind::Overlap) {
                add("edges overlap", "collinear cuts overlap", {int(e), int(f)});
                continue;
            }
            int shared = -1;
            for (int u : {a, b})
                for (int w : {c, d})
                    if (u == w) shared = u;
            if (shared >= 0 && dist(x.point, spec.vertices[shared]) <= tol.eps) continue;
            add("edges cross at non-vertex", "cuts intersect away from a common vertex", {int(e), int(f)});
        }
    }
    for (int i = 0; i < nv; ++i)
        if (degree[i] == 0) rep.warnings.push_back("vertex " + std::to_string(i) + " has no incident edge; dropped");

    auto check_terminal = [&](Point2 t, const char* name) {
        if (!finite(t)) {
            add("non-finite", std::string(name) + " is not finite");
            return;
        }
        if (domain_ok && polygon_contains_unchecked(dom, t, tol) == Containment::Outside)
            add(std::string(name) + " outside domain", std::string(name) + " lies outside the closed domain");
        for (size_t e = 0; e < spec.edges.size(); ++e) {
            if (!edge_ok[e]) continue;
            auto [a, b] = spec.edges[e];
            if (on_segment(t, {spec.vertices[a], spec.vertices[b]}, tol))
                add(std::string(name) + " in L", std::string(name) + " lies on a cut", {int(e)});
        }
    };
    check_terminal(spec.p, "p");
    check_terminal(spec.q, "q");
    if (finite(spec.p) && finite(spec.q) && dist(spec.p, spec.q) <= tol.eps) add("p == q", "p and q coincide");

    if (rep.ok()) {
        KirigamiSpec clean = drop_isolated_vertices(spec, nullptr);
        if (!std::isfinite(geodesic_distance(clean, tol)))
            add("separated", "p and q lie in different components of the complement of the cuts");
    }
    return rep;
}

void require_valid(const KirigamiSpec& spec, const Tolerance& tol) {
    ValidationReport rep = validate(spec, tol);
    if (!rep.ok()) throw ValidationError("invalid spec: " + rep.summary());
}

KirigamiSpec drop_isolated_vertices(const KirigamiSpec& spec, std::vector<std::string>* warnings) {
    std::vector<int> used(spec.vertices.size(), 0);
    for (auto [a, b] : spec.edges) {
        if (a >= 0 && a < int(used.size())) used[a] = 1;
        if (b >= 0 && b < int(used.size())) used[b] = 1;
    }
    KirigamiSpec out = spec;
    out.vertices.clear();
    std::vector<int> remap(spec.vertices.size(), -1);
    for (size_t i = 0; i < spec.vertices.size(); ++i) {
        if (used[i]) {
            remap[i] = int(out.vertices.size());
            out.vertices.push_back(spec.vertices[i]);
        } else if (warnings) {
            warnings->push_back("vertex " + std::to_string(i) + " has no incident edge; dropped");
        }
    }
    for (auto& [a, b] : out.edges) {
        a = remap[a];
        b = remap[b];
    }
    return out;
}

SlitComplex build_slit_complex(const KirigamiSpec& spec, const Tolerance& tol) {
    const int nv = int(spec.vertices.size());
    SlitComplex cx;
    cx.incident.assign(nv, {});
    cx.angles.assign(nv, {});
    cx.vertex_sectors.assign(nv, {});
    for (size_t e = 0; e < spec.edges.size(); ++e) {
        auto [a, b] = spec.edges[e];
        cx.incident[a].push_back(int(e));
        cx.incident[b].push_back(int(e));
    }
    auto other = [&](int e, int v) { return spec.edges[e].first == v ? spec.edges[e].second : spec.edges[e].first; };
    for (int v = 0; v < nv; ++v) {
        auto& inc = cx.incident[v];
        std::vector<std::pair<double, int>> srt;
        for (int e : inc) srt.push_back({angle_of(spec.vertices[other(e, v)] - spec.vertices[v]), e});
        std::sort(srt.begin(), srt.end());
        inc.clear();
        for (auto& [ang, e] : srt) {
            inc.push_back(e);
            cx.angles[v].push_back(ang);
        }
        size_t k = inc.size();
        for (size_t i = 0; i < k; ++i) {
            double width = k == 1 ? kTwoPi : cx.angles[v][(i + 1) % k] - cx.angles[v][i];
            if (width < 0) width += kTwoPi;
            // angular gap below tolerance: two cuts leave v in the same direction
            double len = std::min(dist(spec.vertices[v], spec.vertices[other(inc[i], v)]),
                                  dist(spec.vertices[v], spec.vertices[other(inc[(i + 1) % k], v)]));
            if (k > 1 && width * len <= tol.eps)
                throw DegenerateCutError("duplicate edge directions at vertex " + std::to_string(v));
            Sector s;
            s.vertex = v;
            s.start_angle = cx.angles[v][i];
            s.width = width;
            s.start_edge = inc[i];
            s.end_edge = inc[(i + 1) % k];
            cx.vertex_sectors[v].push_back(int(cx.sectors.size()));
            cx.sectors.push_back(s);
        }
        for (size_t i = 0; k > 1 && i < k; ++i) {
            int a = cx.vertex_sectors[v][i];
            int b = cx.vertex_sectors[v][(i + 1) % k];
            if (k == 2 && i == 1) break;  // the two sectors share both edges; one pair suffices
            cx.sector_adjacency.push_back({a, b});
        }
    }
    return cx;
}

int SlitComplex::sector_containing(int v, Point2 dir, double eps_angle) const {
    const auto& ang = angles[v];
    size_t k = ang.size();
    if (k == 0) return -1;
    double a = angle_of(dir);
    for (size_t i = 0; i < k; ++i) {
        double d = std::abs(a - ang[i]);
        if (std::min(d, kTwoPi - d) <= eps_angle) return -2;
    }
    for (size_t i = 0; i < k; ++i) {
        double off = a - ang[i];
        if (off < 0) off += kTwoPi;
        if (off < sectors[vertex_sectors[v][i]].width) return vertex_sectors[v][i];
    }
    return vertex_sectors[v][k - 1];
}

int SlitComplex::sector_left_of(int v, int e) const {
    const auto& inc = incident[v];
    for (size_t i = 0; i < inc.size(); ++i)
        if (inc[i] == e) return vertex_sectors[v][i];
    return -1;
}

int SlitComplex::sector_right_of(int v, int e) const {
    const auto& inc = incident[v];
    size_t k = inc.size();
    for (size_t i = 0; i < k; ++i)
        if (inc[i] == e) return vertex_sectors[v][(i + k - 1) % k];
    return -1;
}

bool Forest::has_cycle() const {
    return std::any_of(trees.begin(), trees.end(), [](const Tree& t) { return t.cyclic; });
}

std::vector<int> Forest::path(const KirigamiSpec& spec, int from, int to) const {
    if (tree_of_vertex[from] < 0 || tree_of_vertex[from] != tree_of_vertex[to])
        throw KirigamiError("Forest::path: vertices are not in the same tree");
    const Tree& t = trees[tree_of_vertex[from]];
    std::vector<std::vector<int>> adj(spec.vertices.size());
    for (int e : t.edges) {
        adj[spec.edges[e].first].push_back(spec.edges[e].second);
        adj[spec.edges[e].second].push_back(spec.edges[e].first);
    }
    std::vector<int> parent(spec.vertices.size(), -2);
    std::queue<int> bfs;
    bfs.push(from);
    parent[from] = -1;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        if (v == to) break;
        for (int w : adj[v])
            if (parent[w] == -2) {
                parent[w] = v;
                bfs.push(w);
            }
    }
    std::vector<int> out;
    for (int v = to; v != -1; v = parent[v]) out.push_back(v);
    std::reverse(out.begin(), out.end());
    return out;
}

Forest components(const KirigamiSpec& spec) {
    const int nv = int(spec.vertices.size());
    std::vector<int> uf(nv);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (auto [a, b] : spec.edges) uf[find(a)] = find(b);

    Forest f;
    f.tree_of_vertex.assign(nv, -1);
    f.tree_of_edge.assign(spec.edges.size(), -1);
    std::vector<int> root_tree(nv, -1);
    std::vector<int> degree(nv, 0);
    for (auto [a, b] : spec.edges) {
        degree[a]++;
        degree[b]++;
    }
    for (size_t e = 0; e < spec.edges.size(); ++e) {
        int r = find(spec.edges[e].first);
        if (root_tree[r] < 0) {
            root_tree[r] = int(f.trees.size());
            f.trees.emplace_back();
        }
        f.tree_of_edge[e] = root_tree[r];
        f.trees[root_tree[r]].edges.push_back(int(e));
    }
    for (int v = 0; v < nv; ++v) {
        if (degree[v] == 0) continue;
        int t = root_tree[find(v)];
        f.tree_of_vertex[v] = t;
        f.trees[t].vertices.push_back(v);
        if (degree[v] == 1) f.trees[t].leaves.push_back(v);
    }
    for (auto& t : f.trees) t.cyclic = t.edges.size() >= t.vertices.size();
    return f;
}

}  // namespace kirigami
