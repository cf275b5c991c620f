#include "kirigami/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace kirigami {

namespace {

Point2 node_point(const KirigamiSpec& spec, int id) {
    if (id == kTerminalP) return spec.p;
    if (id == kTerminalQ) return spec.q;
    return spec.vertices[id];
}

int find_cut(const KirigamiSpec& spec, int a, int b) {
    if (a < 0 || b < 0) return -1;
    for (size_t e = 0; e < spec.edges.size(); ++e) {
        auto [u, v] = spec.edges[e];
        if ((u == a && v == b) || (u == b && v == a)) return int(e);
    }
    return -1;
}

bool angles_in_sweep(const std::vector<double>& angles, Point2 from, Point2 to, double eps_angle = 1e-12) {
    double width = ccw_sweep(from, to);
    double a0 = angle_of(from);
    for (double ang : angles) {
        double off = ang - a0;
        if (off < 0) off += kTwoPi;
        if (off >= kTwoPi) off -= kTwoPi;
        if (off > eps_angle && off < width - eps_angle) return true;
    }
    return false;
}

// True when some cut direction at v lies strictly inside the counterclockwise
// sweep from direction `from` to direction `to`.
bool sweep_has_cut(const SlitComplex& cx, int v, Point2 from, Point2 to, double eps_angle = 1e-12) {
    return angles_in_sweep(cx.angles[v], from, to, eps_angle);
}

// For a point on the domain boundary: angles of the boundary towards the next
// and the previous domain vertex. The domain interior is the counterclockwise
// wedge from the first to the second. Empty for interior points.
std::vector<double> boundary_rays(const KirigamiSpec& spec, Point2 x, const Tolerance& tol) {
    const auto& d = spec.domain;
    size_t n = d.size();
    for (size_t i = 0; i < n; ++i) {
        Point2 a = d[i], b = d[(i + 1) % n];
        if (!on_segment(x, {a, b}, tol)) continue;
        Point2 next = b, prev = a;
        if (dist(x, a) <= tol.eps)
            prev = d[(i + n - 1) % n];
        else if (dist(x, b) <= tol.eps)
            next = d[(i + 2) % n];
        return {angle_of(next - x), angle_of(prev - x)};
    }
    return {};
}

// Cut directions at v together with the boundary rays when v lies on the boundary.
std::vector<double> barrier_angles(const KirigamiSpec& spec, const SlitComplex& cx, int v, const Tolerance& tol) {
    std::vector<double> out = cx.angles[v];
    for (double a : boundary_rays(spec, spec.vertices[v], tol)) out.push_back(a);
    return out;
}

struct SearchGraph {
    int nv = 0;
    std::vector<int> offset;  // first state of each vertex
    int state_p = 0, state_q = 0, nstates = 0;
    std::vector<int> state_node;    // node id per state
    std::vector<int> state_sector;  // sector id per state, -1 for terminals
    struct Arc {
        int to;
        double w;
        int cut;
    };
    std::vector<std::vector<Arc>> adj;
};

// Angular gaps at a vertex between consecutive barriers (cut directions and
// boundary rays). The gap outside the domain is omitted.
struct Gap {
    double start = 0.0, width = kTwoPi;
    int start_cut = -1, end_cut = -1;  // cut ids of the bounding barriers, -1 for boundary rays
};

std::vector<Gap> vertex_gaps(const KirigamiSpec& spec, const SlitComplex& cx, int v, const Tolerance& tol) {
    // tag: cut id, or -1 / -2 for the boundary ray towards the next / previous domain vertex
    std::vector<std::pair<double, int>> bar;
    for (size_t i = 0; i < cx.incident[v].size(); ++i) bar.push_back({cx.angles[v][i], cx.incident[v][i]});
    auto rays = boundary_rays(spec, spec.vertices[v], tol);
    if (!rays.empty()) {
        bar.push_back({rays[0], -1});
        bar.push_back({rays[1], -2});
    }
    std::sort(bar.begin(), bar.end());
    std::vector<Gap> out;
    size_t k = bar.size();
    if (k == 0) return {Gap{}};
    for (size_t i = 0; i < k; ++i) {
        if (bar[i].second == -2) continue;
        Gap g;
        g.start = bar[i].first;
        g.width = k == 1 ? kTwoPi : bar[(i + 1) % k].first - bar[i].first;
        if (g.width < 0) g.width += kTwoPi;
        g.start_cut = std::max(bar[i].second, -1);
        g.end_cut = std::max(bar[(i + 1) % k].second, -1);
        out.push_back(g);
    }
    return out;
}

SearchGraph build_graph(const KirigamiSpec& spec, const SlitComplex& cx, const Tolerance& tol) {
    SearchGraph g;
    g.nv = int(spec.vertices.size());
    g.offset.resize(g.nv + 1);
    std::vector<std::vector<Gap>> gaps(g.nv);
    int s = 0;
    for (int v = 0; v < g.nv; ++v) {
        gaps[v] = vertex_gaps(spec, cx, v, tol);
        g.offset[v] = s;
        s += int(gaps[v].size());
    }
    g.offset[g.nv] = s;
    g.state_p = s;
    g.state_q = s + 1;
    g.nstates = s + 2;
    g.state_node.assign(g.nstates, 0);
    g.state_sector.assign(g.nstates, -1);
    for (int v = 0; v < g.nv; ++v)
        for (int j = g.offset[v]; j < g.offset[v + 1]; ++j) {
            const Gap& gp = gaps[v][j - g.offset[v]];
            double mid = gp.start + 0.5 * gp.width;
            g.state_node[j] = v;
            g.state_sector[j] = cx.sector_containing(v, {std::cos(mid), std::sin(mid)});
        }
    g.state_node[g.state_p] = kTerminalP;
    g.state_node[g.state_q] = kTerminalQ;
    g.adj.assign(g.nstates, {});

    // gap starting (left) or ending (right) at cut e, seen from v; -1 when outside the domain
    auto state_beside_cut = [&](int v, int e, bool left) {
        for (size_t k = 0; k < gaps[v].size(); ++k)
            if ((left ? gaps[v][k].start_cut : gaps[v][k].end_cut) == e) return g.offset[v] + int(k);
        return -1;
    };
    auto state_for_dir = [&](int node, Point2 dir) {
        if (node == kTerminalP) return g.state_p;
        if (node == kTerminalQ) return g.state_q;
        double a = angle_of(dir);
        const auto& gs = gaps[node];
        // directions along a boundary ray belong to the adjacent interior gap
        for (double slack : {-1e-12, 1e-12}) {
            for (size_t k = 0; k < gs.size(); ++k) {
                double off = a - gs[k].start;
                if (off < 0) off += kTwoPi;
                if (slack > 0 && off > kTwoPi - slack) off = 0;
                if (off > -slack && off < gs[k].width + slack) return g.offset[node] + int(k);
            }
        }
        return -1;
    };

    std::vector<int> nodes;
    for (int v = 0; v < g.nv; ++v) nodes.push_back(v);
    nodes.push_back(kTerminalP);
    nodes.push_back(kTerminalQ);
    for (size_t i = 0; i < nodes.size(); ++i) {
        for (size_t j = i + 1; j < nodes.size(); ++j) {
            int a = nodes[i], b = nodes[j];
            EdgeAdmissibility ad = edge_admissible(a, b, spec, cx, tol);
            if (!ad.admissible) continue;
            Point2 pa = node_point(spec, a), pb = node_point(spec, b);
            double w = dist(pa, pb);
            if (ad.cut < 0) {
                int sa = state_for_dir(a, pb - pa);
                int sb = state_for_dir(b, pa - pb);
                if (sa < 0 || sb < 0) continue;
                g.adj[sa].push_back({sb, w, -1});
                g.adj[sb].push_back({sa, w, -1});
            } else {
                // travelling a->b along the cut: the left side at a starts at the
                // cut, the left side at b ends at it; likewise for the right side
                int e = ad.cut;
                int la = state_beside_cut(a, e, true);
                int lb = state_beside_cut(b, e, false);
                int ra = state_beside_cut(a, e, false);
                int rb = state_beside_cut(b, e, true);
                if (la >= 0 && lb >= 0) {
                    g.adj[la].push_back({lb, w, e});
                    g.adj[lb].push_back({la, w, e});
                }
                if (ra >= 0 && rb >= 0 && (ra != la || rb != lb)) {
                    g.adj[ra].push_back({rb, w, e});
                    g.adj[rb].push_back({ra, w, e});
                }
            }
        }
    }
    return g;
}

std::vector<double> dijkstra(const SearchGraph& g, int src) {
    std::vector<double> d(g.nstates, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        for (const auto& arc : g.adj[u]) {
            double nd = du + arc.w;
            if (nd < d[arc.to]) {
                d[arc.to] = nd;
                pq.push({nd, arc.to});
            }
        }
    }
    return d;
}

}  // namespace

std::vector<int> GeodesicPolygonal::vertex_sequence() const {
    std::vector<int> out;
    for (auto& w : waypoints) out.push_back(w.vertex);
    return out;
}

std::vector<double> GeodesicPolygonal::arclengths() const {
    std::vector<double> s(waypoints.size(), 0.0);
    for (size_t i = 1; i < waypoints.size(); ++i) s[i] = s[i - 1] + dist(waypoints[i - 1].pt, waypoints[i].pt);
    return s;
}

EdgeAdmissibility edge_admissible(int a, int b, const KirigamiSpec& spec, const SlitComplex& cx,
                                  const Tolerance& tol) {
    (void)cx;
    EdgeAdmissibility out;
    if (a == b) return out;
    Point2 pa = node_point(spec, a), pb = node_point(spec, b);
    Segment s{pa, pb};
    for (size_t v = 0; v < spec.vertices.size(); ++v) {
        if (int(v) == a || int(v) == b) continue;
        if (in_open_segment(spec.vertices[v], s, tol)) return out;
    }
    for (int t : {kTerminalP, kTerminalQ}) {
        if (t == a || t == b) continue;
        if (in_open_segment(node_point(spec, t), s, tol)) return out;
    }
    int whole = -1;
    for (size_t e = 0; e < spec.edges.size(); ++e) {
        auto [u, v] = spec.edges[e];
        Intersection x = seg_intersect(s, {spec.vertices[u], spec.vertices[v]}, tol);
        switch (x.kind) {
            case Intersection::Kind::Empty:
                break;
            case Intersection::Kind::Overlap:
                if ((u == a && v == b) || (u == b && v == a)) {
                    whole = int(e);
                    break;
                }
                return out;
            case Intersection::Kind::Point:
                if (!x.at_endpoint) return out;
                break;
        }
    }
    out.admissible = true;
    out.cut = whole;
    out.left_side = out.right_side = true;
    return out;
}

double geodesic_distance(const KirigamiSpec& spec, const Tolerance& tol) {
    SlitComplex cx = build_slit_complex(spec, tol);
    SearchGraph g = build_graph(spec, cx, tol);
    return dijkstra(g, g.state_p)[g.state_q];
}

namespace {

// allowed[i] bit 0: curves may pass waypoint i on the left of travel, bit 1: on the right.
// Empty when an interior waypoint is not a cut vertex.
std::vector<int> passing_sides(const GeodesicPolygonal& path, const KirigamiSpec& spec, const SlitComplex& cx,
                               const Tolerance& tol) {
    const auto& w = path.waypoints;
    size_t n = w.size();
    std::vector<int> allowed(n, 3);
    for (size_t i = 1; i + 1 < n; ++i) {
        int v = w[i].vertex;
        if (v < 0) return {};
        Point2 din = w[i - 1].pt - w[i].pt;
        Point2 dout = w[i + 1].pt - w[i].pt;
        std::vector<double> bar = barrier_angles(spec, cx, v, tol);
        int a = 0;
        if (!angles_in_sweep(bar, dout, din)) a |= 1;
        if (!angles_in_sweep(bar, din, dout)) a |= 2;
        allowed[i] = a;
    }
    return allowed;
}

}  // namespace

bool sector_consistent(const GeodesicPolygonal& path, const KirigamiSpec& spec, const SlitComplex& cx,
                       const Tolerance& tol) {
    const auto& w = path.waypoints;
    if (w.size() < 2) return false;
    std::vector<int> sides = cut_edge_sides(path, spec, cx, tol);
    if (sides.empty()) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (find_cut(spec, w[i].vertex, w[i + 1].vertex) >= 0 && sides[i] == 0) return false;
    return true;
}

std::vector<int> cut_edge_sides(const GeodesicPolygonal& path, const KirigamiSpec& spec, const SlitComplex& cx,
                                const Tolerance& tol) {
    const auto& w = path.waypoints;
    size_t n = w.size();
    std::vector<int> allowed = passing_sides(path, spec, cx, tol);
    if (allowed.empty()) return {};
    for (size_t i = 1; i + 1 < n; ++i)
        if (allowed[i] == 0) return {};
    std::vector<int> out(n > 0 ? n - 1 : 0, 0);
    // runs joined by whole-cut edges keep one side
    size_t i = 0;
    while (i + 1 < n) {
        size_t j = i;
        int common = allowed[i];
        while (j + 1 < n && find_cut(spec, w[j].vertex, w[j + 1].vertex) >= 0) {
            ++j;
            common &= allowed[j];
        }
        for (size_t k = i; k < j; ++k) out[k] = common;
        i = j + 1;
    }
    return out;
}

GeodesicSet all_geodesics(const KirigamiSpec& spec, const Tolerance& tol) {
    SlitComplex cx = build_slit_complex(spec, tol);
    return all_geodesics(spec, cx, tol);
}

GeodesicSet all_geodesics(const KirigamiSpec& spec, const SlitComplex& cx, const Tolerance& tol) {
    SearchGraph g = build_graph(spec, cx, tol);
    std::vector<double> dp = dijkstra(g, g.state_p);
    std::vector<double> dq = dijkstra(g, g.state_q);
    double D = dp[g.state_q];
    if (!std::isfinite(D)) throw NoPathError("p and q are separated by the cuts");

    GeodesicSet out;
    out.distance = D;
    std::vector<std::vector<int>> state_paths;
    std::vector<int> stack{g.state_p};
    std::vector<char> on_path(g.nv + 2, 0);
    auto node_slot = [&](int node) { return node == kTerminalP ? g.nv : node == kTerminalQ ? g.nv + 1 : node; };
    on_path[node_slot(kTerminalP)] = 1;

    std::function<void(int, double)> dfs = [&](int x, double len) {
        if (x == g.state_q) {
            if (state_paths.size() >= kMaxGeodesics)
                throw EnumerationLimitError("more than 10000 co-optimal geodesics");
            state_paths.push_back(stack);
            return;
        }
        for (const auto& arc : g.adj[x]) {
            if (len + arc.w + dq[arc.to] > D + tol.eps_len) continue;
            int slot = node_slot(g.state_node[arc.to]);
            if (on_path[slot]) continue;
            on_path[slot] = 1;
            stack.push_back(arc.to);
            dfs(arc.to, len + arc.w);
            stack.pop_back();
            on_path[slot] = 0;
        }
    };
    dfs(g.state_p, 0.0);

    std::set<std::vector<int>> seen;
    for (const auto& sp : state_paths) {
        GeodesicPolygonal gp;
        for (int st : sp) {
            int node = g.state_node[st];
            gp.waypoints.push_back({node_point(spec, node), node});
        }
        std::vector<int> seq = gp.vertex_sequence();
        if (!seen.insert(seq).second) continue;
        for (size_t i = 1; i + 1 < sp.size(); ++i) gp.sides.push_back(g.state_sector[sp[i]]);
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            int c = find_cut(spec, seq[i], seq[i + 1]);
            if (c >= 0) gp.contains_cuts.push_back(c);
        }
        auto s = gp.arclengths();
        gp.length = s.back();
        if (!sector_consistent(gp, spec, cx, tol)) continue;
        out.geodesics.push_back(std::move(gp));
    }
    double best = std::numeric_limits<double>::infinity();
    for (auto& gp : out.geodesics) best = std::min(best, gp.length);
    for (auto& gp : out.geodesics) {
        gp.near_tie = gp.length - best > 1e-10;
        out.near_tie = out.near_tie || gp.near_tie;
    }
    if (out.geodesics.empty()) throw NoPathError("no sector-consistent shortest path");
    return out;
}

// ---------------------------------------------------------------------------
// brute force oracle

namespace {

struct OracleContext {
    const KirigamiSpec& spec;
    const Tolerance& tol;
    std::vector<std::vector<double>> cut_angles;  // per vertex
};

// Plain segment test: no transversal crossing, collinear overlaps only with
// cuts lying entirely inside the segment. Appends the vertices found strictly
// inside the segment, ordered from a to b.
bool oracle_segment(const OracleContext& c, Point2 a, Point2 b, std::vector<int>& inner) {
    Segment s{a, b};
    for (auto [u, v] : c.spec.edges) {
        Segment cut{c.spec.vertices[u], c.spec.vertices[v]};
        Intersection x = seg_intersect(s, cut, c.tol);
        if (x.kind == Intersection::Kind::Empty) continue;
        if (x.kind == Intersection::Kind::Point) {
            if (!x.at_endpoint) return false;
            continue;
        }
        if (!on_segment(cut.a, s, c.tol) || !on_segment(cut.b, s, c.tol)) return false;
    }
    std::vector<std::pair<double, int>> found;
    for (size_t v = 0; v < c.spec.vertices.size(); ++v)
        if (in_open_segment(c.spec.vertices[v], s, c.tol)) found.push_back({dist(a, c.spec.vertices[v]), int(v)});
    std::sort(found.begin(), found.end());
    for (auto& f : found) inner.push_back(f.second);
    return true;
}

bool region_has_cut(const std::vector<double>& angles, Point2 from, Point2 to) {
    double width = ccw_sweep(from, to);
    double a0 = angle_of(from);
    for (double ang : angles) {
        double off = ang - a0;
        if (off < 0) off += kTwoPi;
        if (off >= kTwoPi) off -= kTwoPi;
        if (off > 1e-12 && off < width - 1e-12) return true;
    }
    return false;
}

// Each vertex waypoint may be passed on the left or right of travel; consecutive
// waypoints joined by a cut must use the same side.
bool oracle_sides(const OracleContext& c, const std::vector<int>& seq) {
    size_t n = seq.size();
    auto pt = [&](int id) { return node_point(c.spec, id); };
    std::vector<int> allowed(n, 3);
    for (size_t i = 1; i + 1 < n; ++i) {
        int v = seq[i];
        if (v < 0) continue;
        Point2 w = pt(v);
        Point2 din = pt(seq[i - 1]) - w, dout = pt(seq[i + 1]) - w;
        int a = 0;
        if (!region_has_cut(c.cut_angles[v], dout, din)) a |= 1;
        if (!region_has_cut(c.cut_angles[v], din, dout)) a |= 2;
        if (a == 0) return false;
        allowed[i] = a;
    }
    int run = allowed[0];
    for (size_t i = 0; i + 1 < n; ++i) {
        if (find_cut(c.spec, seq[i], seq[i + 1]) >= 0) {
            run &= allowed[i + 1];
            if (run == 0) return false;
        } else {
            run = allowed[i + 1];
        }
    }
    return true;
}

}  // namespace

double brute_force_distance(const KirigamiSpec& spec, int max_interior, const Tolerance& tol, double budget) {
    OracleContext c{spec, tol, {}};
    c.cut_angles.assign(spec.vertices.size(), {});
    for (auto [u, v] : spec.edges) {
        c.cut_angles[u].push_back(angle_of(spec.vertices[v] - spec.vertices[u]));
        c.cut_angles[v].push_back(angle_of(spec.vertices[u] - spec.vertices[v]));
    }
    // a turn may not sweep across the outside of the domain either
    for (size_t v = 0; v < spec.vertices.size(); ++v) {
        const auto& d = spec.domain;
        for (size_t i = 0; i < d.size(); ++i) {
            Point2 a = d[i], b = d[(i + 1) % d.size()];
            if (point_segment_distance(spec.vertices[v], {a, b}) > tol.eps) continue;
            if (dist(a, spec.vertices[v]) > tol.eps) c.cut_angles[v].push_back(angle_of(a - spec.vertices[v]));
            if (dist(b, spec.vertices[v]) > tol.eps) c.cut_angles[v].push_back(angle_of(b - spec.vertices[v]));
        }
    }
    const int nv = int(spec.vertices.size());
    double best = std::numeric_limits<double>::infinity();
    double expanded = 0;
    std::vector<int> chosen;
    std::vector<char> used(nv, 0);
    // expanded[k]: full node sequence including vertices passed in straight runs
    std::vector<int> full{kTerminalP};

    std::function<void(double)> rec = [&](double len) {
        if (++expanded > budget) throw BudgetExceededError("brute force enumeration budget exceeded");
        Point2 last = node_point(spec, full.back());
        // close the path at q
        {
            double total = len + dist(last, spec.q);
            if (total < best) {
                std::vector<int> inner;
                if (oracle_segment(c, last, spec.q, inner)) {
                    std::vector<int> seq = full;
                    seq.insert(seq.end(), inner.begin(), inner.end());
                    seq.push_back(kTerminalQ);
                    if (oracle_sides(c, seq)) best = total;
                }
            }
        }
        if (int(chosen.size()) >= max_interior) return;
        for (int v = 0; v < nv; ++v) {
            if (used[v]) continue;
            Point2 pv = spec.vertices[v];
            double nl = len + dist(last, pv);
            if (nl + dist(pv, spec.q) >= best) continue;
            std::vector<int> inner;
            if (!oracle_segment(c, last, pv, inner)) continue;
            size_t mark = full.size();
            full.insert(full.end(), inner.begin(), inner.end());
            full.push_back(v);
            used[v] = 1;
            chosen.push_back(v);
            rec(nl);
            chosen.pop_back();
            used[v] = 0;
            full.resize(mark);
        }
    };
    rec(0.0);
    return best;
}

// ---------------------------------------------------------------------------
// shortening

bool segment_clear(Point2 a, Point2 b, const KirigamiSpec& spec, const SlitComplex& cx, const Tolerance& tol) {
    Segment s{a, b};
    auto is_vertex = [&](Point2 x) {
        for (auto& v : spec.vertices)
            if (dist(v, x) <= tol.eps) return true;
        return false;
    };
    for (auto [u, v] : spec.edges) {
        Segment cut{spec.vertices[u], spec.vertices[v]};
        Intersection x = seg_intersect(s, cut, tol);
        if (x.kind == Intersection::Kind::Empty) continue;
        if (x.kind == Intersection::Kind::Overlap) return false;
        if (!x.at_endpoint) return false;
        if (!is_vertex(x.point)) return false;  // a or b sits on a cut interior
    }
    for (size_t v = 0; v < spec.vertices.size(); ++v) {
        Point2 w = spec.vertices[v];
        if (!in_open_segment(w, s, tol)) continue;
        Point2 din = a - w, dout = b - w;
        if (sweep_has_cut(cx, int(v), dout, din) && sweep_has_cut(cx, int(v), din, dout)) return false;
    }
    return true;
}

namespace {

double polyline_length(const std::vector<Point2>& pts) {
    double l = 0;
    for (size_t i = 1; i < pts.size(); ++i) l += dist(pts[i - 1], pts[i]);
    return l;
}

int vertex_at(const KirigamiSpec& spec, Point2 x, const Tolerance& tol) {
    for (size_t v = 0; v < spec.vertices.size(); ++v)
        if (dist(spec.vertices[v], x) <= tol.eps) return int(v);
    return -1;
}

// Upper hull (towards `apex`) of A, C and the given points, from A to C.
std::vector<Point2> taut_chain(Point2 A, Point2 C, Point2 apex, std::vector<Point2> pts) {
    Point2 u = normalized(C - A);
    Point2 n = perp(u);
    if (dot(apex - A, n) < 0) n = -n;
    std::vector<std::pair<double, double>> uv;
    std::vector<Point2> all{A, C};
    all.insert(all.end(), pts.begin(), pts.end());
    std::sort(all.begin(), all.end(), [&](Point2 p1, Point2 p2) { return dot(p1 - A, u) < dot(p2 - A, u); });
    std::vector<Point2> hull;
    for (Point2 p : all) {
        while (hull.size() >= 2) {
            Point2 h1 = hull[hull.size() - 2], h2 = hull.back();
            double c = cross(h2 - h1, p - h1);
            // keep only right turns in the (u, n) frame: the chain bulges towards n
            double cn = c * cross(u, n);
            if (cn >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    return hull;
}

}  // namespace

ShortenResult shorten(const std::vector<Point2>& tau, const KirigamiSpec& spec, const Tolerance& tol) {
    if (tau.size() < 2) throw KirigamiError("shorten: polyline needs at least two points");
    if (dist(tau.front(), spec.p) > tol.eps || dist(tau.back(), spec.q) > tol.eps)
        throw KirigamiError("shorten: polyline must run from p to q");
    SlitComplex cx = build_slit_complex(spec, tol);
    for (size_t i = 1; i < tau.size(); ++i)
        if (!segment_clear(tau[i - 1], tau[i], spec, cx, tol))
            throw KirigamiError("shorten: input touches a cut interior");

    ShortenResult res;
    double D = geodesic_distance(spec, tol);
    double min_sep = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < spec.vertices.size(); ++i)
        for (size_t j = i + 1; j < spec.vertices.size(); ++j) min_sep = std::min(min_sep, dist(spec.vertices[i], spec.vertices[j]));
    res.round_bound = std::isfinite(min_sep) ? int(std::ceil((D + 1.0) / min_sep)) : 1;

    std::vector<Point2> pts = tau;
    res.lengths.push_back(polyline_length(pts));
    for (int round = 0; round < res.round_bound + 8; ++round) {
        // replace portions by segments, farthest first
        std::vector<Point2> cut{pts[0]};
        size_t i = 0;
        while (i + 1 < pts.size()) {
            size_t j = pts.size() - 1;
            while (j > i + 1 && !segment_clear(pts[i], pts[j], spec, cx, tol)) --j;
            cut.push_back(pts[j]);
            i = j;
        }
        // bends away from V are pulled onto the obstructing vertices
        std::vector<Point2> next{cut[0]};
        for (size_t k = 1; k + 1 < cut.size(); ++k) {
            Point2 A = next.back(), x = cut[k], C = cut[k + 1];
            if (vertex_at(spec, x, tol) >= 0) {
                next.push_back(x);
                continue;
            }
            std::vector<Point2> inside;
            std::vector<Point2> tri{A, x, C};
            if (signed_area(tri) < 0) std::swap(tri[0], tri[2]);
            for (auto& v : spec.vertices) {
                if (dist(v, A) <= tol.eps || dist(v, C) <= tol.eps) continue;
                if (polygon_contains_unchecked(tri, v, tol) != Containment::Outside) inside.push_back(v);
            }
            std::vector<Point2> chain = taut_chain(A, C, x, inside);
            bool ok = true;
            for (size_t m = 1; m < chain.size() && ok; ++m) ok = segment_clear(chain[m - 1], chain[m], spec, cx, tol);
            if (ok && chain.size() >= 2) {
                for (size_t m = 1; m + 1 < chain.size(); ++m) next.push_back(chain[m]);
            } else {
                next.push_back(x);
            }
        }
        next.push_back(cut.back());
        double before = polyline_length(pts), after = polyline_length(next);
        bool same = next.size() == pts.size();
        for (size_t k = 0; same && k < next.size(); ++k) same = dist(next[k], pts[k]) <= tol.eps;
        if (same || after > before + tol.eps) break;
        pts = std::move(next);
        res.rounds++;
        res.lengths.push_back(after);
    }

    // waypoints, with vertices passed in straight runs made explicit
    GeodesicPolygonal gp;
    gp.waypoints.push_back({spec.p, kTerminalP});
    for (size_t k = 1; k < pts.size(); ++k) {
        Segment s{pts[k - 1], pts[k]};
        std::vector<std::pair<double, int>> inner;
        for (size_t v = 0; v < spec.vertices.size(); ++v)
            if (in_open_segment(spec.vertices[v], s, tol)) inner.push_back({dist(s.a, spec.vertices[v]), int(v)});
        std::sort(inner.begin(), inner.end());
        for (auto& [d, v] : inner) gp.waypoints.push_back({spec.vertices[v], v});
        if (k + 1 == pts.size()) {
            gp.waypoints.push_back({spec.q, kTerminalQ});
        } else {
            int v = vertex_at(spec, pts[k], tol);
            gp.waypoints.push_back({v >= 0 ? spec.vertices[v] : pts[k], v >= 0 ? v : -3});
        }
    }
    gp.length = gp.arclengths().back();
    for (size_t k = 0; k + 1 < gp.waypoints.size(); ++k) {
        int c = find_cut(spec, gp.waypoints[k].vertex, gp.waypoints[k + 1].vertex);
        if (c >= 0) gp.contains_cuts.push_back(c);
    }
    res.path = std::move(gp);
    return res;
}

}  // namespace kirigami
