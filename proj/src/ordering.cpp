#include "kirigami/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace kirigami {

const char* piece_kind_name(PieceKind k) {
    switch (k) {
        case PieceKind::First: return "first";
        case PieceKind::Last: return "last";
        case PieceKind::Middle: return "middle";
        case PieceKind::Pocket: return "pocket";
    }
    return "?";
}

namespace {

std::vector<Point2> points_of(const std::vector<LoopPoint>& loop) {
    std::vector<Point2> out;
    out.reserve(loop.size());
    for (auto& lp : loop) out.push_back(lp.pt);
    return out;
}

double perimeter(const std::vector<Point2>& poly) {
    double s = 0;
    for (size_t i = 0; i < poly.size(); ++i) s += dist(poly[i], poly[(i + 1) % poly.size()]);
    return s;
}

}  // namespace

std::vector<std::vector<LoopPoint>> simple_subloops(std::vector<LoopPoint> loop, const Tolerance& tol) {
    // drop repeated consecutive points
    std::vector<LoopPoint> clean;
    for (auto& lp : loop)
        if (clean.empty() || dist(clean.back().pt, lp.pt) > tol.eps) clean.push_back(lp);
    while (clean.size() > 1 && dist(clean.back().pt, clean.front().pt) <= tol.eps) clean.pop_back();
    loop = std::move(clean);

    // T-junctions
    std::vector<Point2> all = points_of(loop);
    std::vector<LoopPoint> split;
    for (size_t i = 0; i < loop.size(); ++i) {
        Segment e{loop[i].pt, loop[(i + 1) % loop.size()].pt};
        split.push_back(loop[i]);
        std::vector<std::pair<double, Point2>> inner;
        for (auto& x : all)
            if (in_open_segment(x, e, tol)) inner.push_back({dist(e.a, x), x});
        std::sort(inner.begin(), inner.end(), [](auto& u, auto& v) { return u.first < v.first; });
        for (auto& [d, x] : inner)
            if (dist(split.back().pt, x) > tol.eps) split.push_back({x, loop[i].label});
    }

    // cut out a loop whenever a point repeats
    std::vector<std::vector<LoopPoint>> raw;
    std::vector<LoopPoint> stack;
    for (auto& lp : split) {
        int found = -1;
        for (int j = int(stack.size()) - 1; j >= 0; --j)
            if (dist(stack[j].pt, lp.pt) <= tol.eps) {
                found = j;
                break;
            }
        if (found < 0) {
            stack.push_back(lp);
            continue;
        }
        raw.emplace_back(stack.begin() + found, stack.end());
        stack.resize(found + 1);
        stack.back().label = lp.label;
    }
    raw.push_back(stack);

    std::vector<std::vector<LoopPoint>> out;
    for (auto& l : raw) {
        if (l.size() < 3) continue;
        auto pts = points_of(l);
        if (std::abs(signed_area(pts)) <= tol.eps * perimeter(pts)) continue;
        out.push_back(std::move(l));
    }
    return out;
}

namespace {

std::vector<LoopPoint> lens_loop(const GeodesicPolygonal& lower, const GeodesicPolygonal& upper) {
    std::vector<LoopPoint> loop;
    for (size_t i = 0; i + 1 < lower.waypoints.size(); ++i) loop.push_back({lower.waypoints[i].pt, EdgeLabel::Lower});
    for (size_t i = upper.waypoints.size() - 1; i >= 1; --i) loop.push_back({upper.waypoints[i].pt, EdgeLabel::Upper});
    return loop;
}

}  // namespace

bool precedes(const GeodesicPolygonal& lower, const GeodesicPolygonal& upper, const Tolerance& tol) {
    for (auto& l : simple_subloops(lens_loop(lower, upper), tol))
        if (signed_area(points_of(l)) < 0) return false;
    return true;
}

GeodesicChain build_chain(const GeodesicSet& gs, const Tolerance& tol) {
    const auto& g = gs.geodesics;
    size_t n = g.size();
    if (n == 0) throw OrderError("empty geodesic set");
    std::vector<std::vector<char>> before(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j) before[i][j] = precedes(g[i], g[j], tol);
    std::vector<int> rank(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (before[i][j] == before[j][i])
                throw OrderError("geodesics " + std::to_string(i) + " and " + std::to_string(j) + " are not comparable");
            if (before[j][i]) rank[i]++;
        }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return rank[a] < rank[b]; });
    for (size_t k = 0; k < n; ++k)
        if (rank[order[k]] != int(k)) throw OrderError("order on geodesics is not transitive");
    GeodesicChain chain;
    for (int i : order) chain.geodesics.push_back(g[i]);
    for (size_t k = 0; k + 1 < n; ++k) {
        double a = 0;
        for (auto& l : simple_subloops(lens_loop(chain.geodesics[k], chain.geodesics[k + 1]), tol))
            a += signed_area(points_of(l));
        chain.enclosed_area.push_back(a);
    }
    return chain;
}

double arclength_at(const GeodesicPolygonal& g, Point2 x, const Tolerance& tol) {
    double s = 0;
    for (size_t i = 0; i + 1 < g.waypoints.size(); ++i) {
        Segment e{g.waypoints[i].pt, g.waypoints[i + 1].pt};
        if (on_segment(x, e, tol)) return s + dist(e.a, x);
        s += dist(e.a, e.b);
    }
    return std::nan("");
}

namespace {

bool on_polyline(const GeodesicPolygonal& g, Point2 x, const Tolerance& tol) {
    return !std::isnan(arclength_at(g, x, tol));
}

struct Run {
    EdgeLabel label;
    std::vector<Point2> pts;  // from run start to run end, inclusive
};

// Maximal runs of equal labels; Boundary is folded into Tree (both are free edges).
std::vector<Run> label_runs(const std::vector<LoopPoint>& loop) {
    auto norm_label = [](EdgeLabel l) { return l == EdgeLabel::Boundary ? EdgeLabel::Tree : l; };
    size_t n = loop.size();
    size_t start = 0;
    for (size_t i = 0; i < n; ++i)
        if (norm_label(loop[i].label) != norm_label(loop[(i + n - 1) % n].label)) {
            start = i;
            break;
        }
    std::vector<Run> runs;
    for (size_t k = 0; k < n; ++k) {
        size_t i = (start + k) % n;
        EdgeLabel l = norm_label(loop[i].label);
        if (runs.empty() || runs.back().label != l) runs.push_back({l, {loop[i].pt}});
        runs.back().pts.push_back(loop[(i + 1) % n].pt);
    }
    return runs;
}

std::vector<double> arclengths_of(const GeodesicPolygonal& g, const std::vector<Point2>& pts, const Tolerance& tol) {
    std::vector<double> s;
    for (auto& x : pts) {
        double v = arclength_at(g, x, tol);
        if (std::isnan(v)) throw DecompositionError("piece boundary point is not on its geodesic");
        s.push_back(v);
    }
    return s;
}

Piece classify_face(const std::vector<LoopPoint>& face, const GeodesicPolygonal& lower, const GeodesicPolygonal& upper,
                    const Tolerance& tol) {
    Piece pc;
    pc.polygon = points_of(face);
    std::vector<Run> runs = label_runs(face);
    // rotate to start with a geodesic run, preferring the lower one
    size_t r0 = runs.size();
    for (size_t i = 0; i < runs.size() && r0 == runs.size(); ++i)
        if (runs[i].label == EdgeLabel::Lower) r0 = i;
    for (size_t i = 0; i < runs.size() && r0 == runs.size(); ++i)
        if (runs[i].label == EdgeLabel::Upper) r0 = i;
    if (r0 == runs.size()) throw DecompositionError("piece without geodesic boundary");
    std::rotate(runs.begin(), runs.begin() + r0, runs.end());
    std::string pat;
    for (auto& r : runs) pat += r.label == EdgeLabel::Lower ? 'B' : r.label == EdgeLabel::Upper ? 'T' : 'C';
    auto rev = [](std::vector<Point2> v) {
        std::reverse(v.begin(), v.end());
        return v;
    };
    if (pat == "BC" || pat == "TC") {
        pc.kind = PieceKind::Pocket;
        if (pat == "BC") {
            pc.chain = runs[0].pts;
            pc.chain_s = arclengths_of(lower, pc.chain, tol);
        } else {
            pc.chain = rev(runs[0].pts);
            pc.chain_s = arclengths_of(upper, pc.chain, tol);
        }
        return pc;
    }
    if (pat == "BCT") {
        pc.kind = PieceKind::First;
        pc.bottom = runs[0].pts;
        pc.right_path = runs[1].pts;
        pc.top = rev(runs[2].pts);
    } else if (pat == "BTC") {
        pc.kind = PieceKind::Last;
        pc.bottom = runs[0].pts;
        pc.top = rev(runs[1].pts);
        pc.left_path = rev(runs[2].pts);
    } else if (pat == "BCTC") {
        pc.kind = PieceKind::Middle;
        pc.bottom = runs[0].pts;
        pc.right_path = runs[1].pts;
        pc.top = rev(runs[2].pts);
        pc.left_path = rev(runs[3].pts);
    } else if (pat == "BT") {
        throw DecompositionError("region between consecutive geodesics contains no tree");
    } else {
        throw DecompositionError("unsupported piece boundary pattern " + pat);
    }
    pc.bottom_s = arclengths_of(lower, pc.bottom, tol);
    pc.top_s = arclengths_of(upper, pc.top, tol);
    pc.target = pc.top_s.front() - pc.bottom_s.front();
    return pc;
}

// Faces of the arrangement formed by a region boundary and the tree edges inside it.
std::vector<std::vector<LoopPoint>> arrangement_faces(const std::vector<LoopPoint>& boundary,
                                                     const std::vector<Segment>& tree_edges, const Tolerance& tol) {
    std::vector<Point2> nodes;
    auto node_of = [&](Point2 x) {
        for (size_t i = 0; i < nodes.size(); ++i)
            if (dist(nodes[i], x) <= tol.eps) return int(i);
        nodes.push_back(x);
        return int(nodes.size()) - 1;
    };
    struct HalfEdge {
        int from, to;
        EdgeLabel label;
        bool inner;  // false for the outside copy of a boundary edge
    };
    std::vector<HalfEdge> he;
    size_t n = boundary.size();
    for (size_t i = 0; i < n; ++i) {
        int a = node_of(boundary[i].pt), b = node_of(boundary[(i + 1) % n].pt);
        he.push_back({a, b, boundary[i].label, true});
        he.push_back({b, a, boundary[i].label, false});
    }
    for (auto& s : tree_edges) {
        int a = node_of(s.a), b = node_of(s.b);
        he.push_back({a, b, EdgeLabel::Tree, true});
        he.push_back({b, a, EdgeLabel::Tree, true});
    }
    // outgoing half-edges around each node, counterclockwise
    std::vector<std::vector<int>> out(nodes.size());
    for (size_t h = 0; h < he.size(); ++h) out[he[h].from].push_back(int(h));
    auto ang = [&](int h) { return angle_of(nodes[he[h].to] - nodes[he[h].from]); };
    for (auto& o : out) std::sort(o.begin(), o.end(), [&](int x, int y) { return ang(x) < ang(y); });
    auto twin = [](int h) { return h ^ 1; };
    auto next = [&](int h) {
        int t = twin(h);
        const auto& o = out[he[h].to];
        size_t k = std::find(o.begin(), o.end(), t) - o.begin();
        return o[(k + o.size() - 1) % o.size()];
    };
    std::vector<char> seen(he.size(), 0);
    std::vector<std::vector<LoopPoint>> faces;
    for (size_t h0 = 0; h0 < he.size(); ++h0) {
        if (seen[h0] || !he[h0].inner) continue;
        std::vector<LoopPoint> face;
        bool outer = false;
        int h = int(h0);
        while (!seen[h]) {
            seen[h] = 1;
            if (!he[h].inner) outer = true;
            face.push_back({nodes[he[h].from], he[h].label});
            h = next(h);
        }
        if (outer) continue;
        for (auto& part : simple_subloops(face, tol))
            if (signed_area(points_of(part)) > 0) faces.push_back(std::move(part));
    }
    return faces;
}

// Parameter of a boundary point along the counterclockwise domain perimeter.
double perimeter_param(const std::vector<Point2>& dom, Point2 x, const Tolerance& tol) {
    double s = 0;
    for (size_t i = 0; i < dom.size(); ++i) {
        Segment e{dom[i], dom[(i + 1) % dom.size()]};
        if (on_segment(x, e, tol)) return s + dist(e.a, x);
        s += dist(e.a, e.b);
    }
    return std::nan("");
}

// Domain boundary from a to b, counterclockwise, endpoints included.
std::vector<Point2> boundary_arc(const std::vector<Point2>& dom, Point2 a, Point2 b, const Tolerance& tol) {
    double per = perimeter(dom);
    double sa = perimeter_param(dom, a, tol), sb = perimeter_param(dom, b, tol);
    double span = sb - sa;
    if (span <= 0) span += per;
    std::vector<std::pair<double, Point2>> mids;
    double s = 0;
    for (size_t i = 0; i < dom.size(); ++i) {
        double off = s - sa;
        if (off < 0) off += per;
        if (off > tol.eps && off < span - tol.eps) mids.push_back({off, dom[i]});
        s += dist(dom[i], dom[(i + 1) % dom.size()]);
    }
    std::sort(mids.begin(), mids.end(), [](auto& u, auto& v) { return u.first < v.first; });
    std::vector<Point2> arc{a};
    for (auto& m : mids) arc.push_back(m.second);
    arc.push_back(b);
    return arc;
}

// Relabels as Tree the edges of `label` that run along a cut whose side facing
// the loop interior is not the side the geodesic passes on. The interior lies
// on the left of g's travel when interior_left, on the right otherwise.
void free_far_side_cuts(std::vector<LoopPoint>& loop, EdgeLabel label, const GeodesicPolygonal& g,
                        const std::vector<int>& sides, bool interior_left, const Tolerance& tol) {
    const auto& w = g.waypoints;
    int far = interior_left ? 2 : 1;  // curves pass only with the cut between them and the interior
    size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        if (loop[i].label != label) continue;
        Point2 a = loop[i].pt, b = loop[(i + 1) % n].pt;
        for (size_t k = 0; k + 1 < w.size() && k < sides.size(); ++k) {
            Segment seg{w[k].pt, w[k + 1].pt};
            if (on_segment(a, seg, tol) && on_segment(b, seg, tol)) {
                if (sides[k] == far) loop[i].label = EdgeLabel::Tree;
                break;
            }
        }
    }
}

}  // namespace

RegionDecomposition decompose(const GeodesicChain& chain, const KirigamiSpec& spec, const Tolerance& tol) {
    RegionDecomposition dec;
    const auto& gs = chain.geodesics;
    if (gs.empty()) throw DecompositionError("empty chain");
    dec.length = gs.front().length;
    Forest forest = components(spec);
    if (forest.has_cycle()) throw DecompositionError("cut graph contains a cycle; seal first");
    SlitComplex cx = build_slit_complex(spec, tol);
    std::vector<std::vector<int>> sides;
    for (auto& g : gs) sides.push_back(cut_edge_sides(g, spec, cx, tol));

    struct SubLoop {
        int region, part;
        std::vector<LoopPoint> loop;
    };
    std::vector<SubLoop> subs;
    for (size_t r = 0; r + 1 < gs.size(); ++r) {
        Region reg;
        reg.lower = int(r);
        reg.upper = int(r + 1);
        for (auto& l : simple_subloops(lens_loop(gs[r], gs[r + 1]), tol)) {
            auto pts = points_of(l);
            if (signed_area(pts) < 0) throw OrderError("chain members are not ordered");
            // rotate to start at the corner where the upper run ends and the lower run begins
            size_t n = l.size(), start = n, ends = 0;
            for (size_t i = 0; i < n; ++i) {
                EdgeLabel prev = l[(i + n - 1) % n].label;
                if (l[i].label == EdgeLabel::Lower && prev == EdgeLabel::Upper) {
                    start = i;
                    ends++;
                }
            }
            if (ends != 1) throw DecompositionError("region between consecutive geodesics is not a lens");
            std::rotate(l.begin(), l.begin() + start, l.end());
            Subregion sr;
            sr.polygon = points_of(l);
            sr.p1 = l.front().pt;
            for (size_t i = 0; i < n; ++i)
                if (l[i].label == EdgeLabel::Upper && l[(i + n - 1) % n].label == EdgeLabel::Lower) sr.q1 = l[i].pt;
            free_far_side_cuts(l, EdgeLabel::Lower, gs[r], sides[r], true, tol);
            free_far_side_cuts(l, EdgeLabel::Upper, gs[r + 1], sides[r + 1], false, tol);
            subs.push_back({int(r), int(reg.parts.size()), l});
            reg.parts.push_back(sr);
        }
        dec.regions.push_back(reg);
    }

    // assign tree edges
    const int ne = int(spec.edges.size());
    std::vector<int> edge_sub(ne, -1);  // index into subs, -1 exterior, -2 on a geodesic
    for (int e = 0; e < ne; ++e) {
        Point2 a = spec.vertices[spec.edges[e].first], b = spec.vertices[spec.edges[e].second];
        Point2 m = 0.5 * (a + b);
        for (size_t k = 0; k < subs.size() && edge_sub[e] == -1; ++k)
            if (polygon_contains_unchecked(dec.regions[subs[k].region].parts[subs[k].part].polygon, m, tol) ==
                Containment::Inside)
                edge_sub[e] = int(k);
        if (edge_sub[e] == -1)
            for (auto& g : gs)
                if (on_polyline(g, m, tol) && on_polyline(g, a, tol) && on_polyline(g, b, tol)) edge_sub[e] = -2;
    }
    std::vector<int> exterior;
    for (size_t t = 0; t < forest.trees.size(); ++t) {
        std::set<int> where;
        bool ext = false;
        for (int e : forest.trees[t].edges) {
            if (edge_sub[e] == -1) ext = true;
            if (edge_sub[e] >= 0) where.insert(edge_sub[e]);
        }
        if (ext) {
            exterior.push_back(int(t));
            continue;
        }
        if (where.size() > 1) throw DecompositionError("tree " + std::to_string(t) + " meets more than one region");
        if (where.empty()) {
            dec.boundary_trees.push_back(int(t));
            continue;
        }
        const SubLoop& sl = subs[*where.begin()];
        dec.regions[sl.region].parts[sl.part].trees.push_back(int(t));
    }
    if (!exterior.empty()) {
        std::string ids;
        for (int t : exterior) ids += (ids.empty() ? "" : ", ") + std::to_string(t);
        throw ExteriorTreeError("exterior tree obstructs folding (trees " + ids + " lie outside every region)",
                                exterior);
    }

    // order trees inside each part by their first contact along the lower geodesic
    for (auto& reg : dec.regions)
        for (auto& part : reg.parts) {
            auto key = [&](int t) {
                double best = std::numeric_limits<double>::infinity();
                for (int v : forest.trees[t].vertices) {
                    double s = arclength_at(gs[reg.lower], spec.vertices[v], tol);
                    if (!std::isnan(s)) best = std::min(best, s);
                }
                return best;
            };
            std::stable_sort(part.trees.begin(), part.trees.end(), [&](int a, int b) { return key(a) < key(b); });
        }

    // pieces of each part
    for (size_t k = 0; k < subs.size(); ++k) {
        const SubLoop& sl = subs[k];
        std::vector<int> edges;
        for (int e = 0; e < ne; ++e)
            if (edge_sub[e] == int(k)) edges.push_back(e);
        auto on_loop = [&](int v) {
            for (auto& lp : sl.loop)
                if (dist(lp.pt, spec.vertices[v]) <= tol.eps) return true;
            return false;
        };
        // drop branches that end away from the boundary
        bool changed = true;
        while (changed) {
            changed = false;
            std::map<int, int> deg;
            for (int e : edges) {
                deg[spec.edges[e].first]++;
                deg[spec.edges[e].second]++;
            }
            std::vector<int> keep;
            for (int e : edges) {
                auto [a, b] = spec.edges[e];
                bool dangling = (deg[a] == 1 && !on_loop(a)) || (deg[b] == 1 && !on_loop(b));
                if (dangling) changed = true;
                else keep.push_back(e);
            }
            edges = keep;
        }
        std::vector<Segment> segs;
        for (int e : edges) segs.push_back({spec.vertices[spec.edges[e].first], spec.vertices[spec.edges[e].second]});
        for (auto& face : arrangement_faces(sl.loop, segs, tol)) {
            Piece pc = classify_face(face, gs[sl.region], gs[sl.region + 1], tol);
            pc.region = sl.region;
            pc.subregion = sl.part;
            dec.pieces.push_back(std::move(pc));
        }
    }

    // exterior flaps
    bool p_on = polygon_contains_unchecked(spec.domain, spec.p, tol) == Containment::Boundary;
    bool q_on = polygon_contains_unchecked(spec.domain, spec.q, tol) == Containment::Boundary;
    dec.terminals_on_boundary = p_on && q_on;
    if (p_on && q_on) {
        const GeodesicPolygonal& low = gs.front();
        const GeodesicPolygonal& up = gs.back();
        std::vector<LoopPoint> lower_flap, upper_flap;
        for (auto& x : boundary_arc(spec.domain, spec.p, spec.q, tol)) lower_flap.push_back({x, EdgeLabel::Boundary});
        lower_flap.pop_back();
        for (size_t i = low.waypoints.size() - 1; i >= 1; --i) lower_flap.push_back({low.waypoints[i].pt, EdgeLabel::Upper});
        for (size_t i = 0; i + 1 < up.waypoints.size(); ++i) upper_flap.push_back({up.waypoints[i].pt, EdgeLabel::Lower});
        auto arc = boundary_arc(spec.domain, spec.q, spec.p, tol);
        for (size_t i = 0; i + 1 < arc.size(); ++i) upper_flap.push_back({arc[i], EdgeLabel::Boundary});
        free_far_side_cuts(lower_flap, EdgeLabel::Upper, low, sides.front(), false, tol);
        free_far_side_cuts(upper_flap, EdgeLabel::Lower, up, sides.back(), true, tol);
        for (int side = 0; side < 2; ++side) {
            for (auto& part : simple_subloops(side == 0 ? lower_flap : upper_flap, tol)) {
                if (signed_area(points_of(part)) <= 0) throw DecompositionError("exterior flap has wrong orientation");
                Piece pc = classify_face(part, up, low, tol);
                pc.region = -1;
                pc.subregion = side;
                dec.pieces.push_back(std::move(pc));
            }
        }
    }
    return dec;
}

}  // namespace kirigami
