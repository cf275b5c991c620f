#include "kirigami/sealing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kirigami {

namespace {

constexpr double kSealEquality = 1e-10;

double cut_length(const KirigamiSpec& spec, int cut) {
    auto [a, b] = spec.edges[cut];
    return dist(spec.vertices[a], spec.vertices[b]);
}

void check_cut(const KirigamiSpec& spec, int cut, int endpoint) {
    if (cut < 0 || cut >= int(spec.edges.size())) throw KirigamiError("cut index out of range");
    if (endpoint != 0 && endpoint != 1) throw KirigamiError("endpoint must be 0 or 1");
}

}  // namespace

KirigamiSpec shrink_cut(const KirigamiSpec& spec, int cut, int endpoint, double t) {
    check_cut(spec, cut, endpoint);
    double len = cut_length(spec, cut);
    if (!(t >= 0.0) || t > len * (1.0 + 1e-12)) throw KirigamiError("shrink amount out of range");
    if (t == 0.0) return spec;
    KirigamiSpec out = spec;
    if (t >= len) {
        out.edges.erase(out.edges.begin() + cut);
        return drop_isolated_vertices(out, nullptr);
    }
    auto [a, b] = spec.edges[cut];
    int moving = endpoint == 0 ? a : b;
    int fixed = endpoint == 0 ? b : a;
    Point2 from = spec.vertices[moving], to = spec.vertices[fixed];
    out.vertices.push_back(from + (t / len) * (to - from));
    int nv = int(out.vertices.size()) - 1;
    if (endpoint == 0) out.edges[cut].first = nv;
    else out.edges[cut].second = nv;
    return drop_isolated_vertices(out, nullptr);
}

double dist_with_shrunk_cut(const KirigamiSpec& spec, int cut, int endpoint, double t, const Tolerance& tol) {
    return geodesic_distance(shrink_cut(spec, cut, endpoint, t), tol);
}

double max_seal(const KirigamiSpec& spec, int cut, int endpoint, const Tolerance& tol) {
    check_cut(spec, cut, endpoint);
    const double len = cut_length(spec, cut);
    const double d0 = geodesic_distance(spec, tol);
    auto same = [&](double t) { return dist_with_shrunk_cut(spec, cut, endpoint, t, tol) >= d0 - kSealEquality; };

    // t values where the moving end becomes collinear with two nodes
    auto [a, b] = spec.edges[cut];
    int moving = endpoint == 0 ? a : b;
    Point2 x0 = spec.vertices[moving];
    Point2 dir = normalized(spec.vertices[endpoint == 0 ? b : a] - x0);
    std::vector<Point2> nodes;
    for (size_t v = 0; v < spec.vertices.size(); ++v)
        if (int(v) != moving) nodes.push_back(spec.vertices[v]);
    nodes.push_back(spec.p);
    nodes.push_back(spec.q);
    std::vector<double> events{0.0, len};
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j) {
            Point2 e = nodes[j] - nodes[i];
            double den = cross(e, dir);
            if (std::abs(den) < 1e-300) continue;
            double t = cross(e, nodes[i] - x0) / den;
            if (t > 0.0 && t < len) events.push_back(t);
        }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [&](double u, double v) { return v - u <= 1e-12 * len; }),
                 events.end());

    if (same(len)) return len;
    // distance is non-increasing in t, so the accepted set is [0, t*]
    size_t lo = 0, hi = events.size() - 1;  // same(events[lo]) holds, same(events[hi]) fails
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (same(events[mid])) lo = mid;
        else hi = mid;
    }
    double tl = events[lo], th = events[hi];
    double base = tl;
    while (th - tl > 1e-9 * len) {
        double mid = 0.5 * (tl + th);
        if (same(mid)) tl = mid;
        else th = mid;
    }
    return tl - base <= 1e-7 * len ? base : tl;
}

SealTrace seal_all(const KirigamiSpec& spec, const Tolerance& tol) {
    require_valid(spec, tol);
    SealTrace trace;
    KirigamiSpec work = spec;
    std::vector<int> ids(spec.edges.size());
    for (size_t i = 0; i < ids.size(); ++i) ids[i] = int(i);

    for (int c = 0; c < int(spec.edges.size()); ++c) {
        for (int endpoint = 0; endpoint < 2; ++endpoint) {
            auto it = std::find(ids.begin(), ids.end(), c);
            if (it == ids.end()) break;
            int idx = int(it - ids.begin());
            SealStep step;
            step.cut = c;
            step.endpoint = endpoint;
            step.before = geodesic_distance(work, tol);
            double len = cut_length(work, idx);
            step.t = max_seal(work, idx, endpoint, tol);
            if (step.t >= len) {
                step.removed = true;
                work = shrink_cut(work, idx, endpoint, len);
                ids.erase(ids.begin() + idx);
                trace.removed_cuts.push_back(c);
            } else if (step.t > 0.0) {
                work = shrink_cut(work, idx, endpoint, step.t);
            }
            step.after = geodesic_distance(work, tol);
            trace.steps.push_back(step);
        }
    }
    trace.final_spec = drop_isolated_vertices(work, nullptr);
    trace.final_to_original = ids;
    return trace;
}

// Distance differences below this are rounding; a probe on a short cut can
// decrease the distance by much less than eps_len.
constexpr double kProbeNoise = 1e-12;

MinimalityReport verify_minimal(const KirigamiSpec& spec, double probe_fraction, const Tolerance& tol) {
    MinimalityReport rep;
    double d0 = geodesic_distance(spec, tol);
    for (int e = 0; e < int(spec.edges.size()); ++e) {
        double len = cut_length(spec, e);
        for (int endpoint = 0; endpoint < 2; ++endpoint) {
            double d = dist_with_shrunk_cut(spec, e, endpoint, probe_fraction * len, tol);
            if (!(d < d0 - kProbeNoise)) {
                rep.probes_decrease = false;
                rep.failures.push_back("probe shrink of cut " + std::to_string(e) + " at endpoint " +
                                       std::to_string(endpoint) + " does not decrease the distance");
            }
        }
    }
    Forest f = components(spec);
    if (f.has_cycle()) {
        rep.forest = false;
        rep.failures.push_back("cut graph contains a cycle");
    }
    std::set<int> on_geodesic;
    try {
        GeodesicSet gs = all_geodesics(spec, tol);
        for (auto& g : gs.geodesics)
            for (int v : g.vertex_sequence())
                if (v >= 0) on_geodesic.insert(v);
    } catch (const KirigamiError& e) {
        rep.failures.push_back(std::string("geodesic enumeration failed: ") + e.what());
    }
    for (auto& t : f.trees)
        for (int leaf : t.leaves)
            if (!on_geodesic.count(leaf)) {
                rep.leaves_on_geodesics = false;
                rep.failures.push_back("leaf vertex " + std::to_string(leaf) + " lies on no geodesic");
            }
    return rep;
}

}  // namespace kirigami
