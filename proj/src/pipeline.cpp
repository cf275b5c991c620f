#include "kirigami/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace kirigami {

using nlohmann::json;

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::Geodesics: return "geodesics";
        case Stage::Seal: return "seal";
        case Stage::Order: return "order";
        case Stage::Fold: return "fold";
        case Stage::Verify: return "verify";
    }
    return "?";
}

int PipelineResult::exit_code() const {
    switch (status) {
        case Status::Ok: return 0;
        case Status::Obstruction: return 2;
        case Status::Error: return 1;
    }
    return 1;
}

namespace {

Point2 point_of(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json pt(Point2 p) { return json::array({p.x, p.y}); }

json pts(const std::vector<Point2>& v) {
    json a = json::array();
    for (auto& p : v) a.push_back(pt(p));
    return a;
}

// Maps internal (normalized) geometry back to input coordinates.
struct Frame {
    Point2 center;
    double k = 1.0;
    Point2 in(Point2 x) const { return k * (x - center); }
    Point2 out(Point2 y) const { return y / k + center; }
    double len(double l) const { return l / k; }
    void map(std::vector<Point2>& v) const {
        for (auto& x : v) x = out(x);
    }
    void map(std::vector<double>& v) const {
        for (auto& s : v) s = len(s);
    }
    void map(KirigamiSpec& s) const {
        map(s.domain);
        map(s.vertices);
        s.p = out(s.p);
        s.q = out(s.q);
    }
    void map(GeodesicPolygonal& g) const {
        for (auto& w : g.waypoints) w.pt = out(w.pt);
        g.length = len(g.length);
    }
    void map(GeodesicSet& gs) const {
        gs.distance = len(gs.distance);
        for (auto& g : gs.geodesics) map(g);
    }
    void map(SealTrace& t) const {
        for (auto& s : t.steps) {
            s.t = len(s.t);
            s.before = len(s.before);
            s.after = len(s.after);
        }
        map(t.final_spec);
    }
    void map(GeodesicChain& c) const {
        for (auto& g : c.geodesics) map(g);
        for (auto& a : c.enclosed_area) a /= k * k;
    }
    void map(RegionDecomposition& d) const {
        d.length = len(d.length);
        for (auto& r : d.regions)
            for (auto& sr : r.parts) {
                map(sr.polygon);
                sr.p1 = out(sr.p1);
                sr.q1 = out(sr.q1);
            }
        for (auto& pc : d.pieces) {
            for (auto* v : {&pc.polygon, &pc.bottom, &pc.top, &pc.left_path, &pc.right_path, &pc.chain}) map(*v);
            map(pc.bottom_s);
            map(pc.top_s);
            map(pc.chain_s);
            pc.target = len(pc.target);
        }
    }
    void map(Assembly& a) const {
        for (auto& f : a.u.faces) {
            map(f.poly);
            // u(x) = u_int(k (x - c)) / k
            f.m.shift = f.m.shift / k - f.m.apply_linear(center);
        }
        for (auto& s : a.u.shared) {
            s.seg = {out(s.seg.a), out(s.seg.b)};
            s.mismatch = len(s.mismatch);
        }
        for (auto& c : a.u.creases) c.seg = {out(c.seg.a), out(c.seg.b)};
        for (auto& r : a.reports) {
            for (double* v : {&r.target, &r.achieved, &r.max_offset, &r.min_offset, &r.max_offset_built, &r.min_offset_built})
                *v = len(*v);
        }
    }
};

Frame choose_frame(const KirigamiSpec& spec) {
    double x0 = spec.domain[0].x, x1 = x0, y0 = spec.domain[0].y, y1 = y0;
    for (auto& p : spec.domain) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    double diam = std::hypot(x1 - x0, y1 - y0);
    Frame f;
    if (diam > 2.0 || diam < 0.5) {
        f.center = {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
        f.k = 2.0 / diam;
    }
    return f;
}

KirigamiSpec to_internal(const KirigamiSpec& s, const Frame& f) {
    KirigamiSpec o = s;
    for (auto& x : o.domain) x = f.in(x);
    for (auto& x : o.vertices) x = f.in(x);
    o.p = f.in(o.p);
    o.q = f.in(o.q);
    return o;
}

json geodesic_json(const GeodesicPolygonal& g) {
    json w = json::array();
    for (auto& p : g.waypoints) w.push_back({{"point", pt(p.pt)}, {"vertex", p.vertex}});
    return {{"waypoints", w},
            {"length", g.length},
            {"sides", g.sides},
            {"contains_cuts", g.contains_cuts},
            {"near_tie", g.near_tie}};
}

json geodesic_set_json(const GeodesicSet& gs) {
    json a = json::array();
    for (auto& g : gs.geodesics) a.push_back(geodesic_json(g));
    return {{"distance", gs.distance}, {"count", gs.geodesics.size()}, {"near_tie", gs.near_tie}, {"geodesics", a}};
}

json spec_json(const KirigamiSpec& s) {
    json e = json::array();
    for (auto [a, b] : s.edges) e.push_back({a, b});
    return {{"domain", pts(s.domain)}, {"vertices", pts(s.vertices)}, {"edges", e}, {"p", pt(s.p)}, {"q", pt(s.q)}};
}

json motion_json(const Motion& m) {
    return {{"linear", {m.a, m.b, m.c, m.d}}, {"shift", pt(m.shift)}};
}

const char* status_name(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Obstruction: return "obstruction";
        case Status::Error: return "error";
    }
    return "?";
}

}  // namespace

KirigamiSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("spec is not valid JSON: ") + e.what());
    }
    for (const char* key : {"domain", "vertices", "edges", "p", "q"})
        if (!j.contains(key)) throw ValidationError(std::string("spec is missing \"") + key + "\"");
    KirigamiSpec s;
    for (auto& x : j.at("domain")) s.domain.push_back(point_of(x));
    for (auto& x : j.at("vertices")) s.vertices.push_back(point_of(x));
    for (auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ValidationError("expected an edge [i, j]");
        s.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    s.p = point_of(j.at("p"));
    s.q = point_of(j.at("q"));
    return s;
}

KirigamiSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw KirigamiError("cannot read spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::string spec_to_json(const KirigamiSpec& spec) { return spec_json(spec).dump(2); }

PipelineResult run(const KirigamiSpec& spec_in, const PipelineOptions& opt) {
    PipelineResult r;
    Tolerance tol;
    tol.eps = opt.eps;
    using clock = std::chrono::steady_clock;
    std::string stage_tag = "input";
    auto t_stage = clock::now();
    auto done = [&](const char* name) {
        auto now = clock::now();
        r.timings.push_back({name, std::chrono::duration<double>(now - t_stage).count()});
        r.completed.push_back(name);
        t_stage = now;
    };
    Frame frame;
    try {
        r.input = drop_isolated_vertices(spec_in, &r.warnings);
        require_valid(r.input, tol);
        frame = choose_frame(r.input);
        r.center = frame.center;
        r.scale = frame.k;
        KirigamiSpec spec = to_internal(r.input, frame);

        stage_tag = stage_name(Stage::Geodesics);
        GeodesicSet gs = all_geodesics(spec, tol);
        r.geodesics = gs;
        frame.map(*r.geodesics);
        done("geodesics");
        if (opt.last == Stage::Geodesics) return r;

        stage_tag = stage_name(Stage::Seal);
        KirigamiSpec sealed = spec;
        GeodesicSet sgs = gs;
        if (!opt.skip_seal) {
            SealTrace tr = seal_all(spec, tol);
            sealed = tr.final_spec;
            sgs = all_geodesics(sealed, tol);
            if (std::abs(sgs.distance - gs.distance) > tol.eps_len)
                throw KirigamiError("sealing changed the distance");
            r.minimality = verify_minimal(sealed, 1e-4, tol);
            r.seal_trace = tr;
            frame.map(*r.seal_trace);
        }
        r.sealed = sealed;
        frame.map(*r.sealed);
        r.sealed_geodesics = sgs;
        frame.map(*r.sealed_geodesics);
        done("seal");
        if (opt.last == Stage::Seal) return r;

        stage_tag = stage_name(Stage::Order);
        GeodesicChain chain = build_chain(sgs, tol);
        r.chain = chain;
        frame.map(*r.chain);
        RegionDecomposition dec = decompose(chain, sealed, tol);
        r.decomposition = dec;
        frame.map(*r.decomposition);
        done("order");
        if (opt.last == Stage::Order) return r;

        stage_tag = stage_name(Stage::Fold);
        Assembly as = assemble(sealed, dec, tol);
        done("fold");
        if (opt.last == Stage::Fold) {
            r.immersion = as;
            frame.map(*r.immersion);
            return r;
        }

        stage_tag = stage_name(Stage::Verify);
        ImmersionReport rep = verify_immersion(as.u, chain.geodesics, sealed, sgs.distance);
        r.immersion = as;
        frame.map(*r.immersion);
        r.verification = rep;
        done("verify");
        if (!rep.ok()) {
            r.status = Status::Error;
            r.failed_stage = stage_tag;
            r.message = rep.failures.front();
        }
    } catch (const ExteriorTreeError& e) {
        r.status = Status::Obstruction;
        r.failed_stage = stage_tag;
        r.message = e.what();
        r.obstructing_trees = e.trees;
    } catch (const std::exception& e) {
        r.status = Status::Error;
        r.failed_stage = stage_tag;
        r.message = e.what();
    }
    return r;
}

PipelineResult run(const std::string& spec_path, const PipelineOptions& options) {
    KirigamiSpec spec;
    try {
        spec = load_spec(spec_path);
    } catch (const std::exception& e) {
        PipelineResult r;
        r.status = Status::Error;
        r.failed_stage = "input";
        r.message = e.what();
        return r;
    }
    return run(spec, options);
}

std::string to_json(const PipelineResult& r, bool with_timings) {
    json j;
    j["format"] = "kirigami-result";
    j["version"] = 1;
    j["status"] = status_name(r.status);
    j["exit_code"] = r.exit_code();
    j["completed_stages"] = r.completed;
    if (r.status != Status::Ok) {
        j["diagnostic"] = {{"stage", r.failed_stage}, {"message", r.message}};
        if (r.status == Status::Obstruction) j["diagnostic"]["trees"] = r.obstructing_trees;
    }
    j["warnings"] = r.warnings;
    j["input"] = spec_json(r.input);
    j["normalization"] = {{"center", pt(r.center)}, {"scale", r.scale}};

    json st;
    st["geodesics"] = r.geodesics ? geodesic_set_json(*r.geodesics) : json();
    if (r.sealed) {
        json s;
        s["skipped"] = !r.seal_trace.has_value();
        if (r.seal_trace) {
            json steps = json::array();
            for (auto& x : r.seal_trace->steps)
                steps.push_back({{"cut", x.cut},
                                 {"endpoint", x.endpoint},
                                 {"removed_length", x.t},
                                 {"distance_before", x.before},
                                 {"distance_after", x.after},
                                 {"removed", x.removed}});
            s["steps"] = steps;
            s["removed_cuts"] = r.seal_trace->removed_cuts;
            s["final_to_original"] = r.seal_trace->final_to_original;
        }
        if (r.minimality)
            s["minimality"] = {{"ok", r.minimality->ok()},
                               {"probes_decrease", r.minimality->probes_decrease},
                               {"forest", r.minimality->forest},
                               {"leaves_on_geodesics", r.minimality->leaves_on_geodesics},
                               {"failures", r.minimality->failures}};
        s["spec"] = spec_json(*r.sealed);
        s["geodesics"] = geodesic_set_json(*r.sealed_geodesics);
        st["seal_trace"] = s;
    } else {
        st["seal_trace"] = json();
    }
    if (r.chain) {
        json c = json::array();
        for (auto& g : r.chain->geodesics) c.push_back(g.vertex_sequence());
        st["chain"] = {{"order", c}, {"enclosed_area", r.chain->enclosed_area}};
    } else {
        st["chain"] = json();
    }
    if (r.decomposition) {
        const auto& d = *r.decomposition;
        json regions = json::array();
        for (auto& reg : d.regions) {
            json parts = json::array();
            for (auto& sr : reg.parts)
                parts.push_back({{"polygon", pts(sr.polygon)}, {"p1", pt(sr.p1)}, {"q1", pt(sr.q1)}, {"trees", sr.trees}});
            regions.push_back({{"lower", reg.lower}, {"upper", reg.upper}, {"parts", parts}});
        }
        json pieces = json::array();
        for (auto& pc : d.pieces) {
            json p = {{"kind", piece_kind_name(pc.kind)},
                      {"region", pc.region},
                      {"subregion", pc.subregion},
                      {"polygon", pts(pc.polygon)}};
            if (pc.kind == PieceKind::Pocket) {
                p["chain"] = pts(pc.chain);
            } else {
                p["bottom"] = pts(pc.bottom);
                p["top"] = pts(pc.top);
            }
            if (pc.kind == PieceKind::Middle) p["target"] = pc.target;
            pieces.push_back(p);
        }
        st["decomposition"] = {{"length", d.length},
                               {"regions", regions},
                               {"pieces", pieces},
                               {"boundary_trees", d.boundary_trees},
                               {"terminals_on_boundary", d.terminals_on_boundary}};
    } else {
        st["decomposition"] = json();
    }
    if (r.immersion) {
        const auto& u = r.immersion->u;
        json faces = json::array();
        for (auto& f : u.faces)
            faces.push_back({{"piece", f.piece}, {"loop", pts(f.poly)}, {"motion", motion_json(f.m)}});
        json creases = json::array();
        for (auto& c : u.creases)
            creases.push_back({{"a", pt(c.seg.a)}, {"b", pt(c.seg.b)}, {"direction", c.valley ? "valley" : "mountain"}});
        json reports = json::array();
        for (auto& rp : r.immersion->reports) {
            json x = {{"piece", rp.piece}, {"kind", piece_kind_name(rp.kind)}, {"faces", rp.faces}, {"folds", rp.folds}};
            if (rp.kind == PieceKind::Middle) {
                x["target"] = rp.target;
                x["achieved"] = rp.achieved;
                x["max_offset"] = rp.max_offset;
                x["min_offset"] = rp.min_offset;
                x["max_offset_built"] = rp.max_offset_built;
                x["min_offset_built"] = rp.min_offset_built;
                x["iterations"] = rp.iterations;
                x["theta"] = rp.theta;
                x["branch"] = rp.branch;
            }
            reports.push_back(x);
        }
        st["fold_pattern"] = {{"faces", faces}, {"creases", creases}, {"pieces", reports}};
    } else {
        st["fold_pattern"] = json();
    }
    if (r.verification) {
        const auto& v = *r.verification;
        st["verification"] = {{"ok", v.ok()},
                              {"orthogonality", v.orthogonality},
                              {"continuity", v.continuity},
                              {"u_p_error", v.up_error},
                              {"u_q_error", v.uq_error},
                              {"rectification", v.rectification},
                              {"area_error", v.area_error},
                              {"failures", v.failures},
                              {"units", "normalized"}};
    } else {
        st["verification"] = json();
    }
    j["stages"] = st;
    if (with_timings) {
        json t = json::object();
        for (auto& [name, sec] : r.timings) t[name] = sec;
        j["timings"] = t;
    }
    return j.dump(2) + "\n";
}

std::string to_svg(const PipelineResult& r, double ppu) {
    const KirigamiSpec& spec = r.sealed ? *r.sealed : r.input;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!spec.domain.empty()) {
        x0 = x1 = spec.domain[0].x;
        y0 = y1 = spec.domain[0].y;
        for (auto& p : spec.domain) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    }
    double margin = 0.05 * std::max(x1 - x0, y1 - y0);
    x0 -= margin;
    x1 += margin;
    y0 -= margin;
    y1 += margin;
    std::ostringstream os;
    os << std::setprecision(10);
    auto X = [&](Point2 p) { return (p.x - x0) * ppu; };
    auto Y = [&](Point2 p) { return (y1 - p.y) * ppu; };
    const double stroke = 2.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (x1 - x0) * ppu << "\" height=\"" << (y1 - y0) * ppu
       << "\" viewBox=\"0 0 " << (x1 - x0) * ppu << " " << (y1 - y0) * ppu << "\">\n";
    os << "<polygon class=\"domain\" fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\" points=\"";
    for (auto& p : spec.domain) os << X(p) << "," << Y(p) << " ";
    os << "\"/>\n";
    if (r.immersion) {
        for (auto& c : r.immersion->u.creases)
            os << "<line class=\"crease " << (c.valley ? "valley" : "mountain") << "\" x1=\"" << X(c.seg.a) << "\" y1=\""
               << Y(c.seg.a) << "\" x2=\"" << X(c.seg.b) << "\" y2=\"" << Y(c.seg.b) << "\" stroke=\""
               << (c.valley ? "green" : "gray") << "\" stroke-width=\"" << stroke
               << "\" stroke-dasharray=\"6,4\"/>\n";
    }
    const GeodesicSet* gs = r.sealed_geodesics ? &*r.sealed_geodesics : r.geodesics ? &*r.geodesics : nullptr;
    if (gs)
        for (auto& g : gs->geodesics) {
            os << "<polyline class=\"geodesic\" fill=\"none\" stroke=\"blue\" stroke-width=\"" << stroke << "\" points=\"";
            for (auto& w : g.waypoints) os << X(w.pt) << "," << Y(w.pt) << " ";
            os << "\"/>\n";
        }
    for (auto [a, b] : spec.edges) {
        Point2 pa = spec.vertices[a], pb = spec.vertices[b];
        os << "<line class=\"cut\" x1=\"" << X(pa) << "\" y1=\"" << Y(pa) << "\" x2=\"" << X(pb) << "\" y2=\"" << Y(pb)
           << "\" stroke=\"red\" stroke-width=\"" << 1.5 * stroke << "\"/>\n";
    }
    for (Point2 t : {spec.p, spec.q})
        os << "<circle class=\"terminal\" cx=\"" << X(t) << "\" cy=\"" << Y(t) << "\" r=\"" << 2 * stroke
           << "\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

void export_result(const PipelineResult& r, ExportFormat format, const std::string& path, bool with_timings,
                   double pixels_per_unit) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw KirigamiError("cannot write " + path);
    out << (format == ExportFormat::Json ? to_json(r, with_timings) : to_svg(r, pixels_per_unit));
    if (!out) throw KirigamiError("cannot write " + path);
}

}  // namespace kirigami
