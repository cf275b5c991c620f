#include "kirigami/folding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

namespace kirigami {

namespace {

Point2 rotate(Point2 v, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double signed_angle(Point2 from, Point2 to) { return std::atan2(cross(from, to), dot(from, to)); }

std::vector<Point2> dedupe_ring(const std::vector<Point2>& in, double eps) {
    std::vector<Point2> out;
    for (auto& x : in)
        if (out.empty() || dist(out.back(), x) > eps) out.push_back(x);
    while (out.size() > 1 && dist(out.front(), out.back()) <= eps) out.pop_back();
    return out;
}

// x -> (s, 0) and dir -> sign * e1
Motion to_axis(Point2 x, Point2 dir, double s, double sign) {
    double target = sign > 0 ? 0.0 : kPi;
    Motion r = Motion::rotation(target - std::atan2(dir.y, dir.x), x);
    return Motion::translation(Point2{s, 0.0} - x).after(r);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

PieceFolder::PieceFolder(std::vector<Point2> polygon, int piece_id, const Tolerance& tol)
    : poly_(dedupe_ring(polygon, tol.eps)), tol_(tol) {
    if (signed_area(poly_) < 0) std::reverse(poly_.begin(), poly_.end());
    for (auto& f : convex_partition(poly_, tol)) faces_.push_back({f, Motion{}, piece_id});
}

int PieceFolder::vertex_index(Point2 x) const {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poly_.size(); ++i) {
        double d = dist(poly_[i], x);
        if (d < bd) {
            bd = d;
            best = int(i);
        }
    }
    if (best < 0 || bd > 10 * tol_.eps) throw FoldError("chain point is not a vertex of the piece");
    return best;
}

std::optional<SimpleFold> PieceFolder::chord_fold(int vertex, int next, Point2 d_in,
                                                  const std::vector<Point2>* moving, const std::vector<Point2>* keep) {
    const size_t n = poly_.size();
    const Point2 c = poly_[vertex];
    d_in = normalized(d_in);
    Point2 d_out = normalized(poly_[next] - c);
    if (std::abs(cross(d_in, d_out)) <= 1e-12 && dot(d_in, d_out) > 0) return std::nullopt;

    Point2 e_next = poly_[(vertex + 1) % n] - c;
    Point2 e_prev = poly_[(vertex + n - 1) % n] - c;
    double interior = ccw_sweep(e_next, e_prev);
    auto inside = [&](Point2 w) {
        double a = ccw_sweep(e_next, w);
        return a > 1e-12 && a < interior - 1e-12;
    };
    Point2 b = rotate(d_out, 0.5 * signed_angle(d_out, d_in));
    Point2 w;
    if (inside(b))
        w = b;
    else if (inside(-b))
        w = -b;
    else if (moving && keep) {
        // the chord lies further along the fold line
        return line_fold(Line{c, b}, *moving, *keep, c);
    } else
        throw FoldError("fold chord leaves the piece at a chain vertex");

    int edge = -1;
    double scale = 0.0;
    for (auto& x : poly_) scale = std::max(scale, dist(x, c));
    double t = ray_polygon_hit(c, w, poly_, 1e-9 * scale, &edge);
    if (t < 0 || edge < 0) throw FoldError("fold chord does not meet the piece boundary");
    Point2 h = c + t * w;
    Segment chord{c, h};
    check_chord(chord);

    // sub-polygons on the two sides of the chord
    std::vector<Point2> sub1, sub2;
    for (size_t k = size_t(vertex);; k = (k + 1) % n) {
        sub1.push_back(poly_[k]);
        if (int(k) == edge) break;
    }
    sub1.push_back(h);
    sub2.push_back(h);
    for (size_t k = (size_t(edge) + 1) % n;; k = (k + 1) % n) {
        sub2.push_back(poly_[k]);
        if (int(k) == vertex) break;
    }
    sub1 = dedupe_ring(sub1, tol_.eps);
    sub2 = dedupe_ring(sub2, tol_.eps);
    bool next_in_sub1 = next == int((vertex + 1) % n);
    reflect_part(chord, next_in_sub1 ? sub1 : sub2, next_in_sub1 ? sub2 : sub1, poly_[next]);
    return SimpleFold{Line{c, w}, chord, false};
}

void PieceFolder::check_chord(const Segment& chord) const {
    for (auto& s : chords_) {
        Intersection x = seg_intersect(chord, s, tol_);
        if (x.kind == Intersection::Kind::Overlap) throw FoldError("fold chords overlap");
        if (x.kind == Intersection::Kind::Point) {
            bool endpoint = std::min({dist(x.point, chord.a), dist(x.point, chord.b)}) <= tol_.eps &&
                            std::min(dist(x.point, s.a), dist(x.point, s.b)) <= tol_.eps;
            if (!endpoint) throw FoldError("fold chords cross");
        }
    }
}

void PieceFolder::reflect_part(const Segment& chord, const std::vector<Point2>& far, const std::vector<Point2>& near,
                               Point2 far_point) {
    Line chord_line{chord.a, normalized(chord.b - chord.a)};
    double far_sign = chord_line.side(far_point) >= 0 ? 1.0 : -1.0;
    auto is_far = [&](const std::vector<Point2>& part) {
        Point2 g = centroid(part);
        Containment cf = polygon_contains_unchecked(far, g, tol_);
        if (cf == Containment::Inside) return true;
        Containment cn = polygon_contains_unchecked(near, g, tol_);
        if (cn == Containment::Inside) return false;
        return chord_line.side(g) * far_sign > 0;
    };

    Motion r = Motion::reflection(chord_line);
    std::vector<Face> out;
    for (auto& f : faces_) {
        std::vector<Point2> left, right;
        split_convex(f.poly, chord_line, left, right);
        std::vector<std::vector<Point2>> parts;
        if (!left.empty()) parts.push_back(left);
        if (!right.empty()) parts.push_back(right);
        if (parts.size() == 2 && is_far(parts[0]) == is_far(parts[1])) parts = {f.poly};
        if (parts.empty()) parts = {f.poly};
        for (auto& p : parts) {
            Face g{p, f.m, f.piece};
            if (is_far(p)) g.m = f.m.after(r);
            out.push_back(std::move(g));
        }
    }
    faces_ = std::move(out);
    chords_.push_back(chord);
}

SimpleFold PieceFolder::line_fold(const Line& l, const std::vector<Point2>& far, const std::vector<Point2>& near,
                                  Point2 ref, bool through_ref) {
    const size_t n = poly_.size();
    const Point2 dir = normalized(l.dir), at = l.origin;
    double scale = 1.0;
    for (auto& x : poly_) scale = std::max(scale, dist(x, at));
    const double eps = tol_.eps * scale;

    struct Hit {
        double t;
        int edge;
        Point2 x;
    };
    std::vector<Hit> hits;
    for (size_t k = 0; k < n; ++k) {
        Point2 a = poly_[k], b = poly_[(k + 1) % n];
        double sa = cross(dir, a - at), sb = cross(dir, b - at);
        if (std::abs(sa) <= eps) {
            hits.push_back({dot(a - at, dir), int(k), a});
        } else if (std::abs(sb) > eps && (sa < 0) != (sb < 0)) {
            Point2 x = lerp(a, b, sa / (sa - sb));
            hits.push_back({dot(x - at, dir), int(k), x});
        }
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.t < b.t; });

    auto in = [&](const std::vector<Point2>& poly, const std::vector<Point2>& pts) {
        for (auto& x : pts)
            if (polygon_contains_unchecked(poly, x, tol_) == Containment::Outside) return false;
        return true;
    };
    double best = std::numeric_limits<double>::infinity();
    Segment chord;
    std::vector<Point2> far_part, near_part;
    for (size_t i = 0; i + 1 < hits.size(); ++i) {
        const Hit &from = hits[i], &to = hits[i + 1];
        if (to.t - from.t <= eps || from.edge == to.edge) continue;
        if (polygon_contains_unchecked(poly_, at + 0.5 * (from.t + to.t) * dir, tol_) != Containment::Inside)
            continue;
        std::vector<Point2> sub1{from.x}, sub2{to.x};
        for (size_t k = (size_t(from.edge) + 1) % n;; k = (k + 1) % n) {
            sub1.push_back(poly_[k]);
            if (int(k) == to.edge) break;
        }
        sub1.push_back(to.x);
        for (size_t k = (size_t(to.edge) + 1) % n;; k = (k + 1) % n) {
            sub2.push_back(poly_[k]);
            if (int(k) == from.edge) break;
        }
        sub2.push_back(from.x);
        sub1 = dedupe_ring(sub1, tol_.eps);
        sub2 = dedupe_ring(sub2, tol_.eps);
        bool far1 = in(sub1, far) && in(sub2, near), far2 = in(sub2, far) && in(sub1, near);
        if (!far1 && !far2) continue;
        Segment c{from.x, to.x};
        double d = point_segment_distance(ref, c);
        if (through_ref && d > eps) continue;
        if (d < best) {
            best = d;
            chord = c;
            far_part = far1 ? sub1 : sub2;
            near_part = far1 ? sub2 : sub1;
        }
    }
    if (far_part.empty()) throw FoldError("no fold chord separates the moving part of the piece");
    Point2 probe = far.front();
    for (auto& x : far)
        if (std::abs(l.side(x)) > std::abs(l.side(probe))) probe = x;
    check_chord(chord);
    reflect_part(chord, far_part, near_part, probe);
    return SimpleFold{l, chord, false};
}

SimpleFold PieceFolder::image_fold(const Line& l, Point2 side_point) {
    Motion f = Motion::reflection(l);
    double sign = l.side(side_point) >= 0 ? 1.0 : -1.0;
    std::vector<Face> out;
    for (auto& face : faces_) {
        Motion inv = face.m.inverse();
        Line pre{inv.apply(l.origin), normalized(inv.apply_linear(l.dir))};
        std::vector<Point2> left, right;
        split_convex(face.poly, pre, left, right);
        std::vector<std::vector<Point2>> parts;
        if (!left.empty()) parts.push_back(left);
        if (!right.empty()) parts.push_back(right);
        if (parts.empty()) parts = {face.poly};
        for (auto& p : parts) {
            Face g{p, face.m, face.piece};
            if (l.side(face.m.apply(centroid(p))) * sign > 0) g.m = f.after(face.m);
            out.push_back(std::move(g));
        }
    }
    faces_ = std::move(out);
    return SimpleFold{l, {}, true};
}

void PieceFolder::apply(const Motion& g) {
    for (auto& f : faces_) f.m = g.after(f.m);
}

Point2 PieceFolder::eval(Point2 x) const {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < faces_.size(); ++i) {
        const auto& p = faces_[i].poly;
        if (polygon_contains_unchecked(p, x, tol_) != Containment::Outside) return faces_[i].m.apply(x);
        for (size_t k = 0; k < p.size(); ++k) {
            double d = point_segment_distance(x, {p[k], p[(k + 1) % p.size()]});
            if (d < bd) {
                bd = d;
                best = int(i);
            }
        }
    }
    if (best < 0) throw FoldError("piece has no faces");
    return faces_[best].m.apply(x);
}

std::vector<SimpleFold> fold_chain_onto_line(PieceFolder& pf, const std::vector<Point2>& chain,
                                             std::optional<Point2> lead_dir, const std::vector<Point2>& keep) {
    std::vector<SimpleFold> folds;
    if (chain.size() < 2) return folds;
    std::vector<int> idx;
    for (auto& x : chain) idx.push_back(pf.vertex_index(x));
    const auto& poly = pf.polygon();
    const size_t n = poly.size();
    for (size_t k = 0; k + 1 < idx.size(); ++k) {
        int a = idx[k], b = idx[k + 1];
        if (b != int((a + 1) % n) && a != int((b + 1) % n)) throw FoldError("chain is not a boundary run of the piece");
    }
    for (size_t k = 1; k + 1 < idx.size(); ++k) {
        int v = idx[k];
        double interior = ccw_sweep(poly[(v + 1) % n] - poly[v], poly[(v + n - 1) % n] - poly[v]);
        if (interior < kPi - 1e-9) throw FoldError("chain bends into the piece");
    }
    for (size_t k = lead_dir ? 0 : 1; k + 1 < idx.size(); ++k) {
        Point2 d_in = k == 0 ? *lead_dir : chain[k] - chain[k - 1];
        std::vector<Point2> stay = keep, moving(chain.begin() + long(k), chain.end());
        stay.insert(stay.end(), chain.begin(), chain.begin() + long(k));
        bool fallback = !keep.empty();
        if (auto f = pf.chord_fold(idx[k], idx[k + 1], d_in, fallback ? &moving : nullptr, fallback ? &stay : nullptr))
            folds.push_back(*f);
    }
    return folds;
}

Bitangents supporting_bitangents(const std::vector<Point2>& lower, const std::vector<Point2>& upper, Point2 right,
                                 const Tolerance& tol) {
    right = normalized(right);
    double scale = 1.0;
    for (auto& x : lower) scale = std::max(scale, norm(x));
    for (auto& x : upper) scale = std::max(scale, norm(x));
    double best_hi = -kPi, best_lo = kPi;
    Bitangents bt;
    for (size_t i = 0; i < lower.size(); ++i)
        for (size_t j = 0; j < upper.size(); ++j) {
            Point2 w = upper[j] - lower[i];
            if (norm(w) <= tol.eps) continue;
            w = normalized(w);
            // orient the line with the lower set on its right
            auto separates = [&](Point2 c) {
                Point2 nrm = perp(c);
                double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
                for (auto& x : lower) hi = std::max(hi, dot(x - lower[i], nrm));
                for (auto& x : upper) lo = std::min(lo, dot(x - lower[i], nrm));
                return hi <= tol.eps * scale && lo >= -tol.eps * scale;
            };
            bool fwd = separates(w), bwd = separates(-w);
            if (fwd == bwd) continue;  // not separating, or everything on one line
            if (bwd) w = -w;
            double th = signed_angle(right, w);
            if (th > best_hi) {
                best_hi = th;
                bt.rising = Line{lower[i], w};
                bt.low_on_rising = int(i);
                bt.up_on_rising = int(j);
            }
            if (th < best_lo) {
                best_lo = th;
                bt.falling = Line{lower[i], w};
                bt.low_on_falling = int(i);
                bt.up_on_falling = int(j);
            }
        }
    if (bt.low_on_rising < 0) throw FoldError("lower and upper portions of the piece are not separable by a line");
    return bt;
}

namespace {

struct Support {
    int a = 0, b = 0;  // extreme lower / upper vertex in the normal direction
};

Support support_of(const Piece& pc, Point2 d) {
    Point2 n = perp(d);
    Support s;
    double best = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pc.bottom.size(); ++i) {
        double h = dot(pc.bottom[i], n);
        if (h > best + 1e-15) {
            best = h;
            s.a = int(i);
        }
    }
    best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < pc.top.size(); ++j) {
        double h = dot(pc.top[j], n);
        if (h < best - 1e-15) {
            best = h;
            s.b = int(j);
        }
    }
    return s;
}

Point2 middle_right(const Piece& pc) {
    return normalized((pc.bottom.back() + pc.top.back()) - (pc.bottom.front() + pc.top.front()));
}

PieceImmersion finish(PieceFolder& pf, const Piece& pc, int piece_id, int folds) {
    PieceImmersion out;
    out.faces = std::move(pf.faces());
    merge_faces(out.faces);
    out.report.piece = piece_id;
    out.report.kind = pc.kind;
    out.report.faces = int(out.faces.size());
    out.report.folds = folds;
    return out;
}

}  // namespace

double middle_offset(const Piece& pc, Point2 d) {
    d = normalized(d);
    Support s = support_of(pc, d);
    return dot(pc.top[s.b] - pc.bottom[s.a], d) - (pc.top_s[s.b] - pc.top_s.front()) +
           (pc.bottom_s[s.a] - pc.bottom_s.front());
}

PieceImmersion build_middle(const Piece& pc, int piece_id, Point2 d, const Tolerance& tol) {
    d = normalized(d);
    Point2 n = perp(d);
    Support s = support_of(pc, d);
    PieceFolder pf(pc.polygon, piece_id, tol);
    int folds = 0;
    auto fold = [&](const std::vector<Point2>& chain, int from, Point2 dir_right) {
        std::vector<Point2> right(chain.begin() + from, chain.end());
        std::vector<Point2> left(chain.begin(), chain.begin() + from + 1);
        std::reverse(left.begin(), left.end());
        folds += int(fold_chain_onto_line(pf, right, dir_right).size());
        folds += int(fold_chain_onto_line(pf, left, -dir_right).size());
    };
    fold(pc.bottom, s.a, d);
    fold(pc.top, s.b, d);

    Point2 ta = pc.bottom[s.a], tb = pc.top[s.b];
    double ha = dot(ta, n), hb = dot(tb, n);
    // common image line: through the crossing of the two bitangents when it lies between the supports
    double ho = 0.5 * (ha + hb);
    try {
        Bitangents bt = supporting_bitangents(pc.bottom, pc.top, middle_right(pc), tol);
        double den = cross(bt.rising.dir, bt.falling.dir);
        if (std::abs(den) > 1e-12) {
            double t = cross(bt.falling.origin - bt.rising.origin, bt.falling.dir) / den;
            double h = dot(bt.rising.origin + t * bt.rising.dir, n);
            if (h >= ha - tol.eps && h <= hb + tol.eps) ho = std::clamp(h, ha, hb);
        }
    } catch (const FoldError&) {
    }
    Point2 o = ta + (ho - ha) * n;
    if (ho - ha > tol.eps) {
        Line ma{o + 0.5 * (ha - ho) * n, d};
        pf.image_fold(ma, ma.origin - n);
        ++folds;
    }
    if (hb - ho > tol.eps) {
        Line mb{o + 0.5 * (hb - ho) * n, d};
        pf.image_fold(mb, mb.origin + n);
        ++folds;
    }
    Point2 ubl = pf.eval(pc.bottom.front());
    Motion frame;
    frame.a = d.x;
    frame.b = d.y;
    frame.c = n.x;
    frame.d = n.y;
    frame.shift = -frame.apply_linear(o);
    double x_bl = frame.apply(ubl).x;
    pf.apply(Motion::translation({pc.bottom_s.front() - x_bl, 0.0}).after(frame));
    double achieved = pf.eval(pc.top.front()).x - pf.eval(pc.bottom.front()).x;
    PieceImmersion out = finish(pf, pc, piece_id, folds);
    out.report.target = pc.target;
    out.report.achieved = achieved;
    return out;
}

PieceImmersion immerse_P_simple(const Piece& pc, int piece_id, const Tolerance& tol) {
    if (pc.kind != PieceKind::Middle) throw FoldError("immerse_P_simple expects a middle piece");
    Point2 ref = middle_right(pc);
    Bitangents bt = supporting_bitangents(pc.bottom, pc.top, ref, tol);
    double th_hi = signed_angle(ref, bt.rising.dir), th_lo = signed_angle(ref, bt.falling.dir);
    auto f = [&](double th) { return middle_offset(pc, rotate(ref, th)); };
    double f_hi = f(th_hi), f_lo = f(th_lo);

    const Point2 a1 = pc.bottom[bt.low_on_rising], b1 = pc.top[bt.up_on_rising];
    const Point2 a2 = pc.bottom[bt.low_on_falling], b2 = pc.top[bt.up_on_falling];
    double max_offset = dist(a1, b1) - (pc.top_s[bt.up_on_rising] - pc.top_s.front()) +
                     (pc.bottom_s[bt.low_on_rising] - pc.bottom_s.front());
    double min_offset = -dist(a2, b2) - (pc.top_s[bt.up_on_falling] - pc.top_s.front()) +
                     (pc.bottom_s[bt.low_on_falling] - pc.bottom_s.front());

    double tau = pc.target;
    double lo_v = std::min(f_lo, f_hi), hi_v = std::max(f_lo, f_hi);
    if (tau < lo_v - tol.eps_len || tau > hi_v + tol.eps_len)
        throw FoldError("required offset " + fmt(tau) + " lies outside the attainable range [" + fmt(lo_v) + ", " +
                        fmt(hi_v) + "]");

    double th = th_hi;
    int iterations = 0;
    if (std::abs(f_hi - f_lo) > 1e-12 && std::abs(f_hi - tau) > 1e-13) {
        double a = th_lo, b = th_hi, ga = f_lo - tau;
        if (std::abs(ga) <= 1e-13) {
            th = th_lo;
        } else {
            for (iterations = 0; iterations < 60; ++iterations) {
                double m = 0.5 * (a + b);
                double gm = f(m) - tau;
                th = m;
                if (std::abs(gm) <= 1e-13 || b - a < 1e-16) break;
                if ((gm < 0) == (ga < 0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
        }
    }
    PieceImmersion out = build_middle(pc, piece_id, rotate(ref, th), tol);
    out.report.max_offset = max_offset;
    out.report.min_offset = min_offset;
    out.report.max_offset_built = build_middle(pc, piece_id, rotate(ref, th_hi), tol).report.achieved;
    out.report.min_offset_built = build_middle(pc, piece_id, rotate(ref, th_lo), tol).report.achieved;
    out.report.iterations = iterations;
    out.report.theta = th;
    out.report.branch = "straight";
    return out;
}

namespace {

// Position of x along a chain: the edge holding it and its arclength.
double chain_param(const std::vector<Point2>& c, const std::vector<double>& s, Point2 x, int* edge = nullptr) {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < c.size(); ++k) {
        double d = point_segment_distance(x, {c[k], c[k + 1]});
        if (d < bd - 1e-15) {
            bd = d;
            best = int(k);
        }
    }
    if (edge) *edge = best;
    return s[best] + dist(c[best], x);
}

int index_on(const std::vector<Point2>& c, Point2 x, double eps) {
    for (size_t k = 0; k < c.size(); ++k)
        if (dist(c[k], x) <= eps) return int(k);
    return -1;
}

// Taut path leaving the meeting point towards one chain. pts[0] is that point; from pts[detach] on the
// path runs along the chain.
struct Branch {
    std::vector<Point2> pts;
    int detach = 0;
};

// Part of a spine between the meeting point and one chain, ordered outwards.
struct HalfSpine {
    std::vector<Point2> pts;
    std::vector<Point2> dirs;
};

struct Spine {
    std::vector<Point2> pts;   // bottom chain point first, top chain point last
    std::vector<Point2> dirs;  // per segment, the direction sent to +e1
};

struct GeneralSetup {
    std::vector<Point2> rising, falling;  // bottom-left to top-right, bottom-right to top-left
    Point2 meet;
    bool meet_is_vertex = false;
    Branch low_rise, up_rise, low_fall, up_fall;
    double max_offset = 0, min_offset = 0;
};

double polyline_length(const std::vector<Point2>& p) {
    double l = 0;
    for (size_t k = 0; k + 1 < p.size(); ++k) l += dist(p[k], p[k + 1]);
    return l;
}

GeneralSetup general_setup(const Piece& pc, const Tolerance& tol) {
    std::vector<Point2> poly = dedupe_ring(pc.polygon, tol.eps);
    if (signed_area(poly) < 0) std::reverse(poly.begin(), poly.end());
    auto vid = [&](Point2 x) {
        int i = index_on(poly, x, 10 * tol.eps);
        if (i < 0) throw FoldError("chain end is not a vertex of the piece");
        return i;
    };
    GeneralSetup g;
    g.rising = shortest_path_in_polygon(poly, vid(pc.bottom.front()), vid(pc.top.back()), tol);
    g.falling = shortest_path_in_polygon(poly, vid(pc.bottom.back()), vid(pc.top.front()), tol);
    double lb = pc.top_s.back() - pc.top_s.front(), la = pc.bottom_s.back() - pc.bottom_s.front();
    g.max_offset = polyline_length(g.rising) - lb;
    g.min_offset = la - polyline_length(g.falling);

    // detach indices: how far each path follows a chain from its ends
    auto lead = [&](const std::vector<Point2>& path, const std::vector<Point2>& chain, int step) {
        int k = 0, last = index_on(chain, path[0], 10 * tol.eps);
        while (k + 1 < int(path.size())) {
            int j = index_on(chain, path[k + 1], 10 * tol.eps);
            if (j < 0 || (j - last) * step <= 0) break;
            last = j;
            ++k;
        }
        return k;
    };
    auto rev = [](std::vector<Point2> v) {
        std::reverse(v.begin(), v.end());
        return v;
    };
    const int na = int(g.rising.size()), nb = int(g.falling.size());
    int rise_leaves_bottom = lead(g.rising, pc.bottom, +1);
    int rise_joins_top = na - 1 - lead(rev(g.rising), pc.top, -1);
    int fall_leaves_bottom = lead(g.falling, pc.bottom, -1);
    int fall_joins_top = nb - 1 - lead(rev(g.falling), pc.top, +1);
    if (rise_leaves_bottom > rise_joins_top || fall_leaves_bottom > fall_joins_top)
        throw FoldError("taut path runs along both chains");

    // meeting point: the first common point of the two paths, counted from the bottom chain
    int ia = -1, ib = -1, sa = -1, sb = -1;
    for (int i = 0; i < na && ia < 0; ++i)
        for (int j = 0; j < nb; ++j)
            if (dist(g.rising[i], g.falling[j]) <= 10 * tol.eps) {
                ia = i;
                ib = j;
                break;
            }
    double best_t = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < na; ++i)
        for (int j = 0; j + 1 < nb; ++j) {
            Intersection x = seg_intersect({g.rising[i], g.rising[i + 1]}, {g.falling[j], g.falling[j + 1]}, tol);
            if (x.kind != Intersection::Kind::Point) continue;
            double t = i + dist(g.rising[i], x.point) / std::max(dist(g.rising[i], g.rising[i + 1]), 1e-300);
            if (t < best_t) {
                best_t = t;
                sa = i;
                sb = j;
                g.meet = x.point;
            }
        }
    if (ia >= 0 && (sa < 0 || ia <= best_t + 1e-12)) {
        g.meet = g.rising[ia];
        sa = sb = -1;
    } else if (sa < 0) {
        throw FoldError("taut paths do not meet");
    } else {
        // a crossing at a vertex of one of the paths
        int ja = index_on(g.rising, g.meet, 10 * tol.eps), jb = index_on(g.falling, g.meet, 10 * tol.eps);
        if (ja >= 0) {
            ia = ja;
            sa = -1;
        }
        if (jb >= 0) {
            ib = jb;
            sb = -1;
        }
    }
    g.meet_is_vertex = sa < 0 || sb < 0;

    auto branch = [&](const std::vector<Point2>& path, int vertex, int seg, bool down, int detach) {
        Branch br;
        br.pts.push_back(g.meet);
        int first = down ? (vertex >= 0 ? vertex - 1 : seg) : (vertex >= 0 ? vertex + 1 : seg + 1);
        int step = down ? -1 : 1;
        for (int k = first; k >= 0 && k < int(path.size()); k += step) br.pts.push_back(path[k]);
        br.pts = dedupe_ring(br.pts, tol.eps);
        if (br.pts.size() < 2) throw FoldError("common point of the taut paths is a chain end");
        br.detach = std::max(0, down ? 1 + first - detach : 1 + detach - first);
        br.detach = std::min(br.detach, int(br.pts.size()) - 1);
        return br;
    };
    g.low_rise = branch(g.rising, ia, sa, true, rise_leaves_bottom);
    g.up_rise = branch(g.rising, ia, sa, false, rise_joins_top);
    g.low_fall = branch(g.falling, ib, sb, true, fall_leaves_bottom);
    g.up_fall = branch(g.falling, ib, sb, false, fall_joins_top);
    return g;
}

// First crossing of the ray from br.pts[0] along ray_dir with the branch.
// On a hit, the half spine follows the ray to the crossing and then the
// branch down to its detach vertex, with directions sign * outward.
std::optional<HalfSpine> ray_half(const Branch& br, Point2 ray_dir, Point2 d, double sign, double eps) {
    const Point2 e = br.pts[0];
    double best = std::numeric_limits<double>::infinity();
    int seg = -1;
    Point2 hit;
    for (size_t k = 0; k + 1 < br.pts.size(); ++k) {
        Point2 a = br.pts[k], b = br.pts[k + 1];
        double sa = cross(ray_dir, a - e), sb = cross(ray_dir, b - e);
        double ta = dot(a - e, ray_dir), tb = dot(b - e, ray_dir);
        double t;
        Point2 x;
        if (std::abs(sa) <= eps && std::abs(sb) <= eps) {
            // along the ray
            if (std::max(ta, tb) <= eps) continue;
            if (std::min(ta, tb) <= eps) {
                t = std::max(ta, tb);
                x = ta > tb ? a : b;
            } else {
                t = std::min(ta, tb);
                x = ta < tb ? a : b;
            }
        } else if (std::abs(sb) <= eps) {
            t = tb;
            x = b;
        } else if (std::abs(sa) <= eps) {
            t = ta;
            x = a;
        } else if ((sa < 0) != (sb < 0)) {
            x = lerp(a, b, sa / (sa - sb));
            t = dot(x - e, ray_dir);
        } else {
            continue;
        }
        if (t <= eps || t >= best) continue;
        best = t;
        seg = int(k);
        hit = x;
    }
    if (seg < 0) return std::nullopt;
    HalfSpine h;
    h.pts = {e, hit};
    h.dirs = {d};
    if (seg < br.detach) {
        for (int k = seg + 1; k <= br.detach; ++k) {
            if (dist(h.pts.back(), br.pts[k]) <= eps) continue;
            h.dirs.push_back(sign * normalized(br.pts[k] - h.pts.back()));
            h.pts.push_back(br.pts[k]);
        }
    }
    return h;
}

// Spine for the line direction d_lo below the meeting point and d_up above it.
Spine make_spine(const Piece& pc, const GeneralSetup& g, Point2 d_lo, Point2 d_up, double eps) {
    std::optional<HalfSpine> lo = ray_half(g.low_fall, d_lo, d_lo, 1.0, eps);
    if (!lo) lo = ray_half(g.low_rise, -d_lo, d_lo, -1.0, eps);
    if (!lo) {
        Point2 n = perp(d_lo);
        int a = 0;
        for (size_t i = 1; i < pc.bottom.size(); ++i)
            if (dot(pc.bottom[i], n) > dot(pc.bottom[a], n) + 1e-15) a = int(i);
        lo = HalfSpine{{g.meet, pc.bottom[a]}, {d_lo}};
    }
    std::optional<HalfSpine> up = ray_half(g.up_fall, -d_up, d_up, -1.0, eps);
    if (!up) up = ray_half(g.up_rise, d_up, d_up, 1.0, eps);
    if (!up) {
        Point2 n = perp(d_up);
        int b = 0;
        for (size_t j = 1; j < pc.top.size(); ++j)
            if (dot(pc.top[j], n) < dot(pc.top[b], n) - 1e-15) b = int(j);
        up = HalfSpine{{g.meet, pc.top[b]}, {d_up}};
    }
    Spine sp;
    sp.pts.assign(lo->pts.rbegin(), lo->pts.rend());
    sp.dirs.assign(lo->dirs.rbegin(), lo->dirs.rend());
    for (size_t k = 1; k < up->pts.size(); ++k) {
        if (dist(sp.pts.back(), up->pts[k]) <= eps) continue;
        sp.pts.push_back(up->pts[k]);
        sp.dirs.push_back(up->dirs[k - 1]);
    }
    if (sp.pts.size() < 2) throw FoldError("degenerate spine");
    // drop a zero-length segment at the meeting point
    for (size_t k = 0; k + 1 < sp.pts.size();) {
        if (dist(sp.pts[k], sp.pts[k + 1]) <= eps) {
            sp.pts.erase(sp.pts.begin() + long(k) + 1);
            sp.dirs.erase(sp.dirs.begin() + long(std::min(k + 1, sp.dirs.size() - 1)));
        } else {
            ++k;
        }
    }
    return sp;
}

double spine_offset(const Piece& pc, const Spine& sp) {
    double off = chain_param(pc.bottom, pc.bottom_s, sp.pts.front()) - pc.bottom_s.front();
    off -= chain_param(pc.top, pc.top_s, sp.pts.back()) - pc.top_s.front();
    for (size_t k = 0; k + 1 < sp.pts.size(); ++k) off += dot(sp.dirs[k], sp.pts[k + 1] - sp.pts[k]);
    return off;
}

// Inserts x into the chain (and the polygon) when it lies inside a chain edge.
void insert_chain_point(Piece& pc, bool bottom, Point2 x, double eps) {
    auto& c = bottom ? pc.bottom : pc.top;
    auto& s = bottom ? pc.bottom_s : pc.top_s;
    if (index_on(c, x, eps) >= 0) return;
    int e = 0;
    double sx = chain_param(c, s, x, &e);
    Point2 a = c[e], b = c[e + 1];
    c.insert(c.begin() + e + 1, x);
    s.insert(s.begin() + e + 1, sx);
    const size_t n = pc.polygon.size();
    for (size_t k = 0; k < n; ++k) {
        Point2 p = pc.polygon[k], q = pc.polygon[(k + 1) % n];
        if ((dist(p, a) <= eps && dist(q, b) <= eps) || (dist(p, b) <= eps && dist(q, a) <= eps)) {
            pc.polygon.insert(pc.polygon.begin() + long(k) + 1, x);
            return;
        }
    }
    throw FoldError("chain edge is not an edge of the piece");
}

}  // namespace

PieceImmersion build_spine(const Piece& piece, int piece_id, const std::vector<Point2>& pts,
                           const std::vector<Point2>& dirs, const Tolerance& tol) {
    if (pts.size() < 2 || dirs.size() + 1 != pts.size()) throw FoldError("spine needs one direction per segment");
    Piece pc = piece;
    insert_chain_point(pc, true, pts.front(), 10 * tol.eps);
    insert_chain_point(pc, false, pts.back(), 10 * tol.eps);
    PieceFolder pf(pc.polygon, piece_id, tol);
    int folds = 0;
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
        Point2 a = normalized(dirs[i - 1]), b = normalized(dirs[i]);
        if (norm(a - b) <= 1e-12) continue;
        Point2 w = a + b;
        w = norm(w) <= 1e-12 ? perp(b) : normalized(w);
        std::vector<Point2> far(pts.begin() + long(i) + 1, pts.end()), near(pts.begin(), pts.begin() + long(i));
        far.insert(far.end(), pc.top.begin(), pc.top.end());
        near.insert(near.end(), pc.bottom.begin(), pc.bottom.end());
        pf.line_fold(Line{pts[i], w}, far, near, pts[i], true);
        ++folds;
    }
    // chain folds at the spine ends; the other chain and the spine stay put
    auto chain_folds = [&](const std::vector<Point2>& chain, const std::vector<Point2>& other, Point2 at, Point2 d,
                           bool first) {
        int k = index_on(chain, at, 10 * tol.eps);
        std::vector<Point2> right(chain.begin() + k, chain.end());
        std::vector<Point2> left(chain.begin(), chain.begin() + k + 1);
        std::reverse(left.begin(), left.end());
        std::vector<Point2> keep = other;
        if (first)
            keep.insert(keep.end(), pts.begin() + 1, pts.end());
        else
            keep.insert(keep.end(), pts.begin(), pts.end() - 1);
        std::vector<Point2> keep_r = keep, keep_l = keep;
        keep_r.insert(keep_r.end(), chain.begin(), chain.begin() + k);
        keep_l.insert(keep_l.end(), chain.begin() + k + 1, chain.end());
        folds += int(fold_chain_onto_line(pf, right, d, keep_r).size());
        folds += int(fold_chain_onto_line(pf, left, -d, keep_l).size());
    };
    const Point2 d0 = normalized(dirs.front());
    chain_folds(pc.bottom, pc.top, pts.front(), d0, true);
    chain_folds(pc.top, pc.bottom, pts.back(), normalized(dirs.back()), false);

    Point2 n = perp(d0);
    Point2 ia = pf.eval(pts.front()), ib = pf.eval(pts.back());
    double h = dot(ib - ia, n);
    if (std::abs(h) > tol.eps) {
        pf.image_fold(Line{ia + 0.5 * h * n, d0}, ib);
        ++folds;
    }
    Motion frame;
    frame.a = d0.x;
    frame.b = d0.y;
    frame.c = n.x;
    frame.d = n.y;
    frame.shift = -frame.apply_linear(ia);
    double x_bl = frame.apply(pf.eval(pc.bottom.front())).x;
    pf.apply(Motion::translation({pc.bottom_s.front() - x_bl, 0.0}).after(frame));

    // both chains must now lie on the axis with their arclengths
    double x_tl = pf.eval(pc.top.front()).x;
    for (size_t k = 0; k < pc.bottom.size(); ++k) {
        Point2 u = pf.eval(pc.bottom[k]);
        if (std::abs(u.y) > 1e3 * tol.eps || std::abs(u.x - pc.bottom_s[k]) > 1e3 * tol.eps)
            throw FoldError("bottom chain is not rectified by the spine folds");
    }
    for (size_t k = 0; k < pc.top.size(); ++k) {
        Point2 u = pf.eval(pc.top[k]);
        if (std::abs(u.y) > 1e3 * tol.eps || std::abs(u.x - x_tl - (pc.top_s[k] - pc.top_s.front())) > 1e3 * tol.eps)
            throw FoldError("top chain is not rectified by the spine folds");
    }
    PieceImmersion out = finish(pf, pc, piece_id, folds);
    out.report.target = piece.target;
    out.report.achieved = x_tl - pc.bottom_s.front();
    return out;
}

double spine_offset(const Piece& pc, const std::vector<Point2>& pts, const std::vector<Point2>& dirs) {
    return spine_offset(pc, Spine{pts, dirs});
}

PieceImmersion immerse_P_general(const Piece& pc, int piece_id, const Tolerance& tol) {
    if (pc.kind != PieceKind::Middle) throw FoldError("immerse_P_general expects a middle piece");
    GeneralSetup g = general_setup(pc, tol);
    double scale = 1.0;
    for (auto& x : pc.polygon) scale = std::max(scale, norm(x));
    const double eps = 10 * tol.eps * scale;

    const Point2 fall_lo = normalized(g.low_fall.pts[1] - g.meet), fall_up = -normalized(g.up_fall.pts[1] - g.meet);
    const Point2 rise_lo = -normalized(g.low_rise.pts[1] - g.meet), rise_up = normalized(g.up_rise.pts[1] - g.meet);
    // sweep of the lower direction, on the side away from the lower part of rising
    auto sweep = [&](Point2 from, Point2 to) {
        double ccw = ccw_sweep(from, to);
        if (ccw <= 1e-12) return 0.0;
        double avoid = ccw_sweep(from, -rise_lo);
        return avoid > 1e-12 && avoid < ccw - 1e-12 ? ccw - 2 * kPi : ccw;
    };
    // arc for a direction that only one chain follows: it must not turn
    // against an edge of that chain
    auto turn = [&](Point2 from, Point2 to, const std::vector<Point2>& chain) {
        double ccw = ccw_sweep(from, to);
        if (ccw <= 1e-12 || ccw >= 2 * kPi - 1e-12) return 0.0;
        bool ccw_bad = false, cw_bad = false;
        for (size_t k = 0; k + 1 < chain.size(); ++k) {
            double a = ccw_sweep(from, chain[k] - chain[k + 1]);
            if (a > 1e-12 && a < ccw - 1e-12) ccw_bad = true;
            if (a > ccw + 1e-12 && a < 2 * kPi - 1e-12) cw_bad = true;
        }
        if (ccw_bad != cw_bad) return ccw_bad ? ccw - 2 * kPi : ccw;
        return ccw <= kPi ? ccw : ccw - 2 * kPi;
    };
    auto reflect_dir = [](Point2 v, Point2 from, Point2 to) {
        Point2 w = from + to;
        w = norm(w) <= 1e-12 ? perp(to) : normalized(w);
        return 2 * dot(w, v) * w - v;
    };

    struct Family {
        std::string branch;
        std::function<std::pair<Point2, Point2>(double)> dirs;
    };
    std::vector<Family> families;
    if (!g.meet_is_vertex) {
        double th = sweep(fall_lo, rise_lo);
        families.push_back({"general-crossing", [=](double s) {
                                Point2 d = rotate(fall_lo, s * th);
                                return std::pair{d, d};
                            }});
    } else {
        // lower first: the two edges of the falling path at the meeting point
        // stay aligned while the lower direction turns
        double th1 = sweep(fall_lo, rise_lo);
        double th2 = turn(reflect_dir(rise_lo, fall_lo, fall_up), rise_up, pc.top);
        families.push_back({"general-vertex-lower-first", [=](double s) {
                                double tot = std::abs(th1) + std::abs(th2), phi = s * tot;
                                if (tot <= 0 || phi <= std::abs(th1)) {
                                    Point2 d = rotate(fall_lo, phi * (th1 < 0 ? -1 : 1));
                                    return std::pair{d, reflect_dir(d, fall_lo, fall_up)};
                                }
                                Point2 u0 = reflect_dir(rise_lo, fall_lo, fall_up);
                                return std::pair{rise_lo, rotate(u0, (phi - std::abs(th1)) * (th2 < 0 ? -1 : 1))};
                            }});
        // upper first: the two edges of the rising path at the meeting point are aligned first
        double th0 = turn(fall_up, reflect_dir(fall_lo, rise_lo, rise_up), pc.top);
        families.push_back({"general-vertex-upper-first", [=](double s) {
                                double tot = std::abs(th0) + std::abs(th1), phi = s * tot;
                                if (tot <= 0 || phi <= std::abs(th0))
                                    return std::pair{fall_lo, rotate(fall_up, phi * (th0 < 0 ? -1 : 1))};
                                Point2 d = rotate(fall_lo, (phi - std::abs(th0)) * (th1 < 0 ? -1 : 1));
                                return std::pair{d, reflect_dir(d, rise_lo, rise_up)};
                            }});
    }

    const double tau = pc.target;
    if (tau < g.min_offset - tol.eps_len || tau > g.max_offset + tol.eps_len)
        throw FoldError("required offset " + fmt(tau) + " lies outside the attainable range [" + fmt(g.min_offset) +
                        ", " + fmt(g.max_offset) + "]");

    std::string last_error = "no fold family";
    for (const Family& fam : families) {
        auto spine_at = [&](double s) {
            auto [lo, up] = fam.dirs(s);
            return make_spine(pc, g, lo, up, eps);
        };
        auto offset = [&](double s) { return spine_offset(pc, spine_at(s)); };
        auto build = [&](double s) {
            Spine sp = spine_at(s);
            return build_spine(pc, piece_id, sp.pts, sp.dirs, tol);
        };
        auto bisect = [&](double a, double b, int* iters) {
            double ga = offset(a) - tau;
            if (std::abs(ga) <= 1e-13) return a;
            double m = b;
            for (*iters = 0; *iters < 60; ++*iters) {
                m = 0.5 * (a + b);
                double gm = offset(m) - tau;
                if (std::abs(gm) <= 1e-13 || b - a < 1e-16) break;
                if ((gm < 0) == (ga < 0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            return m;
        };
        // brackets: the whole sweep first, then sign changes on a grid
        std::vector<std::pair<double, double>> brackets{{0.0, 1.0}};
        const int grid = 64;
        double prev = offset(0.0) - tau;
        for (int k = 1; k <= grid; ++k) {
            double cur = offset(double(k) / grid) - tau;
            if ((prev <= 0) != (cur <= 0) || cur == 0) brackets.push_back({double(k - 1) / grid, double(k) / grid});
            prev = cur;
        }
        for (auto [a, b] : brackets) {
            int iters = 0;
            double s = bisect(a, b, &iters);
            if (std::abs(offset(s) - tau) > tol.eps_len) continue;
            try {
                PieceImmersion out = build(s);
                out.report.max_offset = g.max_offset;
                out.report.min_offset = g.min_offset;
                auto built = [&](double e) {
                    try {
                        return build(e).report.achieved;
                    } catch (const FoldError&) {
                        return std::numeric_limits<double>::quiet_NaN();
                    }
                };
                out.report.max_offset_built = built(1.0);
                out.report.min_offset_built = built(0.0);
                out.report.iterations = iters;
                out.report.theta = s;
                out.report.branch = fam.branch;
                return out;
            } catch (const FoldError& e) {
                last_error = e.what();
            }
        }
    }
    throw FoldError("general fold family failed: " + last_error);
}

PieceImmersion immerse_corner(const Piece& pc, int piece_id, const Tolerance& tol) {
    if (pc.kind != PieceKind::First && pc.kind != PieceKind::Last)
        throw FoldError("immerse_corner expects a first or last piece");
    bool first = pc.kind == PieceKind::First;
    std::vector<Point2> bot = pc.bottom, top = pc.top;
    std::vector<double> bot_s = pc.bottom_s;
    if (!first) {
        std::reverse(bot.begin(), bot.end());
        std::reverse(top.begin(), top.end());
        std::reverse(bot_s.begin(), bot_s.end());
    }
    if (bot.size() < 2 || top.size() < 2) throw FoldError("corner piece with an empty side");
    PieceFolder pf(pc.polygon, piece_id, tol);
    int folds = 0;
    folds += int(fold_chain_onto_line(pf, bot).size());
    folds += int(fold_chain_onto_line(pf, top).size());
    Point2 corner = bot.front();
    Point2 db = normalized(bot[1] - corner), dt = normalized(top[1] - corner);
    // interior angle at the corner runs counterclockwise from the bottom side (first) or top side (last)
    Point2 bis = first ? rotate(db, 0.5 * ccw_sweep(db, dt)) : rotate(dt, 0.5 * ccw_sweep(dt, db));
    if (std::abs(cross(db, dt)) > 1e-15 || dot(db, dt) < 0) {
        pf.image_fold(Line{corner, bis}, corner + dt);
        ++folds;
    }
    pf.apply(to_axis(corner, db, bot_s.front(), first ? 1.0 : -1.0));
    return finish(pf, pc, piece_id, folds);
}

PieceImmersion immerse_Q_family(const Piece& pc, int piece_id, const Tolerance& tol) {
    if (pc.kind != PieceKind::Pocket) throw FoldError("immerse_Q_family expects a pocket");
    if (pc.chain.size() < 2) throw FoldError("pocket without a geodesic side");
    PieceFolder pf(pc.polygon, piece_id, tol);
    int folds = int(fold_chain_onto_line(pf, pc.chain).size());
    pf.apply(to_axis(pc.chain[0], normalized(pc.chain[1] - pc.chain[0]), pc.chain_s.front(), 1.0));
    return finish(pf, pc, piece_id, folds);
}

std::vector<Point2> shortest_path_in_polygon(const std::vector<Point2>& poly_in, int s, int t, const Tolerance& tol) {
    std::vector<Point2> poly = poly_in;
    const size_t n = poly.size();
    if (s < 0 || t < 0 || size_t(s) >= n || size_t(t) >= n) throw std::out_of_range("shortest_path_in_polygon");
    if (signed_area(poly) < 0) throw KirigamiError("shortest_path_in_polygon: polygon must be counterclockwise");
    auto visible = [&](size_t i, size_t j) {
        if (j == (i + 1) % n || i == (j + 1) % n) return true;
        Segment seg{poly[i], poly[j]};
        std::vector<double> cuts{0.0, 1.0};
        double len2 = dot(seg.b - seg.a, seg.b - seg.a);
        for (size_t k = 0; k < n; ++k) {
            Segment e{poly[k], poly[(k + 1) % n]};
            Intersection x = seg_intersect(seg, e, tol);
            if (x.kind == Intersection::Kind::Empty) continue;
            if (x.kind == Intersection::Kind::Point && !x.at_endpoint) return false;
            if (x.kind == Intersection::Kind::Point) cuts.push_back(dot(x.point - seg.a, seg.b - seg.a) / len2);
        }
        std::sort(cuts.begin(), cuts.end());
        for (size_t k = 0; k + 1 < cuts.size(); ++k) {
            if (cuts[k + 1] - cuts[k] <= 1e-12) continue;
            Point2 mid = lerp(seg.a, seg.b, 0.5 * (cuts[k] + cuts[k + 1]));
            if (polygon_contains_unchecked(poly, mid, tol) == Containment::Outside) return false;
        }
        return true;
    };
    std::vector<double> d(n, std::numeric_limits<double>::infinity());
    std::vector<int> prev(n, -1);
    using QE = std::pair<double, size_t>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    d[s] = 0;
    pq.push({0, size_t(s)});
    while (!pq.empty()) {
        auto [dv, v] = pq.top();
        pq.pop();
        if (dv > d[v]) continue;
        if (int(v) == t) break;
        for (size_t w = 0; w < n; ++w) {
            if (w == v) continue;
            double nd = dv + dist(poly[v], poly[w]);
            if (nd < d[w] && visible(v, w)) {
                d[w] = nd;
                prev[w] = int(v);
                pq.push({nd, w});
            }
        }
    }
    std::vector<Point2> path;
    for (int v = t; v >= 0; v = prev[v]) path.push_back(poly[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

Assembly assemble(const KirigamiSpec& spec, const RegionDecomposition& dec, const Tolerance& tol) {
    if (!dec.terminals_on_boundary)
        throw FoldError("p and q must lie on the domain boundary for the exterior to be covered");
    Assembly out;
    for (size_t i = 0; i < dec.pieces.size(); ++i) {
        const Piece& pc = dec.pieces[i];
        PieceImmersion pi;
        switch (pc.kind) {
            case PieceKind::First:
            case PieceKind::Last:
                pi = immerse_corner(pc, int(i), tol);
                break;
            case PieceKind::Middle: {
                // single cuts on both sides: straight fold lines suffice
                bool straight = pc.left_path.size() <= 2 && pc.right_path.size() <= 2;
                auto first = straight ? immerse_P_simple : immerse_P_general;
                auto second = straight ? immerse_P_general : immerse_P_simple;
                try {
                    pi = first(pc, int(i), tol);
                } catch (const FoldError& e) {
                    try {
                        pi = second(pc, int(i), tol);
                    } catch (const FoldError&) {
                        throw e;
                    }
                }
                break;
            }
            case PieceKind::Pocket:
                pi = immerse_Q_family(pc, int(i), tol);
                break;
        }
        for (auto& f : pi.faces) out.u.faces.push_back(std::move(f));
        out.reports.push_back(pi.report);
    }
    analyze_adjacency(out.u, spec, tol);
    for (auto& se : out.u.shared)
        if (!se.on_cut && se.mismatch >= tol.eps_len)
            throw FoldError("pieces do not agree along a shared edge (mismatch " + fmt(se.mismatch) + ")");
    return out;
}

ImmersionReport verify_immersion(const PiecewiseIsometry& u, const std::vector<GeodesicPolygonal>& geodesics,
                                 const KirigamiSpec& spec, double distance) {
    ImmersionReport r;
    for (auto& f : u.faces) r.orthogonality = std::max(r.orthogonality, f.m.orthogonality_error());
    for (auto& se : u.shared)
        if (!se.on_cut) r.continuity = std::max(r.continuity, se.mismatch);
    auto worst = [&](Point2 x, Point2 want, bool& found) {
        double e = 0.0;
        auto imgs = u.images(x, 1e-9);
        found = !imgs.empty();
        for (auto& y : imgs) e = std::max(e, dist(y, want));
        return e;
    };
    bool fp = false, fq = false;
    r.up_error = worst(spec.p, {0, 0}, fp);
    r.uq_error = worst(spec.q, {distance, 0}, fq);
    if (!fp) r.failures.push_back("p is not covered by any face");
    if (!fq) r.failures.push_back("q is not covered by any face");
    // A geodesic point on L has one limit per side of the cut. Faces are picked
    // by a probe just inside the edge, offset to a permitted side when the
    // edge runs along a cut.
    SlitComplex cx = build_slit_complex(spec);
    auto near_faces = [&](Point2 a, Point2 b, double t, int bit, Point2 want, bool& found) {
        double len = dist(a, b);
        Point2 dir = (b - a) * (1.0 / len);
        Point2 probe = lerp(a, b, std::clamp(t, 1e-6, 1.0 - 1e-6));
        if (bit == 1) probe = probe + Point2{-dir.y, dir.x} * (1e-7 * len);
        if (bit == 2) probe = probe + Point2{dir.y, -dir.x} * (1e-7 * len);
        Point2 x = lerp(a, b, t);
        double e = 0.0;
        found = false;
        for (auto& f : u.faces)
            if (polygon_contains_unchecked(f.poly, probe, {1e-12, 1e-12}) != Containment::Outside) {
                found = true;
                e = std::max(e, dist(f.m.apply(x), want));
            }
        return e;
    };
    for (auto& g : geodesics) {
        auto s = g.arclengths();
        std::vector<int> sides = cut_edge_sides(g, spec, cx);
        for (size_t i = 0; i + 1 < g.waypoints.size(); ++i) {
            Point2 a = g.waypoints[i].pt, b = g.waypoints[i + 1].pt;
            int mask = i < sides.size() ? sides[i] : 0;
            for (double t : {0.0, 0.5, 1.0}) {
                Point2 want{s[i] + t * (s[i + 1] - s[i]), 0.0};
                bool found = false;
                double e = std::numeric_limits<double>::infinity();
                for (int bit : {0, 1, 2}) {
                    if (mask == 0 ? bit != 0 : !(mask & bit)) continue;
                    bool f = false;
                    double es = near_faces(a, b, t, bit, want, f);
                    if (f) {
                        found = true;
                        e = std::min(e, es);
                    }
                }
                if (!found) {
                    r.failures.push_back("geodesic point is not covered by any face");
                    e = 0.0;
                }
                r.rectification = std::max(r.rectification, e);
            }
        }
    }
    double area = 0.0;
    for (auto& f : u.faces) area += signed_area(f.poly);
    r.area_error = std::abs(area - signed_area(spec.domain));

    if (r.orthogonality >= 1e-9) r.failures.push_back("face map is not an isometry: " + fmt(r.orthogonality));
    if (r.continuity >= 1e-8) r.failures.push_back("map is discontinuous off the cuts: " + fmt(r.continuity));
    if (r.up_error >= 1e-8) r.failures.push_back("u(p) differs from the origin by " + fmt(r.up_error));
    if (r.uq_error >= 1e-8) r.failures.push_back("u(q) differs from (D, 0) by " + fmt(r.uq_error));
    if (r.rectification >= 1e-8) r.failures.push_back("geodesics are not mapped isometrically onto the axis: " +
                                                      fmt(r.rectification));
    if (r.area_error >= 1e-8) r.failures.push_back("faces do not tile the domain: area error " + fmt(r.area_error));
    // deduplicate coverage messages
    std::sort(r.failures.begin(), r.failures.end());
    r.failures.erase(std::unique(r.failures.begin(), r.failures.end()), r.failures.end());
    return r;
}

}  // namespace kirigami
