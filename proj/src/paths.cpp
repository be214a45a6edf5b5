#include "ansyz/paths.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace ansyz::paths {

void Punctures::validate() const
{
    if (a.empty()) throw invalid_parameter("punctures: need at least a_0");
    Rat prev(0);
    for (auto& ai : a) {
        if (ai <= prev) throw invalid_parameter("punctures: must be strictly increasing and positive");
        prev = ai;
    }
}

namespace {

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct PosClass {
    bool on_axis;
    int idx;  // half-axis or quadrant index, 0..3 counterclockwise from +x
};

PosClass classify(const Pt& p)
{
    if (p.y == 0) return {true, p.x > 0 ? 0 : 2};
    if (p.x == 0) return {true, p.y > 0 ? 1 : 3};
    if (p.x > 0 && p.y > 0) return {false, 0};
    if (p.x < 0 && p.y > 0) return {false, 1};
    if (p.x < 0 && p.y < 0) return {false, 2};
    return {false, 3};
}

int mod4(long v) { return int(((v % 4) + 4) % 4); }

// Angle-lift bookkeeping in quarter turns. On an axis the lift equals
// level*pi/2 exactly; otherwise it lies in the open quarter
// (level, level+1)*pi/2.
struct LiftState {
    long level = 0;
    bool on_axis = false;

    long floor_turns() const { return floor_div(level, 4); }
};

LiftState initial_state(const Pt& p)
{
    PosClass c = classify(p);
    if (c.on_axis) {
        static const long axis_level[4] = {0, 1, 2, -1};
        return {axis_level[c.idx], true};
    }
    static const long quad_level[4] = {0, 1, -2, -1};
    return {quad_level[c.idx], false};
}

struct AxisEvent {
    Rat t;       // parameter along the segment
    Pt point;    // crossing point
    int axis;    // half-axis index
};

std::vector<AxisEvent> interior_events(const Pt& P, const Pt& Q)
{
    std::vector<AxisEvent> ev;
    if (sgn(P.y) * sgn(Q.y) < 0) {
        Rat t = P.y / (P.y - Q.y);
        Rat xstar = (Q.x * P.y - P.x * Q.y) / (P.y - Q.y);
        if (xstar == 0) throw internal_inconsistency("lift: segment through origin");
        ev.push_back({t, Pt{xstar, Rat(0)}, xstar > 0 ? 0 : 2});
    }
    if (sgn(P.x) * sgn(Q.x) < 0) {
        Rat t = P.x / (P.x - Q.x);
        Rat ystar = (Q.y * P.x - P.y * Q.x) / (P.x - Q.x);
        if (ystar == 0) throw internal_inconsistency("lift: segment through origin");
        ev.push_back({t, Pt{Rat(0), ystar}, ystar > 0 ? 1 : 3});
    }
    std::sort(ev.begin(), ev.end(), [](const AxisEvent& a, const AxisEvent& b) { return a.t < b.t; });
    return ev;
}

bool same_ray(const Pt& P, const Pt& Q) { return geom::cross(P, Q) == 0 && geom::dot(P, Q) > 0; }

// Leaving an on-axis state into the quadrant on the counterclockwise or
// clockwise side of the half-axis.
LiftState leave_axis(const LiftState& st, int axis, const Pt& Q)
{
    bool ccw;
    switch (axis) {
        case 0: ccw = Q.y > 0; break;
        case 1: ccw = Q.x < 0; break;
        case 2: ccw = Q.y < 0; break;
        default: ccw = Q.x > 0; break;
    }
    return {ccw ? st.level : st.level - 1, false};
}

LiftState apply_crossing(const LiftState& st, int axis, long* axis_level_passed)
{
    if (st.on_axis) throw internal_inconsistency("lift: crossing from an axis state");
    if (mod4(st.level + 1) == axis) {
        if (axis_level_passed) *axis_level_passed = st.level + 1;
        return {st.level + 1, false};
    }
    if (mod4(st.level) == axis) {
        if (axis_level_passed) *axis_level_passed = st.level;
        return {st.level - 1, false};
    }
    throw internal_inconsistency("lift: non-adjacent axis crossing");
}

LiftState land_on_axis(const LiftState& st, int axis)
{
    if (st.on_axis) throw internal_inconsistency("lift: landing from an axis state");
    if (mod4(st.level + 1) == axis) return {st.level + 1, true};
    if (mod4(st.level) == axis) return {st.level, true};
    throw internal_inconsistency("lift: non-adjacent axis landing");
}

} // namespace

Admissibility is_admissible(const PLPath& path, const Punctures& punct)
{
    punct.validate();
    Admissibility res;
    const auto& v = path.v;
    if (v.size() < 2) {
        res.violation = "path needs at least two vertices";
        return res;
    }
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] == v[i + 1]) throw invalid_parameter("degenerate polyline: repeated consecutive vertices");

    const Rat a0 = punct.a.front(), an = punct.a.back();
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].x == 0 && v[i].y == 0) {
            res.violation = "vertex at the origin";
            return res;
        }
        if (v[i].y == 0 && v[i].x >= a0 && v[i].x <= an) {
            res.violation = "vertex on a cut segment";
            return res;
        }
    }
    if (!(geom::norm2(v.front()) < a0 * a0)) {
        res.violation = "first vertex modulus is not below a_0";
        return res;
    }
    if (!(geom::norm2(v.back()) > an * an)) {
        res.violation = "last vertex modulus is not above a_n";
        return res;
    }

    Pt origin{Rat(0), Rat(0)};
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        const Pt &P = v[i], &Q = v[i + 1];
        if (geom::on_segment(origin, P, Q)) {
            res.violation = "segment passes through the origin";
            return res;
        }
        for (auto& aj : punct.a)
            if (geom::on_segment(Pt{aj, Rat(0)}, P, Q)) {
                res.violation = "segment passes through a conic degeneration point";
                return res;
            }
        if (P.y == 0 && Q.y == 0) {
            Rat lo = P.x < Q.x ? P.x : Q.x, hi = P.x < Q.x ? Q.x : P.x;
            if (hi >= a0 && lo <= an) {
                res.violation = "segment overlaps the cut locus";
                return res;
            }
        }
    }

    // Strictly increasing modulus implies the polyline is injective; only
    // non-monotone paths need the quadratic self-intersection scan.
    if (!is_strongly_admissible(path)) {
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            for (size_t j = i + 1; j + 1 < v.size(); ++j) {
                if (j == i + 1) {
                    if (geom::orient(v[i], v[i + 1], v[j + 1]) == 0 &&
                        geom::dot(v[j + 1] - v[j], v[i] - v[j]) > 0) {
                        res.violation = "path backtracks along itself";
                        return res;
                    }
                    continue;
                }
                if (geom::segments_intersect(v[i], v[i + 1], v[j], v[j + 1])) {
                    res.violation = "path self-intersects";
                    return res;
                }
            }
        }
    }

    res.ok = true;
    return res;
}

bool is_strongly_admissible(const PLPath& path)
{
    const auto& v = path.v;
    if (v.size() < 2) return false;
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] == v[i + 1]) return false;
        if (geom::dot(v[i], v[i + 1] - v[i]) < 0) return false;
    }
    return true;
}

WindingVector winding_by_crossings(const PLPath& path, const Punctures& punct, int orientation)
{
    punct.validate();
    int n = punct.n();
    WindingVector wv;
    wv.w.assign(size_t(n), 0);
    const auto& v = path.v;
    const Rat a0 = punct.a.front(), an = punct.a.back();

    for (size_t k = 0; k + 1 < v.size(); ++k) {
        const Pt &P = v[k], &Q = v[k + 1];
        if (P.y == 0 && Q.y == 0) {
            Rat lo = P.x < Q.x ? P.x : Q.x, hi = P.x < Q.x ? Q.x : P.x;
            if (hi >= a0 && lo <= an) throw perturbation_error("degenerate crossing: collinear overlap");
            continue;
        }
        if (sgn(P.y) * sgn(Q.y) < 0) {
            Rat xstar = (Q.x * P.y - P.x * Q.y) / (P.y - Q.y);
            for (int i = 1; i <= n; ++i) {
                if (xstar == punct.a[i - 1] || xstar == punct.a[i])
                    throw perturbation_error("degenerate crossing: hits a conic point");
                if (xstar > punct.a[i - 1] && xstar < punct.a[i])
                    wv.w[i - 1] += (Q.y > P.y ? 1 : -1) * orientation;
            }
        } else if ((P.y == 0 && P.x >= a0 && P.x <= an) || (Q.y == 0 && Q.x >= a0 && Q.x <= an)) {
            throw perturbation_error("degenerate crossing: vertex on a cut segment");
        }
    }
    return wv;
}

WindingVector winding_by_lift(const PLPath& path, const Punctures& punct)
{
    auto adm = is_admissible(path, punct);
    if (!adm.ok) throw invalid_parameter("winding_by_lift: path not admissible: " + adm.violation);
    if (!is_strongly_admissible(path)) throw invalid_parameter("winding_by_lift: path not strongly admissible");

    int n = punct.n();
    const auto& v = path.v;
    std::vector<Rat> cut2;
    for (auto& ai : punct.a) cut2.push_back(ai * ai);

    std::vector<long> floors(size_t(n) + 1);
    size_t ci = 0;

    LiftState st = initial_state(v[0]);
    for (size_t k = 0; k + 1 < v.size(); ++k) {
        const Pt &P = v[k], &Q = v[k + 1];
        Rat nP = geom::norm2(P), nQ = geom::norm2(Q);

        while (ci < cut2.size() && cut2[ci] == nP) floors[ci++] = st.floor_turns();

        if (same_ray(P, Q)) {
            while (ci < cut2.size() && cut2[ci] > nP && cut2[ci] < nQ) floors[ci++] = st.floor_turns();
            continue;
        }

        auto events = interior_events(P, Q);
        size_t ei = 0;
        if (st.on_axis) st = leave_axis(st, classify(P).idx, Q);

        while (ci < cut2.size() && cut2[ci] > nP && cut2[ci] < nQ) {
            const Rat& target = cut2[ci];
            bool recorded = false;
            while (ei < events.size()) {
                Rat ne = geom::norm2(events[ei].point);
                if (ne > target) break;
                long axis_level = 0;
                st = apply_crossing(st, events[ei].axis, &axis_level);
                if (ne == target) {
                    floors[ci] = floor_div(axis_level, 4);
                    recorded = true;
                    ++ei;
                    break;
                }
                ++ei;
            }
            if (!recorded) floors[ci] = st.floor_turns();
            ++ci;
        }
        while (ei < events.size()) {
            st = apply_crossing(st, events[ei].axis, nullptr);
            ++ei;
        }

        PosClass cq = classify(Q);
        if (cq.on_axis)
            st = land_on_axis(st, cq.idx);
        else if (mod4(st.level) != cq.idx)
            throw internal_inconsistency("lift: quadrant bookkeeping out of sync");
    }
    if (ci != cut2.size()) throw internal_inconsistency("lift: not all cut moduli were passed");

    WindingVector wv;
    for (int i = 1; i <= n; ++i) wv.w.push_back(floors[i] - floors[i - 1]);
    return wv;
}

toric::DivisorClass syz_transform(const PLPath& path, const Punctures& punct)
{
    auto adm = is_admissible(path, punct);
    if (!adm.ok) throw invalid_parameter("syz_transform: path not admissible: " + adm.violation);
    WindingVector w = winding_by_crossings(path, punct);
    toric::DivisorClass d;
    for (long wi : w.w) d.deg.push_back(Int(-wi));
    return d;
}

PLPath gamma0(const Punctures& punct)
{
    punct.validate();
    PLPath p;
    p.v.push_back(Pt{-punct.a.front() / 8, Rat(0)});
    p.v.push_back(Pt{-punct.a.back() * 8, Rat(0)});
    return p;
}

namespace {

// One winding band: spiral from (-r_from, 0) to (-r_to, 0) turning |w| full
// times (counterclockwise for w > 0). Directions are sampled at rational
// points of the circle so every vertex is exact; sampling avoids the axes so
// no vertex lands on the cut locus.
void append_band(std::vector<Pt>& out, const Rat& r_from, const Rat& r_to, long w)
{
    if (w == 0) {
        out.push_back(Pt{-r_to, Rat(0)});
        return;
    }
    long absw = w > 0 ? w : -w;
    Rat ratio = r_to / r_from;
    long m = 8;
    {
        Rat need = Rat(64 * absw) / (ratio - 1);
        Int ceilneed = rat_ceil(need);
        long mm = ceilneed.convert_to<long>();
        if (mm > m) m = mm;
    }

    for (int attempt = 0; attempt < 4; ++attempt, m *= 2) {
        std::vector<Pt> band;
        long S = 4 * absw * m;
        Rat delta = Rat(8, m * m);
        bool ok = true;
        Pt prev{-r_from, Rat(0)};
        for (long k = 0; k < S && ok; ++k) {
            long q = k / m, j = k % m;
            // direction = i^q * (-1,0) * ((m^2-t^2, +-2tm)/(m^2+t^2)), t = j+1/2
            Rat t(2 * j + 1, 2);
            Rat den = Rat(m) * Rat(m) + t * t;
            Rat c = (Rat(m) * Rat(m) - t * t) / den;
            Rat s = Rat(2) * t * Rat(m) / den;
            if (w < 0) s = -s;
            // rotate by quarter turns: multiply by i^q (or (-i)^q clockwise)
            for (long r = 0; r < q % 4; ++r) {
                Rat nc = w > 0 ? -s : s;
                Rat ns = w > 0 ? c : -c;
                s = ns;
                c = nc;
            }
            // base direction (-1, 0)
            Rat dx = -c, dy = -s;
            Rat rho = r_from * (1 + Rat(k + 1) * delta);
            Pt cur{rho * dx, rho * dy};
            if (geom::dot(prev, cur - prev) < 0) ok = false;
            band.push_back(cur);
            prev = cur;
        }
        if (!ok) continue;
        Pt last{-r_to, Rat(0)};
        if (geom::dot(prev, last - prev) < 0) continue;
        if (!(geom::norm2(prev) < r_to * r_to)) continue;
        out.insert(out.end(), band.begin(), band.end());
        out.push_back(last);
        return;
    }
    throw internal_inconsistency("spiral band construction failed");
}

} // namespace

PLPath spiral_path(const Punctures& punct, const std::vector<long>& winding)
{
    punct.validate();
    int n = punct.n();
    if ((int)winding.size() != n) throw invalid_parameter("spiral_path: winding length mismatch");

    PLPath p;
    p.v.push_back(Pt{-punct.a.front() / 2, Rat(0)});
    p.v.push_back(Pt{-punct.a.front(), Rat(0)});
    for (int i = 1; i <= n; ++i) append_band(p.v, punct.a[i - 1], punct.a[i], winding[i - 1]);
    p.v.push_back(Pt{-punct.a.back() * 2, Rat(0)});
    return p;
}

PLPath normalize_path(const PLPath& path, const Punctures& punct)
{
    auto adm = is_admissible(path, punct);
    if (!adm.ok) throw invalid_parameter("normalize_path: path not admissible: " + adm.violation);
    WindingVector w = winding_by_crossings(path, punct);
    return spiral_path(punct, w.w);
}

PLPath random_strongly_admissible(const Punctures& punct, std::mt19937_64& rng, long max_abs_winding)
{
    std::uniform_int_distribution<long> wdist(-max_abs_winding, max_abs_winding);
    std::vector<long> w;
    for (int i = 0; i < punct.n(); ++i) w.push_back(wdist(rng));
    PLPath p = spiral_path(punct, w);

    // Mild modulus jitter away from the exact band anchors; verified exactly
    // and dropped wholesale if it breaks anything.
    std::uniform_int_distribution<int> jd(0, 64);
    PLPath q = p;
    for (size_t k = 1; k + 1 < q.v.size(); ++k) {
        if (q.v[k].y == 0) continue;  // keep anchors on the negative axis
        Rat f = Rat(4096 + jd(rng), 4096);
        q.v[k].x *= f;
        q.v[k].y *= f;
    }
    if (is_strongly_admissible(q) && is_admissible(q, punct).ok &&
        winding_by_crossings(q, punct) == winding_by_crossings(p, punct))
        return q;
    return p;
}

PLPath insert_null_detour(const PLPath& path, const Punctures& punct, std::mt19937_64& rng)
{
    const auto& v = path.v;
    std::vector<size_t> candidates;
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i].x < 0 && v[i + 1].x < 0) candidates.push_back(i);
    if (candidates.empty()) return path;
    std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);

    for (int attempt = 0; attempt < 16; ++attempt) {
        size_t i = candidates[pick(rng)];
        Pt P = v[i], Q = v[i + 1];
        Pt d = Q - P;
        Pt nrm{-d.y, d.x};
        for (int s = 0; s < 2; ++s, nrm = Pt{d.y, -d.x}) {
            Rat scale(1, 64);
            Pt A{P.x + d.x / 3 + nrm.x * scale, P.y + d.y / 3 + nrm.y * scale};
            Pt B{P.x + 2 * d.x / 3 + nrm.x * scale, P.y + 2 * d.y / 3 + nrm.y * scale};
            if (A.x >= 0 || B.x >= 0) continue;
            PLPath out;
            out.v.assign(v.begin(), v.begin() + i + 1);
            out.v.push_back(A);
            out.v.push_back(B);
            out.v.insert(out.v.end(), v.begin() + i + 1, v.end());
            if (is_admissible(out, punct).ok &&
                winding_by_crossings(out, punct) == winding_by_crossings(path, punct))
                return out;
        }
    }
    return path;
}

SectionPoint section_L0(double s, double lambda, const Punctures& punct)
{
    punct.validate();
    if (!(std::abs(s) < 500.0)) throw invalid_parameter("section_L0: s out of representable range");
    SectionPoint p;
    p.s = s;
    p.lambda = lambda;
    p.z = -std::exp(s);
    double f = 1.0;
    for (auto& ai : punct.a) f *= (p.z - ai.convert_to<double>());
    p.g = f / p.z;
    double r = std::sqrt(lambda * lambda + p.g * p.g);
    p.u = std::sqrt(r + lambda);
    p.v = (p.g >= 0 ? 1.0 : -1.0) * std::sqrt(r - lambda);
    return p;
}

double residency_error(const SectionPoint& p) { return std::abs(p.u * p.v - p.g); }

double fibration_error(const SectionPoint& p)
{
    double ds = std::abs(std::log(std::abs(p.z)) - p.s);
    double dl = std::abs(0.5 * (p.u * p.u - p.v * p.v) - p.lambda);
    return std::max(ds, dl);
}

double symplectic_pullback_fd(double s, double lambda, const Punctures& punct, double h)
{
    using C = std::complex<double>;
    auto at = [&](double ss, double ll) {
        SectionPoint p = section_L0(ss, ll, punct);
        return std::array<C, 3>{C(p.z, 0), C(p.u, 0), C(p.v, 0)};
    };
    auto pp = at(s + h, lambda), pm = at(s - h, lambda);
    auto qp = at(s, lambda + h), qm = at(s, lambda - h);
    std::array<C, 3> ds_, dl_;
    for (int i = 0; i < 3; ++i) {
        ds_[i] = (pp[i] - pm[i]) / (2 * h);
        dl_[i] = (qp[i] - qm[i]) / (2 * h);
    }
    C z = at(s, lambda)[0];
    C total(0, 0);
    // dz wedge dzbar / |z|^2 term, then du wedge dubar and dv wedge dvbar
    total += (ds_[0] * std::conj(dl_[0]) - dl_[0] * std::conj(ds_[0])) / std::norm(z);
    total += ds_[1] * std::conj(dl_[1]) - dl_[1] * std::conj(ds_[1]);
    total += ds_[2] * std::conj(dl_[2]) - dl_[2] * std::conj(ds_[2]);
    C omega = C(0, -0.5) * total;
    return std::abs(omega);
}

} // namespace ansyz::paths
