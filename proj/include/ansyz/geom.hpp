#pragma once

#include "ansyz/rat.hpp"

namespace ansyz::geom {

struct Pt {
    Rat x, y;

    Pt operator-(const Pt& o) const { return {x - o.x, y - o.y}; }
    Pt operator+(const Pt& o) const { return {x + o.x, y + o.y}; }
    bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
};

inline Rat cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }
inline Rat norm2(const Pt& a) { return a.x * a.x + a.y * a.y; }

// Sign of the signed area of (a, b, c).
inline int orient(const Pt& a, const Pt& b, const Pt& c) { return sgn(cross(b - a, c - a)); }

// p on the closed segment [a, b].
inline bool on_segment(const Pt& p, const Pt& a, const Pt& b)
{
    if (orient(a, b, p) != 0) return false;
    return dot(p - a, p - b) <= 0;
}

// Closed segments intersect at all (proper crossing, touch, or overlap).
inline bool segments_intersect(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2)
{
    int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
        if (o1 != 0 || o2 != 0) {
            if (o3 != 0 || o4 != 0) return true;
        }
    }
    if (o1 == 0 && on_segment(q1, p1, p2)) return true;
    if (o2 == 0 && on_segment(q2, p1, p2)) return true;
    if (o3 == 0 && on_segment(p1, q1, q2)) return true;
    if (o4 == 0 && on_segment(p2, q1, q2)) return true;
    return false;
}

} // namespace ansyz::geom
