#pragma once

#include "ansyz/geom.hpp"
#include "ansyz/toric.hpp"

#include <random>
#include <string>
#include <vector>

namespace ansyz::paths {

using geom::Pt;

// Conic degeneration points 0 < a_0 < ... < a_n on the positive real axis.
struct Punctures {
    std::vector<Rat> a;

    int n() const { return int(a.size()) - 1; }
    void validate() const;
};

// Finite polyline standing in for a path from 0 to infinity; the radial
// extensions beyond the first and last vertex are crossing-free because the
// cut segments all lie in the annulus a_0 <= |z| <= a_n.
struct PLPath {
    std::vector<Pt> v;
};

struct Admissibility {
    bool ok = false;
    std::string violation;  // first violation, empty when ok
};

Admissibility is_admissible(const PLPath& path, const Punctures& punct);

// Strictly increasing modulus along every segment. Precondition: admissible.
bool is_strongly_admissible(const PLPath& path);

struct WindingVector {
    std::vector<long> w;
    bool operator==(const WindingVector& o) const { return w == o.w; }
};

// Signed transverse crossings with each cut segment [a_{i-1}, a_i]; a
// crossing counts +orientation when the imaginary part increases through it.
WindingVector winding_by_crossings(const PLPath& path, const Punctures& punct, int orientation = +1);

// Same vector from the continuous angle lift of gamma/|gamma|, tracked with
// integer quarter-turn bookkeeping; requires strong admissibility.
WindingVector winding_by_lift(const PLPath& path, const Punctures& punct);

// Canonical strongly admissible representative passing through (-a_i, 0) for
// every i, with the same crossing pattern.
PLPath normalize_path(const PLPath& path, const Punctures& punct);

// Degrees on the exceptional curves of the transform: d_i = -w_i.
toric::DivisorClass syz_transform(const PLPath& path, const Punctures& punct);

PLPath gamma0(const Punctures& punct);

// Deterministic spiral polyline with the prescribed winding vector. Vertices
// are small rationals; strong admissibility is verified exactly.
PLPath spiral_path(const Punctures& punct, const std::vector<long>& winding);

// Seeded random strongly admissible path (random winding + modulus jitter).
PLPath random_strongly_admissible(const Punctures& punct, std::mt19937_64& rng, long max_abs_winding = 2);

// Replaces one safely-placed segment by a two-vertex bump whose hull avoids
// the cut locus, preserving the homotopy class. May break strong
// admissibility; admissibility is preserved.
PLPath insert_null_detour(const PLPath& path, const Punctures& punct, std::mt19937_64& rng);

// Numeric section of the torus fibration over the base point (s, lambda),
// covering the Lagrangian lift of the negative real axis.
struct SectionPoint {
    double s = 0, lambda = 0;
    double z = 0, u = 0, v = 0;  // all real on this section
    double g = 0;                // f(-e^s)/(-e^s)
};

SectionPoint section_L0(double s, double lambda, const Punctures& punct);

double residency_error(const SectionPoint& p);                       // |uv - g|
double fibration_error(const SectionPoint& p);                      // |rho(sigma) - (s,lambda)|
double symplectic_pullback_fd(double s, double lambda, const Punctures& punct, double h = 1e-4);

} // namespace ansyz::paths
