#pragma once

#include "ansyz/rat.hpp"

#include <array>
#include <optional>
#include <vector>

namespace ansyz::toric {

// Rays of the resolution fan of the A_n surface singularity: v_i = (i-1, 1)
// for i = 0..n+1, with maximal cones spanned by adjacent pairs.
struct Fan {
    int n = 0;
    std::vector<std::array<Int, 2>> rays;

    size_t ray_count() const { return rays.size(); }
    size_t cone_count() const { return rays.size() - 1; }
};

Fan build_fan(int n);

// D = sum a_i D_i over the rays.
struct TorusDivisor {
    std::vector<Int> coeff;
};

// Degrees (D.E_1, ..., D.E_n) on the compact exceptional curves.
struct DivisorClass {
    std::vector<Int> deg;

    bool operator==(const DivisorClass& o) const { return deg == o.deg; }
};

struct LatticePoint {
    Int x, y;
    bool operator==(const LatticePoint& o) const { return x == o.x && y == o.y; }
    bool operator<(const LatticePoint& o) const { return x < o.x || (x == o.x && y < o.y); }
};

struct Box {
    Int x_lo, x_hi, y_lo, y_hi;
    bool is_empty() const { return x_lo > x_hi || y_lo > y_hi; }
};

Int pairing(const LatticePoint& m, const std::array<Int, 2>& ray);

TorusDivisor principal_divisor(const Fan& fan, const LatticePoint& m);

// The character m with div(chi^m) = D, when D is principal.
std::optional<LatticePoint> principal_character(const Fan& fan, const TorusDivisor& D);

DivisorClass divisor_class(const TorusDivisor& D, const Fan& fan);

// A divisor supported on D_0..D_{n-1} realizing the class; section of the
// degree isomorphism.
TorusDivisor bundle_with_degrees(const DivisorClass& d, const Fan& fan);

TorusDivisor subtract(const TorusDivisor& a, const TorusDivisor& b);

std::vector<LatticePoint> sections_in_box(const TorusDivisor& D, const Fan& fan, const Box& box);

// Dimension table of boxed global sections with poles of order <= m along the
// anticanonical divisor {h = 1}, h the height character chi^(0,1). Level m
// holds dim of the span of all sigma/(h-1)^j with j <= m and sigma a boxed
// section; columns decompose the computation by the first coordinate of M.
struct HomTable {
    std::vector<size_t> dim;        // indexed by pole order m
    std::vector<size_t> increment;  // dim[m] - dim[m-1]
    std::vector<bool> stabilized;   // per level, under one height step
    size_t nonempty_columns = 0;
    bool all_columns_visible = false;  // no column's floor lies above the box
};

HomTable hom_on_complement(const DivisorClass& d_src, const DivisorClass& d_tgt, int pole_cutoff,
                           const Box& box, const Fan& fan);

// Floor of the section column over first coordinate c (min feasible height),
// for the divisor bundle_with_degrees(d_tgt - d_src).
Int column_floor(const TorusDivisor& D, const Fan& fan, const Int& c);

} // namespace ansyz::toric
