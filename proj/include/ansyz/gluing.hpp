#pragma once

#include "ansyz/poly.hpp"
#include "ansyz/toric.hpp"

#include <string>
#include <vector>

namespace ansyz::gluing {

enum class Side { plus, minus };
enum class Corrections { off, on };

// Substitution table on the wall-local variables (u, v, w). A map records the
// image of each variable; w is always fixed.
struct WallMap {
    std::vector<RatFn> images;  // indexed u=0, v=1, w=2

    bool operator==(const WallMap& o) const { return images == o.images; }
};

extern const std::vector<std::string> wall_var_names;

WallMap identity_wall_map();

// The semi-flat gluing across the upper/lower half wall.
WallMap uncorrected_transition(Side side);

// Instanton-corrected gluing; the two sides agree as rational maps.
WallMap corrected_transition(Side side);

// Loop around a wall point, composed from the two half-wall crossings.
// Uncorrected it is u -> u w; corrected it is the identity.
WallMap monodromy(Corrections corrections);

WallMap compose(const WallMap& outer, const WallMap& inner);

// Affine monodromy matrix around a wall point.
struct MonodromyMatrix {
    std::array<std::array<Int, 2>, 2> m{{{Int(1), Int(1)}, {Int(0), Int(1)}}};
};

// Relation set on the corrected chart cover with n+1 charts: variables
// u_0..u_n, v_1..v_{n+1}, w; wall relations u_i v_{i+1} = 1 + w and alias
// relations u_i v_i = 1.
struct CoverRelations {
    int n = 0;
    size_t nvars = 0;  // 2n+3
    std::vector<std::string> names;
    std::vector<Poly> wall;     // u_i v_{i+1} - (1 + w), i = 0..n
    std::vector<Poly> alias;    // u_i v_i - 1, i = 1..n
    std::vector<Poly> overlap;  // u_{i-1} v_i - u_i v_{i+1}, i = 1..n

    size_t u_index(int i) const { return size_t(i); }
    size_t v_index(int i) const { return size_t(n + 1 + (i - 1)); }
    size_t w_index() const { return nvars - 1; }
};

CoverRelations glued_cover_relations(int n);

// Chart-to-chart transition on (u_i, w): u_{i+1} = u_i / (1 + w). The cocycle
// check composes these across all triples.
RatFn chart_transition_u(int steps);
bool cocycle_holds(int n);

// Verifies that the corrected cover is the chart gluing of the toric
// resolution, exhibiting each chart variable as a character monomial with
// w = h - 1. Returns the witness as printable assignments.
struct ResolutionMatch {
    bool matched = false;
    std::vector<std::string> witness;  // "u_0 = x^(1,1)" style lines
    std::string failure;
};

ResolutionMatch match_resolution_charts(int n);

} // namespace ansyz::gluing
