#pragma once

#include "ansyz/rat.hpp"
#include "ansyz/toric.hpp"
#include "ansyz/wring.hpp"

#include <map>
#include <string>
#include <vector>

namespace ansyz::wrapped {

// Intersection point q_j of the w-times-wrapped Lagrangian over the thimble
// pair, with j the position in the conic fiber.
struct Generator {
    int i0 = 0, i1 = 0;
    long w = 0;
    wring::Monomial q;
    long j = 0;

    bool operator<(const Generator& o) const
    {
        if (w != o.w) return w < o.w;
        if (!(q == o.q)) return q < o.q;
        return j < o.j;
    }
    bool operator==(const Generator& o) const
    {
        return i0 == o.i0 && i1 == o.i1 && w == o.w && q == o.q && j == o.j;
    }
    std::string str() const;
};

std::vector<Generator> wrapped_generators(int i0, int i1, long w, int n);

// Integer combination of generators in a fixed block and level.
struct GenCombo {
    int i0 = 0, i1 = 0;
    long w = 0;
    std::map<std::pair<wring::Monomial, long>, Int> terms;  // (q, j) -> coeff

    bool operator==(const GenCombo& o) const
    {
        return i0 == o.i0 && i1 == o.i1 && w == o.w && terms == o.terms;
    }
};

Generator continuation(const Generator& g, int n);

// m2(g2, g1) by the fiberwise binomial rule: single base triangle, l extra
// sheets from the zeros of w it covers.
GenCombo wrapped_product(const Generator& g2, const Generator& g1, int n);

// Bilinear extension to combinations.
GenCombo wrapped_product(const GenCombo& c2, const GenCombo& c1, int n);

// Element of the direct sum of twisted graded pieces at a fixed level.
struct BElement {
    int i0 = 0, i1 = 0;
    long w = 0;
    std::map<std::pair<long, wring::Monomial>, Int> terms;  // (twist, monomial) -> coeff

    bool is_zero() const { return terms.empty(); }
    bool operator==(const BElement& o) const
    {
        return i0 == o.i0 && i1 == o.i1 && w == o.w && terms == o.terms;
    }
    std::string str() const;
};

void b_add_term(BElement& e, long twist, const wring::Monomial& m, const Int& c);

BElement psi(const Generator& g, int n);
BElement psi(const GenCombo& c, int n);

// Multiplication by sign*(s-1) followed by the level bump.
BElement b_structure_map(const BElement& e, int sign = +1);

BElement b_multiply(const BElement& a, const BElement& b);

// Q/(1-s)^pole with (s-1) not dividing Q in canonical form.
struct Fraction {
    BElement numerator;
    long pole = 0;
};

// Divides by (s-1) once if possible (column-wise telescoping).
bool divide_by_s_minus_1(const BElement& e, BElement& out);

Fraction canonicalize(BElement numerator, long pole);
Fraction fraction_multiply(const Fraction& a, const Fraction& b);
bool fraction_equal(const Fraction& a, const Fraction& b);

struct PsiReport {
    bool pass = false;
    bool continuation_compatible = true;   // psi . continuation == structure . psi
    bool multiplicative = true;            // psi(m2(g2,g1)) == psi(g2) psi(g1)
    bool injective = true;                 // per level, exact rank
    bool surjectivity_stabilized = true;   // every basis element reached
    long max_promotions_needed = 0;
    size_t pairs_checked = 0;
    bool index_bound_ok = true;            // j+k+l never exceeds ord(p)+w1+w2
    std::vector<std::string> failures;
};

PsiReport verify_psi_ring_isom(int n, long w_max, int sign = +1);

struct LocalizedTable {
    std::vector<size_t> dim;            // level dimension, monomial count route
    std::vector<size_t> dim_canonical;  // canonical-form partition route
    std::vector<size_t> new_classes;    // classes of pole order exactly m
    bool routes_agree = false;
    bool structure_injective = true;    // (s-1) multiplication has full rank
};

LocalizedTable localized_hom_block(int i0, int i1, int n, int level_cutoff);

// Pole-filtered dimensions of matched column windows on the two localized
// sides: twisted pieces over the weighted line against boxed sections on the
// resolution. Each side decomposes into free rank-one columns gaining one
// class per pole order; the windows take C columns either side of the
// minimal column and H heights above each column floor.
struct MirrorBlock {
    int i0 = 0, i1 = 0;
    std::vector<size_t> wproj_dim;  // per pole order
    std::vector<size_t> toric_dim;
    std::vector<long> wproj_profile;  // column floors (twists), window order
    std::vector<Int> toric_profile;   // column floors (heights), window order
    bool dims_equal = false;
    bool increments_are_columns = false;  // both sides gain #columns per pole
    bool toric_stabilized = false;        // box certificate from the fan side
};

struct MirrorComparison {
    int n = 0;
    std::vector<MirrorBlock> blocks;
    bool pass = false;
};

MirrorComparison compare_with_mirror_side(int n, int pole_cutoff, int column_halfwidth = 2,
                                          int rel_height = 3);

} // namespace ansyz::wrapped
