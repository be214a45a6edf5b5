#pragma once

#include "ansyz/rat.hpp"

#include <string>
#include <vector>

namespace ansyz::wring {

// Monomial x^p y^q in the coordinate ring of the weighted projective line
// with deg x = 1, deg y = n.
struct Monomial {
    long p = 0, q = 0;

    long degree(int n) const { return p + long(n) * q; }
    Monomial times(const Monomial& o) const { return {p + o.p, q + o.q}; }
    bool operator==(const Monomial& o) const { return p == o.p && q == o.q; }
    bool operator<(const Monomial& o) const { return p < o.p || (p == o.p && q < o.q); }
    std::string str() const;
};

// Maximal power of s = xy dividing the monomial.
long ord(const Monomial& m);

inline Monomial s_monomial() { return Monomial{1, 1}; }

// Monomial times s^e.
Monomial s_shift(const Monomial& m, long e);

// Residue after stripping s^ord: a pure power of x or y (or 1).
Monomial residue(const Monomial& m);

// Weighted degree of Hom(O(i0) (x) omega^k, O(i1)): i1 - i0 + k(n+1).
long block_degree(int i0, int i1, long k, int n);

// Basis of the weighted-degree-d piece, ordered by increasing q (so the
// leading entry is the pure x power).
std::vector<Monomial> degree_basis(long d, int n);
size_t degree_dim(long d, int n);

Int binomial(long n, long k);

} // namespace ansyz::wring
