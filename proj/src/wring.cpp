#include "ansyz/wring.hpp"

namespace ansyz::wring {

std::string Monomial::str() const
{
    if (p == 0 && q == 0) return "1";
    std::string out;
    if (p > 0) {
        out += "x";
        if (p > 1) out += "^" + std::to_string(p);
    }
    if (q > 0) {
        out += "y";
        if (q > 1) out += "^" + std::to_string(q);
    }
    return out;
}

long ord(const Monomial& m) { return m.p < m.q ? m.p : m.q; }

Monomial s_shift(const Monomial& m, long e)
{
    if (m.p + e < 0 || m.q + e < 0) throw invalid_parameter("s_shift: result not a monomial");
    return {m.p + e, m.q + e};
}

Monomial residue(const Monomial& m) { return s_shift(m, -ord(m)); }

long block_degree(int i0, int i1, long k, int n) { return long(i1 - i0) + k * long(n + 1); }

std::vector<Monomial> degree_basis(long d, int n)
{
    std::vector<Monomial> out;
    if (d < 0) return out;
    for (long q = 0; n * q <= d; ++q) out.push_back(Monomial{d - n * q, q});
    return out;
}

size_t degree_dim(long d, int n) { return d < 0 ? 0 : size_t(d / n + 1); }

Int binomial(long n, long k)
{
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace ansyz::wring
