#include "ansyz/wrapped.hpp"

#include "ansyz/linalg.hpp"

#include <algorithm>

namespace ansyz::wrapped {

std::string Generator::str() const
{
    return "(" + q.str() + ")_" + std::to_string(j) + "@w" + std::to_string(w) + "[" +
           std::to_string(i0) + "->" + std::to_string(i1) + "]";
}

std::string BElement::str() const
{
    if (terms.empty()) return "0";
    std::string out;
    for (auto& [km, c] : terms) {
        if (!out.empty()) out += " + ";
        out += c.str() + "*" + km.second.str() + "@k" + std::to_string(km.first);
    }
    return out;
}

std::vector<Generator> wrapped_generators(int i0, int i1, long w, int n)
{
    if (n < 1 || i0 < 0 || i0 > n || i1 < 0 || i1 > n || w < 0)
        throw invalid_parameter("wrapped_generators: index range");
    std::vector<Generator> out;
    long d = wring::block_degree(i0, i1, w, n);
    for (auto& q : wring::degree_basis(d, n))
        for (long j = 0; j <= wring::ord(q) + w; ++j) out.push_back(Generator{i0, i1, w, q, j});
    return out;
}

Generator continuation(const Generator& g, int n)
{
    (void)n;
    Generator out = g;
    out.w = g.w + 1;
    out.q = wring::s_shift(g.q, 1);
    out.j = g.j + 1;
    return out;
}

GenCombo wrapped_product(const Generator& g2, const Generator& g1, int n)
{
    (void)n;
    if (g1.i1 != g2.i0) throw invalid_parameter("wrapped_product: blocks not composable");
    GenCombo out;
    out.i0 = g1.i0;
    out.i1 = g2.i1;
    out.w = g1.w + g2.w;
    wring::Monomial p = g2.q.times(g1.q);
    long l = wring::ord(p) - wring::ord(g2.q) - wring::ord(g1.q);
    if (g1.j + g2.j + l > wring::ord(p) + g1.w + g2.w)
        throw internal_inconsistency("wrapped_product: fiber index overflow");
    for (long t = 0; t <= l; ++t)
        out.terms[{p, g1.j + g2.j + t}] += wring::binomial(l, t);
    return out;
}

GenCombo wrapped_product(const GenCombo& c2, const GenCombo& c1, int n)
{
    if (c1.i1 != c2.i0) throw invalid_parameter("wrapped_product: blocks not composable");
    GenCombo out;
    out.i0 = c1.i0;
    out.i1 = c2.i1;
    out.w = c1.w + c2.w;
    for (auto& [qj2, a2] : c2.terms)
        for (auto& [qj1, a1] : c1.terms) {
            Generator g2{c2.i0, c2.i1, c2.w, qj2.first, qj2.second};
            Generator g1{c1.i0, c1.i1, c1.w, qj1.first, qj1.second};
            for (auto& [qj, c] : wrapped_product(g2, g1, n).terms) {
                out.terms[qj] += a2 * a1 * c;
                if (out.terms[qj] == 0) out.terms.erase(qj);
            }
        }
    return out;
}

void b_add_term(BElement& e, long twist, const wring::Monomial& m, const Int& c)
{
    if (c == 0) return;
    auto key = std::make_pair(twist, m);
    auto it = e.terms.find(key);
    if (it == e.terms.end())
        e.terms[key] = c;
    else {
        it->second += c;
        if (it->second == 0) e.terms.erase(it);
    }
}

BElement psi(const Generator& g, int n)
{
    (void)n;
    BElement out;
    out.i0 = g.i0;
    out.i1 = g.i1;
    out.w = g.w;
    long d = wring::ord(g.q);
    wring::Monomial qp = wring::residue(g.q);
    // (s-1)^j expanded against the twist grading: s^t q' sits at twist w-d+t.
    for (long t = 0; t <= g.j; ++t) {
        Int c = wring::binomial(g.j, t);
        if ((g.j - t) % 2 == 1) c = -c;
        b_add_term(out, g.w - d + t, wring::s_shift(qp, t), c);
    }
    return out;
}

BElement psi(const GenCombo& combo, int n)
{
    BElement out;
    out.i0 = combo.i0;
    out.i1 = combo.i1;
    out.w = combo.w;
    for (auto& [qj, c] : combo.terms) {
        BElement part = psi(Generator{combo.i0, combo.i1, combo.w, qj.first, qj.second}, n);
        for (auto& [km, pc] : part.terms) b_add_term(out, km.first, km.second, pc * c);
    }
    return out;
}

BElement b_structure_map(const BElement& e, int sign)
{
    BElement out;
    out.i0 = e.i0;
    out.i1 = e.i1;
    out.w = e.w + 1;
    for (auto& [km, c] : e.terms) {
        Int sc = sign >= 0 ? c : Int(-c);
        b_add_term(out, km.first + 1, wring::s_shift(km.second, 1), sc);
        b_add_term(out, km.first, km.second, -sc);
    }
    return out;
}

BElement b_multiply(const BElement& a, const BElement& b)
{
    if (b.i1 != a.i0) throw invalid_parameter("b_multiply: blocks not composable");
    BElement out;
    out.i0 = b.i0;
    out.i1 = a.i1;
    out.w = a.w + b.w;
    for (auto& [km1, c1] : a.terms)
        for (auto& [km2, c2] : b.terms)
            b_add_term(out, km1.first + km2.first, km1.second.times(km2.second), c1 * c2);
    return out;
}

namespace {

// Column id of a monomial: the pure-power residue, encoded as signed
// exponent (+p for x^p, -q for y^q, 0 for powers of s).
long column_key(const wring::Monomial& m)
{
    auto r = wring::residue(m);
    return r.p > 0 ? r.p : -r.q;
}

BElement scale(const BElement& e, const Int& c)
{
    BElement out = e;
    if (c == 1) return out;
    for (auto& [km, coeff] : out.terms) coeff *= c;
    if (c == 0) out.terms.clear();
    return out;
}

} // namespace

bool divide_by_s_minus_1(const BElement& e, BElement& out)
{
    // Per residue column the coefficients of s^t rho satisfy
    // c = shift(a) - a for e = (s-1) a, so a_t = -sum_{u<=t} c_u and the
    // column total must vanish. The twist of s^t rho is k0 + t with k0 the
    // residue twist, recovered from any term of the column.
    struct Column {
        std::map<long, Int> coeff;  // s-power -> coefficient
        long k0 = 0;
        wring::Monomial res;
    };
    std::map<long, Column> columns;
    for (auto& [km, c] : e.terms) {
        long key = column_key(km.second);
        long t = wring::ord(km.second);
        auto& col = columns[key];
        col.coeff[t] += c;
        col.k0 = km.first - t;
        col.res = wring::residue(km.second);
    }
    BElement q;
    q.i0 = e.i0;
    q.i1 = e.i1;
    q.w = e.w > 0 ? e.w - 1 : 0;
    for (auto& [key, col] : columns) {
        Int total = 0;
        for (auto& [t, c] : col.coeff) total += c;
        if (total != 0) return false;
        long tmax = col.coeff.empty() ? 0 : col.coeff.rbegin()->first;
        Int running = 0;
        for (long t = 0; t < tmax; ++t) {
            auto it = col.coeff.find(t);
            if (it != col.coeff.end()) running += it->second;
            if (running != 0) b_add_term(q, col.k0 + t, wring::s_shift(col.res, t), -running);
        }
    }
    out = q;
    return true;
}

Fraction canonicalize(BElement numerator, long pole)
{
    Fraction f;
    f.numerator = numerator;
    f.pole = pole;
    BElement q;
    while (f.pole > 0 && divide_by_s_minus_1(f.numerator, q)) {
        f.numerator = q;
        --f.pole;
    }
    return f;
}

Fraction fraction_multiply(const Fraction& a, const Fraction& b)
{
    return canonicalize(b_multiply(a.numerator, b.numerator), a.pole + b.pole);
}

bool fraction_equal(const Fraction& a, const Fraction& b)
{
    // Promote to a common pole order and compare; promotion multiplies the
    // numerator by (s-1).
    BElement na = a.numerator, nb = b.numerator;
    long pa = a.pole, pb = b.pole;
    while (pa < pb) {
        na = b_structure_map(na, +1);
        ++pa;
    }
    while (pb < pa) {
        nb = b_structure_map(nb, +1);
        ++pb;
    }
    auto strip = [](BElement e) {
        e.w = 0;
        return e;
    };
    return strip(na) == strip(nb);
}

namespace {

// Basis of the twisted block at twists 0..kmax, with a fixed ordering.
struct BlockBasis {
    std::vector<std::pair<long, wring::Monomial>> elems;
    std::map<std::pair<long, wring::Monomial>, size_t> index;

    static BlockBasis build(int i0, int i1, long kmax, int n)
    {
        BlockBasis bb;
        for (long k = 0; k <= kmax; ++k)
            for (auto& m : wring::degree_basis(wring::block_degree(i0, i1, k, n), n)) {
                bb.index[{k, m}] = bb.elems.size();
                bb.elems.push_back({k, m});
            }
        return bb;
    }
};

std::vector<Rat> to_vector(const BElement& e, const BlockBasis& bb)
{
    std::vector<Rat> v(bb.elems.size(), Rat(0));
    for (auto& [km, c] : e.terms) {
        auto it = bb.index.find(km);
        if (it == bb.index.end()) throw internal_inconsistency("BElement outside the basis window");
        v[it->second] = Rat(c);
    }
    return v;
}

} // namespace

PsiReport verify_psi_ring_isom(int n, long w_max, int sign)
{
    PsiReport rep;
    if (n < 1 || w_max < 0) throw invalid_parameter("verify_psi_ring_isom: bad parameters");

    // (a) psi . continuation == sign-adjusted structure map . psi
    for (int i0 = 0; i0 <= n; ++i0)
        for (int i1 = 0; i1 <= n; ++i1)
            for (long w = 0; w < w_max; ++w)
                for (auto& g : wrapped_generators(i0, i1, w, n)) {
                    BElement lhs = psi(continuation(g, n), n);
                    BElement rhs = scale(b_structure_map(psi(g, n), sign), sign >= 0 ? 1 : -1);
                    rhs.w = lhs.w;
                    if (!(lhs == rhs)) {
                        rep.continuation_compatible = false;
                        rep.failures.push_back("continuation mismatch at " + g.str());
                    }
                }

    // (b) multiplicativity, including the binomial expansion of s^l
    for (int i0 = 0; i0 <= n; ++i0)
        for (int i1 = 0; i1 <= n; ++i1)
            for (int i2 = 0; i2 <= n; ++i2)
                for (long w1 = 0; w1 <= w_max; ++w1)
                    for (long w2 = 0; w1 + w2 <= w_max; ++w2)
                        for (auto& g1 : wrapped_generators(i0, i1, w1, n))
                            for (auto& g2 : wrapped_generators(i1, i2, w2, n)) {
                                ++rep.pairs_checked;
                                GenCombo prod;
                                try {
                                    prod = wrapped_product(g2, g1, n);
                                } catch (const internal_inconsistency&) {
                                    rep.index_bound_ok = false;
                                    rep.failures.push_back("fiber index overflow at " + g1.str());
                                    continue;
                                }
                                BElement lhs = psi(prod, n);
                                BElement rhs = b_multiply(psi(g2, n), psi(g1, n));
                                if (!(lhs == rhs)) {
                                    rep.multiplicative = false;
                                    rep.failures.push_back("psi not multiplicative at " + g1.str() + " * " +
                                                           g2.str());
                                }
                            }

    // (c) injectivity level by level; (d) stabilized surjectivity
    for (int i0 = 0; i0 <= n; ++i0)
        for (int i1 = 0; i1 <= n; ++i1) {
            std::vector<RatMatrix> image_at;  // psi image span at each level
            std::vector<BlockBasis> basis_at;
            long W = 2 * w_max + 1;
            for (long w = 0; w <= W; ++w) {
                BlockBasis bb = BlockBasis::build(i0, i1, 2 * w, n);
                RatMatrix img(0, bb.elems.size());
                auto gens = wrapped_generators(i0, i1, w, n);
                for (auto& g : gens) img.append_row(to_vector(psi(g, n), bb));
                if (w <= w_max && img.rank() != gens.size()) {
                    rep.injective = false;
                    rep.failures.push_back("psi not injective on level " + std::to_string(w));
                }
                image_at.push_back(std::move(img));
                basis_at.push_back(std::move(bb));
            }
            for (long w = 0; w <= w_max; ++w) {
                for (auto& km : basis_at[size_t(w)].elems) {
                    BElement e;
                    e.i0 = i0;
                    e.i1 = i1;
                    e.w = w;
                    b_add_term(e, km.first, km.second, 1);
                    bool hit = false;
                    for (long delta = 0; w + delta <= W; ++delta) {
                        if (in_row_span(image_at[size_t(w + delta)],
                                        to_vector(e, basis_at[size_t(w + delta)]))) {
                            hit = true;
                            if (delta > rep.max_promotions_needed) rep.max_promotions_needed = delta;
                            break;
                        }
                        e = b_structure_map(e, +1);
                    }
                    if (!hit) {
                        rep.surjectivity_stabilized = false;
                        rep.failures.push_back("basis element not reached from level " + std::to_string(w));
                    }
                }
            }
        }

    rep.pass = rep.continuation_compatible && rep.multiplicative && rep.injective &&
               rep.surjectivity_stabilized && rep.index_bound_ok;
    return rep;
}

LocalizedTable localized_hom_block(int i0, int i1, int n, int level_cutoff)
{
    if (level_cutoff < 0) throw invalid_parameter("localized_hom_block: negative cutoff");
    LocalizedTable t;
    t.dim.assign(level_cutoff + 1, 0);
    t.dim_canonical.assign(level_cutoff + 1, 0);
    t.new_classes.assign(level_cutoff + 1, 0);

    auto level_dim = [&](long m) {
        size_t d = 0;
        for (long k = 0; k <= 2 * m; ++k) d += wring::degree_dim(wring::block_degree(i0, i1, k, n), n);
        return d;
    };

    for (int m = 0; m <= level_cutoff; ++m) t.dim[size_t(m)] = level_dim(m);

    for (int m = 0; m <= level_cutoff; ++m) {
        size_t reachable = 0;
        if (m > 0) {
            BlockBasis big = BlockBasis::build(i0, i1, 2 * m, n);
            BlockBasis small = BlockBasis::build(i0, i1, 2 * (m - 1), n);
            RatMatrix img(0, big.elems.size());
            for (auto& km : small.elems) {
                BElement e;
                e.i0 = i0;
                e.i1 = i1;
                e.w = m - 1;
                b_add_term(e, km.first, km.second, 1);
                img.append_row(to_vector(b_structure_map(e, +1), big));
            }
            reachable = img.rank();
            if (reachable != small.elems.size()) t.structure_injective = false;
        }
        t.new_classes[size_t(m)] = t.dim[size_t(m)] - reachable;
        t.dim_canonical[size_t(m)] =
            (m == 0 ? 0 : t.dim_canonical[size_t(m - 1)]) + t.new_classes[size_t(m)];
    }
    t.routes_agree = t.dim == t.dim_canonical && t.structure_injective;
    return t;
}

namespace {

// Columns of the twisted block over the weighted line: minimal twist per
// pure-power residue, window-ordered by signed exponent.
std::vector<std::pair<long, long>> wproj_columns(int i0, int i1, int n, int halfwidth)
{
    std::vector<std::pair<long, long>> cols;  // (key, min twist)
    int need = halfwidth + 3;
    for (long a = 0, found = 0; found < need + 1; ++a) {
        long num = a - long(i1 - i0);
        if (num >= 0 && num % (n + 1) == 0) {
            cols.push_back({a, num / (n + 1)});
            ++found;
        }
        if (a > 1000) break;
    }
    for (long b = 1, found = 0; found < need; ++b) {
        long num = long(n) * b - long(i1 - i0);
        if (num >= 0 && num % (n + 1) == 0) {
            cols.push_back({-b, num / (n + 1)});
            ++found;
        }
        if (b > 1000) break;
    }
    std::sort(cols.begin(), cols.end());
    return cols;
}

template <typename K>
size_t center_index(const std::vector<std::pair<long, K>>& cols)
{
    size_t best = 0;
    for (size_t i = 1; i < cols.size(); ++i) {
        auto key_abs = [](long k) { return k < 0 ? -k : k; };
        const auto &a = cols[i], &b = cols[best];
        if (a.second < b.second ||
            (a.second == b.second &&
             (key_abs(a.first) < key_abs(b.first) ||
              (key_abs(a.first) == key_abs(b.first) && a.first < b.first))))
            best = i;
    }
    return best;
}

} // namespace

MirrorComparison compare_with_mirror_side(int n, int pole_cutoff, int column_halfwidth, int rel_height)
{
    if (n < 1 || pole_cutoff < 0) throw invalid_parameter("compare_with_mirror_side: bad parameters");
    MirrorComparison cmp;
    cmp.n = n;
    cmp.pass = true;
    auto fan = toric::build_fan(n);

    auto delta_class = [&](int i) {
        toric::DivisorClass d;
        d.deg.assign(size_t(n), Int(0));
        if (i >= 1) d.deg[size_t(i - 1)] = 1;
        return d;
    };

    int C = column_halfwidth, H = rel_height;
    for (int i0 = 0; i0 <= n; ++i0)
        for (int i1 = 0; i1 <= n; ++i1) {
            MirrorBlock blk;
            blk.i0 = i0;
            blk.i1 = i1;

            // Weighted-line side: per column the span of s^t rho (s-1)^i.
            auto wcols = wproj_columns(i0, i1, n, C);
            size_t wc = center_index(wcols);
            if (wc < size_t(C) || wc + size_t(C) >= wcols.size())
                throw internal_inconsistency("mirror comparison: window fell off the generated columns");
            std::vector<std::pair<long, long>> wwin(wcols.begin() + (wc - C), wcols.begin() + (wc + C + 1));
            for (auto& [key, k0] : wwin) blk.wproj_profile.push_back(k0);

            // Resolution side: column floors of the boxed sections.
            toric::TorusDivisor D = toric::subtract(toric::bundle_with_degrees(delta_class(i1), fan),
                                                    toric::bundle_with_degrees(delta_class(i0), fan));
            std::vector<std::pair<long, Int>> tcols;
            for (long c = -(C + 3); c <= C + 3; ++c)
                tcols.push_back({c, toric::column_floor(D, fan, Int(c))});
            size_t tcenter = 0;
            for (size_t i = 1; i < tcols.size(); ++i) {
                auto key_abs = [](long k) { return k < 0 ? -k : k; };
                const auto &a = tcols[i], &b = tcols[tcenter];
                if (a.second < b.second ||
                    (a.second == b.second && (key_abs(a.first) < key_abs(b.first) ||
                                              (key_abs(a.first) == key_abs(b.first) && a.first < b.first))))
                    tcenter = i;
            }
            if (tcenter < size_t(C) || tcenter + size_t(C) >= tcols.size())
                throw internal_inconsistency("mirror comparison: toric window fell off");
            std::vector<std::pair<long, Int>> twin(tcols.begin() + (tcenter - C),
                                                   tcols.begin() + (tcenter + C + 1));
            for (auto& [c, lo] : twin) blk.toric_profile.push_back(lo);

            for (int m = 0; m <= pole_cutoff; ++m) {
                size_t wd = 0, td = 0;
                for (size_t ci = 0; ci < wwin.size(); ++ci) wd += poly_shift_span_dim(0, H, m);
                for (size_t ci = 0; ci < twin.size(); ++ci) td += poly_shift_span_dim(0, H, m);
                blk.wproj_dim.push_back(wd);
                blk.toric_dim.push_back(td);
            }

            blk.dims_equal = blk.wproj_dim == blk.toric_dim;
            blk.increments_are_columns = true;
            for (int m = 1; m <= pole_cutoff; ++m) {
                size_t cols = size_t(2 * C + 1);
                if (blk.wproj_dim[size_t(m)] - blk.wproj_dim[size_t(m - 1)] != cols ||
                    blk.toric_dim[size_t(m)] - blk.toric_dim[size_t(m - 1)] != cols)
                    blk.increments_are_columns = false;
            }

            // Certificate from the rectangular-box table on the fan side.
            toric::Box box;
            box.x_lo = Int(twin.front().first);
            box.x_hi = Int(twin.back().first);
            Int ymin = twin.front().second, ymax = twin.front().second;
            for (auto& [c, lo] : twin) {
                if (lo < ymin) ymin = lo;
                if (lo > ymax) ymax = lo;
            }
            box.y_lo = ymin;
            box.y_hi = ymax + H;
            auto table = toric::hom_on_complement(delta_class(i0), delta_class(i1), pole_cutoff, box, fan);
            blk.toric_stabilized = table.all_columns_visible;
            for (int m = 1; m <= pole_cutoff; ++m)
                if (!table.stabilized[size_t(m)] ||
                    table.increment[size_t(m)] != size_t(2 * C + 1))
                    blk.toric_stabilized = false;

            if (!(blk.dims_equal && blk.increments_are_columns && blk.toric_stabilized)) cmp.pass = false;
            cmp.blocks.push_back(std::move(blk));
        }
    return cmp;
}

} // namespace ansyz::wrapped
