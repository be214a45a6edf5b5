#include "ansyz/gluing.hpp"

namespace ansyz::gluing {

const std::vector<std::string> wall_var_names = {"u", "v", "w"};

namespace {
constexpr size_t NV = 3;
const size_t U = 0, V = 1, W = 2;

RatFn var(size_t i) { return RatFn::variable(NV, i); }
RatFn one() { return RatFn::constant(NV, 1); }
} // namespace

WallMap identity_wall_map()
{
    return WallMap{{var(U), var(V), var(W)}};
}

WallMap uncorrected_transition(Side side)
{
    WallMap m = identity_wall_map();
    if (side == Side::plus)
        m.images[U] = one() / var(V);
    else
        m.images[U] = var(W) / var(V);
    return m;
}

WallMap corrected_transition(Side side)
{
    WallMap m = identity_wall_map();
    if (side == Side::plus)
        m.images[U] = (one() + var(W)) / var(V);
    else
        m.images[U] = var(W) * (one() + one() / var(W)) / var(V);
    return m;
}

WallMap compose(const WallMap& outer, const WallMap& inner)
{
    WallMap r;
    for (auto& img : outer.images) r.images.push_back(img.substitute(inner.images));
    return r;
}

WallMap monodromy(Corrections corrections)
{
    // Express u through the lower-half relation, then return through the
    // upper half by solving it for v. This composition is pinned by the
    // uncorrected case, which must give u -> u w.
    bool on = corrections == Corrections::on;
    WallMap lower = on ? corrected_transition(Side::minus) : uncorrected_transition(Side::minus);
    RatFn u_of_vw = lower.images[U];
    // Solve the upper-half relation u = c(w)/v for v: v = c(w)/u.
    WallMap upper = on ? corrected_transition(Side::plus) : uncorrected_transition(Side::plus);
    RatFn v_of_uw = upper.images[U].substitute({var(U), one(), var(W)}) / one();  // c(w) = u-image at v=1
    v_of_uw = v_of_uw / var(U);

    WallMap r = identity_wall_map();
    r.images[U] = u_of_vw.substitute({var(U), v_of_uw, var(W)});
    return r;
}

CoverRelations glued_cover_relations(int n)
{
    if (n < 1) throw invalid_parameter("glued_cover_relations: n must be >= 1");
    CoverRelations cr;
    cr.n = n;
    cr.nvars = size_t(2 * n + 3);
    for (int i = 0; i <= n; ++i) cr.names.push_back("u" + std::to_string(i));
    for (int i = 1; i <= n + 1; ++i) cr.names.push_back("v" + std::to_string(i));
    cr.names.push_back("w");

    auto pv = [&](size_t idx) { return Poly::variable(cr.nvars, idx); };
    Poly onep = Poly::constant(cr.nvars, 1);
    Poly wp = pv(cr.w_index());

    for (int i = 0; i <= n; ++i)
        cr.wall.push_back(pv(cr.u_index(i)) * pv(cr.v_index(i + 1)) - onep - wp);
    for (int i = 1; i <= n; ++i)
        cr.alias.push_back(pv(cr.u_index(i)) * pv(cr.v_index(i)) - onep);
    for (int i = 1; i <= n; ++i)
        cr.overlap.push_back(pv(cr.u_index(i - 1)) * pv(cr.v_index(i)) -
                             pv(cr.u_index(i)) * pv(cr.v_index(i + 1)));

    // The overlap identities must follow from the wall relations: both sides
    // equal 1 + w, so wall_{i-1} - wall_i = overlap_i.
    for (int i = 1; i <= n; ++i) {
        Poly derived = cr.wall[i - 1] - cr.wall[i];
        if (!(derived == cr.overlap[i - 1])) throw internal_inconsistency("cover relations inconsistent");
    }
    return cr;
}

RatFn chart_transition_u(int steps)
{
    // On (t, w) with t the chart u-coordinate: t -> t / (1+w)^steps.
    RatFn t = RatFn::variable(2, 0), w = RatFn::variable(2, 1);
    RatFn one2 = RatFn::constant(2, 1);
    return t / (one2 + w).pow(steps);
}

bool cocycle_holds(int n)
{
    RatFn t = RatFn::variable(2, 0), w = RatFn::variable(2, 1);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = j; k <= n; ++k) {
                RatFn via = chart_transition_u(k - j).substitute({chart_transition_u(j - i), w});
                if (!(via == chart_transition_u(k - i))) return false;
            }
    return true;
}

namespace {

// Dual basis of a smooth cone (v_a, v_b): pair (m, m') with <m,v_a> = 1,
// <m,v_b> = 0 and vice versa.
struct ConeDual {
    std::array<Int, 2> m, mp;
};

ConeDual cone_dual(const std::array<Int, 2>& va, const std::array<Int, 2>& vb)
{
    Int det = va[0] * vb[1] - va[1] * vb[0];
    if (det != 1 && det != -1) throw invalid_parameter("cone_dual: cone not smooth");
    // Solve [va; vb]^T m = e1 and = e2 by Cramer.
    ConeDual d;
    d.m = {vb[1] / det, -vb[0] / det};
    d.mp = {-va[1] / det, va[0] / det};
    return d;
}

} // namespace

ResolutionMatch match_resolution_charts(int n)
{
    ResolutionMatch res;
    auto fan = toric::build_fan(n);
    CoverRelations cr = glued_cover_relations(n);

    // Candidate witness: u_i and v_i as character monomials on the dense
    // torus, with w = h - 1 for the height character h.
    // Chart i of the resolution has coordinates (x_i, y_i) dual to the cone
    // (v_i, v_{i+1}); the correspondence is v_{i+1} <-> x_i, u_i <-> y_i.
    const size_t LNV = 2;  // character lattice coordinates
    auto chi = [&](const Int& a, const Int& b) {
        Poly p(LNV);
        Poly::Exps e{int(a.convert_to<long>()), int(b.convert_to<long>())};
        return RatFn::from_poly(Poly::monomial(LNV, e, 1));
    };

    std::vector<RatFn> assign(cr.nvars, RatFn::constant(LNV, 0));
    std::vector<ConeDual> duals;
    for (int i = 0; i <= n; ++i) duals.push_back(cone_dual(fan.rays[i], fan.rays[i + 1]));

    for (int i = 0; i <= n; ++i) {
        // u_i = y_i = chi^{m'_i} on chart i
        assign[cr.u_index(i)] = chi(duals[i].mp[0], duals[i].mp[1]);
        // v_{i+1} = x_i = chi^{m_i}
        assign[cr.v_index(i + 1)] = chi(duals[i].m[0], duals[i].m[1]);
    }
    // v_i for i = 1..n also appears as x_{i-1}; consistency with the alias
    // relations u_i v_i = 1 is part of the check below.
    RatFn h = chi(0, 1);
    assign[cr.w_index()] = h - RatFn::constant(LNV, 1);

    auto check_zero = [&](const Poly& rel) {
        RatFn r = RatFn::from_poly(rel).substitute(assign);
        return r.num().is_zero();
    };

    for (auto& rel : cr.wall)
        if (!check_zero(rel)) {
            res.failure = "wall relation fails under the monomial assignment";
            return res;
        }
    for (auto& rel : cr.alias)
        if (!check_zero(rel)) {
            res.failure = "alias relation fails under the monomial assignment";
            return res;
        }

    // Cone-to-cone transitions of the resolution vs the glued transitions:
    // y_{i+1} = y_i / h corresponds to u_{i+1} = u_i / (1+w), and
    // x_{i+1} = x_i h to v_{i+2} = v_{i+1}(1+w).
    for (int i = 0; i < n; ++i) {
        RatFn lhs_y = assign[cr.u_index(i + 1)];
        RatFn rhs_y = assign[cr.u_index(i)] / h;
        RatFn lhs_x = assign[cr.v_index(i + 2)];
        RatFn rhs_x = assign[cr.v_index(i + 1)] * h;
        if (!(lhs_y == rhs_y) || !(lhs_x == rhs_x)) {
            res.failure = "chart transition mismatch at index " + std::to_string(i);
            return res;
        }
    }

    res.matched = true;
    std::vector<std::string> lat_names = {"X1", "X2"};
    for (int i = 0; i <= n; ++i)
        res.witness.push_back("u" + std::to_string(i) + " = " + assign[cr.u_index(i)].str(lat_names));
    for (int i = 1; i <= n + 1; ++i)
        res.witness.push_back("v" + std::to_string(i) + " = " + assign[cr.v_index(i)].str(lat_names));
    res.witness.push_back("w = h - 1 with h = " + h.str(lat_names));
    return res;
}

} // namespace ansyz::gluing
