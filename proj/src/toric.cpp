#include "ansyz/toric.hpp"

#include "ansyz/linalg.hpp"

namespace ansyz::toric {

Fan build_fan(int n)
{
    if (n < 1) throw invalid_parameter("build_fan: n must be >= 1");
    Fan fan;
    fan.n = n;
    for (int i = 0; i <= n + 1; ++i) fan.rays.push_back({Int(i - 1), Int(1)});
    return fan;
}

Int pairing(const LatticePoint& m, const std::array<Int, 2>& ray)
{
    return m.x * ray[0] + m.y * ray[1];
}

TorusDivisor principal_divisor(const Fan& fan, const LatticePoint& m)
{
    TorusDivisor D;
    for (auto& v : fan.rays) D.coeff.push_back(pairing(m, v));
    return D;
}

std::optional<LatticePoint> principal_character(const Fan& fan, const TorusDivisor& D)
{
    if (D.coeff.size() != fan.ray_count())
        throw invalid_parameter("principal_character: coefficient length mismatch");
    // The first two rays (-1,1),(0,1) pin the character: -x + y = a_0, y = a_1.
    LatticePoint m{D.coeff[1] - D.coeff[0], D.coeff[1]};
    for (size_t i = 0; i < fan.ray_count(); ++i)
        if (pairing(m, fan.rays[i]) != D.coeff[i]) return std::nullopt;
    return m;
}

DivisorClass divisor_class(const TorusDivisor& D, const Fan& fan)
{
    if (D.coeff.size() != fan.ray_count())
        throw invalid_parameter("divisor_class: coefficient length mismatch");
    DivisorClass d;
    for (int i = 1; i <= fan.n; ++i) {
        // Self-intersection of the compact curve E_i from the ray relation
        // v_{i-1} + v_{i+1} = alpha * v_i.
        auto &vm = fan.rays[i - 1], &vi = fan.rays[i], &vp = fan.rays[i + 1];
        Int alpha;
        if (vi[0] != 0)
            alpha = (vm[0] + vp[0]) / vi[0];
        else
            alpha = (vm[1] + vp[1]) / vi[1];
        if (vm[0] + vp[0] != alpha * vi[0] || vm[1] + vp[1] != alpha * vi[1])
            throw internal_inconsistency("divisor_class: ray relation failed");
        Int self_int = -alpha;
        d.deg.push_back(D.coeff[i - 1] + self_int * D.coeff[i] + D.coeff[i + 1]);
    }
    return d;
}

TorusDivisor bundle_with_degrees(const DivisorClass& d, const Fan& fan)
{
    if ((int)d.deg.size() != fan.n) throw invalid_parameter("bundle_with_degrees: class length mismatch");
    int n = fan.n;
    TorusDivisor D;
    D.coeff.assign(n + 2, Int(0));
    // Back-substitute a_{i-1} = d_i + 2 a_i - a_{i+1} with a_n = a_{n+1} = 0.
    for (int i = n; i >= 1; --i)
        D.coeff[i - 1] = d.deg[i - 1] + 2 * D.coeff[i] - (i + 1 <= n + 1 ? D.coeff[i + 1] : Int(0));
    return D;
}

TorusDivisor subtract(const TorusDivisor& a, const TorusDivisor& b)
{
    if (a.coeff.size() != b.coeff.size()) throw invalid_parameter("subtract: length mismatch");
    TorusDivisor r;
    for (size_t i = 0; i < a.coeff.size(); ++i) r.coeff.push_back(a.coeff[i] - b.coeff[i]);
    return r;
}

std::vector<LatticePoint> sections_in_box(const TorusDivisor& D, const Fan& fan, const Box& box)
{
    if (D.coeff.size() != fan.ray_count())
        throw invalid_parameter("sections_in_box: coefficient length mismatch");
    std::vector<LatticePoint> out;
    if (box.is_empty()) return out;
    for (Int x = box.x_lo; x <= box.x_hi; ++x)
        for (Int y = box.y_lo; y <= box.y_hi; ++y) {
            LatticePoint m{x, y};
            bool ok = true;
            for (size_t i = 0; i < fan.ray_count() && ok; ++i)
                if (pairing(m, fan.rays[i]) < -D.coeff[i]) ok = false;
            if (ok) out.push_back(m);
        }
    return out;
}

Int column_floor(const TorusDivisor& D, const Fan& fan, const Int& c)
{
    // Constraints c*(i-1) + t >= -a_i give t >= -a_i - c*(i-1); the column is
    // the upward lattice ray above the max.
    Int lo = -D.coeff[0] - c * fan.rays[0][0];
    for (size_t i = 1; i < fan.ray_count(); ++i) {
        Int cand = -D.coeff[i] - c * fan.rays[i][0];
        if (cand > lo) lo = cand;
    }
    return lo;
}

HomTable hom_on_complement(const DivisorClass& d_src, const DivisorClass& d_tgt, int pole_cutoff,
                           const Box& box, const Fan& fan)
{
    if (pole_cutoff < 0) throw invalid_parameter("hom_on_complement: pole_cutoff must be >= 0");
    TorusDivisor D = subtract(bundle_with_degrees(d_tgt, fan), bundle_with_degrees(d_src, fan));

    HomTable table;
    table.dim.assign(pole_cutoff + 1, 0);
    table.increment.assign(pole_cutoff + 1, 0);
    table.stabilized.assign(pole_cutoff + 1, false);
    if (box.is_empty()) {
        table.all_columns_visible = true;
        for (int m = 0; m <= pole_cutoff; ++m) table.stabilized[m] = true;
        return table;
    }

    auto levels = [&](const Box& b) {
        std::vector<size_t> dim(pole_cutoff + 1, 0);
        for (Int c = b.x_lo; c <= b.x_hi; ++c) {
            Int lo = column_floor(D, fan, c);
            Int t_lo = lo > b.y_lo ? lo : b.y_lo;
            if (t_lo > b.y_hi) continue;
            long span = Int(b.y_hi - t_lo).convert_to<long>();
            for (int m = 0; m <= pole_cutoff; ++m) dim[m] += poly_shift_span_dim(0, span, m);
        }
        return dim;
    };

    table.dim = levels(box);
    Box taller = box;
    taller.y_hi += 1;
    auto taller_dim = levels(taller);

    table.all_columns_visible = true;
    table.nonempty_columns = 0;
    for (Int c = box.x_lo; c <= box.x_hi; ++c) {
        Int lo = column_floor(D, fan, c);
        if (lo <= box.y_hi && lo >= box.y_lo)
            ++table.nonempty_columns;
        else if (lo > box.y_hi)
            table.all_columns_visible = false;
        else if (lo < box.y_lo && box.y_lo <= box.y_hi)
            ++table.nonempty_columns;  // truncated from below but present
    }

    for (int m = 0; m <= pole_cutoff; ++m) {
        table.increment[m] = m == 0 ? table.dim[0] : table.dim[m] - table.dim[m - 1];
        if (m == 0)
            table.stabilized[0] = table.all_columns_visible;
        else {
            size_t inc_tall = taller_dim[m] - taller_dim[m - 1];
            table.stabilized[m] = (table.increment[m] == inc_tall);
        }
    }
    return table;
}

} // namespace ansyz::toric
