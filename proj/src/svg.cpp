#include "ansyz/svg.hpp"

#include "ansyz/thimbles.hpp"
#include "ansyz/wrapped.hpp"

#include <sstream>

namespace ansyz::svg {

namespace {

const char* header =
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" ";

std::string coord(const Rat& v) { return rat_decimal(v, 3); }

std::string line(const Rat& x1, const Rat& y1, const Rat& x2, const Rat& y2, const std::string& style)
{
    return "<line x1=\"" + coord(x1) + "\" y1=\"" + coord(y1) + "\" x2=\"" + coord(x2) + "\" y2=\"" +
           coord(y2) + "\" " + style + "/>\n";
}

std::string text(const Rat& x, const Rat& y, const std::string& s)
{
    return "<text x=\"" + coord(x) + "\" y=\"" + coord(y) + "\" font-size=\"10\">" + s + "</text>\n";
}

std::string circle(const Rat& x, const Rat& y, const char* r, const std::string& style)
{
    return "<circle cx=\"" + coord(x) + "\" cy=\"" + coord(y) + "\" r=\"" + r + "\" " + style + "/>\n";
}

} // namespace

std::string plot_base(int n)
{
    // Walls are vertical lines s = s_i; only the ordering of the s_i matters,
    // so they are drawn evenly spaced.
    Rat W(480), H(360);
    std::ostringstream out;
    out << header << "width=\"480\" height=\"360\" viewBox=\"0 0 480 360\">\n";
    out << line(Rat(20), H / 2, W - 20, H / 2, "stroke=\"black\" stroke-width=\"1\"");
    out << line(Rat(40), H - 20, Rat(40), Rat(20), "stroke=\"black\" stroke-width=\"1\"");
    for (int i = 0; i <= n; ++i) {
        Rat x = Rat(100) + Rat(280 * i, n + 1);
        out << line(x, Rat(30), x, H - 30, "stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
        out << text(x - 8, H / 2 + 16, "s" + std::to_string(i));
        out << text(x - 4, H / 2 + 4, "x");
    }
    out << "</svg>\n";
    return out.str();
}

std::string plot_thimbles(int n, long k_max)
{
    // The cylinder is cut open into [-R, R] x [0, 1) with the horizontal
    // edges identified; lifts wrap by splitting at integer heights.
    Rat W(480), H(360), R = fsring::cylinder_R();
    Rat x0(40), x1 = W - 40, y0 = H - 40, y1(40);
    auto to_x = [&](const Rat& r) { return x0 + (x1 - x0) * (r + R) / (2 * R); };
    auto to_y = [&](const Rat& theta) { return y0 - (y0 - y1) * theta; };

    std::ostringstream out;
    out << header << "width=\"480\" height=\"360\" viewBox=\"0 0 480 360\">\n";
    out << "<rect x=\"" << coord(x0) << "\" y=\"" << coord(y1) << "\" width=\"" << coord(x1 - x0)
        << "\" height=\"" << coord(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";

    fsring::ThimbleRing ring(n, k_max);
    Rat eps = ring.eps();

    // Lift graphs, reduced mod 1 with splits at integer heights.
    for (long k = 0; k <= k_max; ++k)
        for (int i = 0; i <= n; ++i) {
            auto L = fsring::thimble_lift(i, k, n, eps);
            // Sample the two linear pieces and split where theta crosses Z.
            for (int half = 0; half < 2; ++half) {
                Rat ra = half == 0 ? -R : Rat(0), rb = half == 0 ? Rat(0) : R;
                Rat va = L.at(ra), vb = L.at(rb);
                // Walk over the integer heights between va and vb.
                std::vector<std::pair<Rat, Rat>> cuts;  // (r, theta)
                cuts.push_back({ra, va});
                if (!(va == vb)) {
                    Rat lo = va < vb ? va : vb, hi = va < vb ? vb : va;
                    for (Int m = rat_floor(lo) + 1; Rat(m) < hi; ++m) {
                        Rat t = (Rat(m) - va) / (vb - va);
                        cuts.push_back({ra + (rb - ra) * t, Rat(m)});
                    }
                }
                cuts.push_back({rb, vb});
                for (size_t c = 0; c + 1 < cuts.size(); ++c) {
                    // Each piece lies within one unit interval; rebase by the
                    // floor of its midpoint so the drawn heights stay in [0,1].
                    Int fl = rat_floor((cuts[c].second + cuts[c + 1].second) / 2);
                    Rat fa = cuts[c].second - fl;
                    Rat fb = cuts[c + 1].second - fl;
                    out << line(to_x(cuts[c].first), to_y(fa), to_x(cuts[c + 1].first), to_y(fb),
                                "stroke=\"steelblue\" stroke-width=\"1\"");
                }
            }
        }

    // The fiber over zero sits on the critical circle r = 0.
    auto cd = fsring::critical_data(n);
    for (auto& th : cd.zero_angles)
        out << circle(to_x(Rat(0)), to_y(th), "3", "fill=\"black\"");

    // Intersection labels for wrapped sources against unwrapped targets.
    for (long k = 0; k <= k_max; ++k)
        for (int i0 = 0; i0 <= n; ++i0)
            for (int i1 = 0; i1 <= n; ++i1) {
                if (k == 0 && i0 == i1) continue;
                for (auto& pt : ring.hom_points(i0, k, i1)) {
                    auto L = fsring::thimble_lift(i0, k, n, eps);
                    Rat theta = L.at(pt.r);
                    Rat frac = theta - rat_floor(theta);
                    out << circle(to_x(pt.r), to_y(frac), "2", "fill=\"crimson\"");
                    out << text(to_x(pt.r) + 3, to_y(frac) - 3, pt.label.str());
                }
            }
    out << "</svg>\n";
    return out.str();
}

std::string plot_wrapping(int n, long w)
{
    std::ostringstream out;
    out << header << "width=\"640\" height=\"360\" viewBox=\"0 0 640 360\">\n";
    Rat x(30);
    for (int i0 = 0; i0 <= n; ++i0)
        for (int i1 = 0; i1 <= n; ++i1) {
            auto gens = wrapped::wrapped_generators(i0, i1, w, n);
            if (gens.empty()) continue;
            out << text(x, Rat(20), std::to_string(i0) + "->" + std::to_string(i1));
            wring::Monomial cur{-1, -1};
            Rat col = x;
            for (auto& g : gens) {
                if (!(g.q == cur)) {
                    cur = g.q;
                    col += 22;
                    out << text(col - 4, Rat(36), g.q.str());
                }
                out << circle(col, Rat(48) + Rat(14) * Rat(g.j), "3",
                              "fill=\"none\" stroke=\"black\"");
            }
            x = col + 30;
        }
    out << "</svg>\n";
    return out.str();
}

} // namespace ansyz::svg
