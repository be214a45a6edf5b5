#pragma once

#include "ansyz/rat.hpp"
#include "ansyz/wring.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ansyz::fsring {

// Angular data of w = z + 1/z^n on the cylinder, all angles in turns.
struct CriticalData {
    int n = 0;
    std::vector<Rat> critical_angles;  // i/(n+1), critical points at |z| = n^(1/(n+1))
    std::vector<Rat> zero_angles;      // (2j+1)/(2n+2), the fiber over 0 at |z| = 1
};

CriticalData critical_data(int n);

// Piecewise-linear lift of the k-times-wrapped thimble through the i-th
// critical angle: breakpoints at r = -R, 0, R with R = 2. Wrapping moves the
// outer end up one turn and the inner end down 1/n of a turn per wrap.
// Whenever two lifts are paired, the source is tilted by a positive multiple
// of eps*tent with tent = (-1, 1/2, +1) at the breakpoints: down at the inner
// end and up at the outer end, the direction of a small extra wrap.
struct ThimbleLift {
    int n = 0;
    int i = 0;
    long k = 0;
    Rat eps;

    Rat left() const;   // value at r = -R
    Rat mid() const;    // value at r = 0
    Rat right() const;  // value at r = +R
    Rat at(const Rat& r) const;
    Rat at_tilted(const Rat& r, long tau) const;
    Rat at_tilted(const Rat& r, long tau, const Rat& tent_mid) const;
};

inline Rat cylinder_R() { return Rat(2); }

Rat default_epsilon(int n, long k_max);

ThimbleLift thimble_lift(int i, long k, int n, const Rat& eps);

struct IntersectionPoint {
    Rat r;
    long level = 0;  // which integer translate of the target lift is crossed
    int position = 0;  // 0 = rightmost
    wring::Monomial label;
};

// Crossings of the source lift with all integer translates of the target
// lift, ordered right to left and labelled by the monomial basis of the
// graded hom piece. Throws perturbation_error on any tangency or on a count
// that disagrees with the graded dimension.
std::vector<IntersectionPoint> intersections(const ThimbleLift& source, const ThimbleLift& target);

// delta_{ij} from the angular position of critical point i relative to the
// arc between consecutive zeros of w.
int dual_cycle_pairing(int i, int j, int n);

struct GeneratorRef {
    int i0 = 0, i1 = 0;
    long k = 0;
    int position = 0;
};

struct ProductOutcome {
    bool found = false;
    GeneratorRef out;
    wring::Monomial out_label;
    long s0_crossings = 0;  // zeros of w enclosed by the triangle
};

// Geometric composition of basis generators by triangle counting between the
// three perturbed lifts; the identity generators act by re-labelling.
class ThimbleRing {
public:
    ThimbleRing(int n, long k_max, std::optional<Rat> eps = std::nullopt);

    int n() const { return n_; }
    const Rat& eps() const { return eps_; }

    const std::vector<IntersectionPoint>& hom_points(int i0, long k, int i1) const;
    size_t hom_dim(int i0, long k, int i1) const;
    wring::Monomial label_of(const GeneratorRef& g) const;

    ProductOutcome compose(const GeneratorRef& g2, const GeneratorRef& g1) const;

    // Continuation to one more wrap: position shifts by one; the label picks
    // up a factor of s.
    GeneratorRef continuation(const GeneratorRef& g) const;

    // Validates every pair count against the graded dimension formula.
    void validate_counts() const;

private:
    int n_;
    long k_max_;
    Rat eps_;
    mutable std::map<std::tuple<int, long, int>, std::vector<IntersectionPoint>> cache_;
};

struct StructureEntry {
    GeneratorRef g2, g1;
    bool ok = false;           // product exists geometrically with coefficient 1
    wring::Monomial expected;  // polynomial product of the labels
    wring::Monomial got;
    long s0 = 0;
    long ord_defect = 0;  // ord(out) - ord(in2) - ord(in1)
};

struct RingIsomReport {
    bool pass = false;
    size_t products_checked = 0;
    size_t count_mismatches = 0;
    std::vector<std::string> failures;
    bool degree_law_holds = true;     // s0 count == ord defect, every triangle
    std::string degree_resolution;    // "min" or "max", decided by geometry
};

RingIsomReport verify_ring_isom(int n, long w_max, std::optional<Rat> eps = std::nullopt);

// All products with total twist <= w_max as structure entries.
std::vector<StructureEntry> ring_structure_table(int n, long w_max, std::optional<Rat> eps = std::nullopt);

} // namespace ansyz::fsring
