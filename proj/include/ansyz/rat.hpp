#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace ansyz {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Floor of a rational as an exact integer.
inline Int rat_floor(const Rat& r)
{
    Int q = rat_num(r) / rat_den(r);
    if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r))
        --q;
    return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline int sgn(const Rat& r)
{
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

inline int sgn(const Int& v)
{
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

// Parses "p", "-p", "p/q" or "-p/q" (decimal integers, q nonzero; the sign
// normalizes onto the numerator). Returns nullopt on malformed input or a
// zero denominator.
inline std::optional<Rat> parse_rational(const std::string& tok)
{
    auto integer = [](const std::string& s) -> std::optional<Int> {
        if (s.empty() || s == "-") return std::nullopt;
        for (size_t i = 0; i < s.size(); ++i)
            if (!(std::isdigit(static_cast<unsigned char>(s[i])) || (i == 0 && s[i] == '-')))
                return std::nullopt;
        return Int(s);
    };
    auto slash = tok.find('/');
    if (slash == std::string::npos) {
        auto p = integer(tok);
        if (!p) return std::nullopt;
        return Rat(*p);
    }
    auto p = integer(tok.substr(0, slash));
    auto q = integer(tok.substr(slash + 1));
    if (!p || !q || *q == 0) return std::nullopt;
    return Rat(*p) / Rat(*q);
}

inline std::string rat_str(const Rat& r)
{
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

// Fixed-point decimal expansion (truncated), used only for SVG coordinates
// where output must be byte-stable.
inline std::string rat_decimal(const Rat& r, int places)
{
    Int scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    Int v = rat_num(r) * scale / rat_den(r);
    bool neg = v < 0;
    if (neg) v = -v;
    std::string digits = v.str();
    while ((int)digits.size() <= places) digits.insert(digits.begin(), '0');
    std::string out = digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
    return neg ? "-" + out : out;
}

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct internal_inconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

struct perturbation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ansyz
