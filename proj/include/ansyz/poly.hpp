#pragma once

#include "ansyz/rat.hpp"

#include <map>
#include <string>
#include <vector>

namespace ansyz {

// Laurent polynomials with integer coefficients in a fixed list of variables.
// Exponents may be negative; a term is a map entry exponent-vector -> coeff.
class Poly {
public:
    using Exps = std::vector<int>;

    Poly() = default;
    explicit Poly(size_t nvars) : nvars_(nvars) {}

    static Poly constant(size_t nvars, const Int& c)
    {
        Poly p(nvars);
        if (c != 0) p.terms_[Exps(nvars, 0)] = c;
        return p;
    }

    static Poly variable(size_t nvars, size_t idx, int exp = 1)
    {
        Poly p(nvars);
        Exps e(nvars, 0);
        e[idx] = exp;
        p.terms_[e] = 1;
        return p;
    }

    static Poly monomial(size_t nvars, const Exps& e, const Int& c)
    {
        Poly p(nvars);
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exps, Int>& terms() const { return terms_; }

    bool is_one() const
    {
        return terms_.size() == 1 && terms_.begin()->second == 1 &&
               terms_.begin()->first == Exps(nvars_, 0);
    }

    Poly operator-() const
    {
        Poly r(nvars_);
        for (auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    Poly operator+(const Poly& o) const
    {
        Poly r = *this;
        for (auto& [e, c] : o.terms_) {
            auto it = r.terms_.find(e);
            if (it == r.terms_.end())
                r.terms_[e] = c;
            else {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const
    {
        Poly r(nvars_);
        for (auto& [e1, c1] : terms_)
            for (auto& [e2, c2] : o.terms_) {
                Exps e(nvars_);
                for (size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
                auto it = r.terms_.find(e);
                if (it == r.terms_.end())
                    r.terms_[e] = c1 * c2;
                else {
                    it->second += c1 * c2;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        return r;
    }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    Poly pow(int e) const
    {
        if (e < 0) throw invalid_parameter("Poly::pow: negative exponent");
        Poly r = constant(nvars_, 1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    std::string str(const std::vector<std::string>& names) const
    {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [e, c] : terms_) {
            if (!out.empty()) out += c > 0 ? " + " : " - ";
            else if (c < 0) out += "-";
            Int a = c > 0 ? c : Int(-c);
            std::string body;
            for (size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!body.empty()) body += "*";
                body += names[i];
                if (e[i] != 1) body += "^" + std::to_string(e[i]);
            }
            if (body.empty())
                out += a.str();
            else {
                if (a != 1) out += a.str() + "*";
                out += body;
            }
        }
        return out;
    }

private:
    size_t nvars_ = 0;
    std::map<Exps, Int> terms_;
};

// Elements of the fraction field over the Laurent ring. Equality is decided
// by cross multiplication, so no gcd machinery is needed.
class RatFn {
public:
    RatFn() = default;
    RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero()) throw invalid_parameter("RatFn: zero denominator");
    }
    static RatFn from_poly(Poly p)
    {
        size_t nv = p.nvars();
        return RatFn(std::move(p), Poly::constant(nv, 1));
    }
    static RatFn variable(size_t nvars, size_t idx) { return from_poly(Poly::variable(nvars, idx)); }
    static RatFn constant(size_t nvars, const Int& c) { return from_poly(Poly::constant(nvars, c)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    size_t nvars() const { return num_.nvars(); }

    RatFn operator+(const RatFn& o) const { return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    RatFn operator-(const RatFn& o) const { return RatFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    RatFn operator*(const RatFn& o) const { return RatFn(num_ * o.num_, den_ * o.den_); }
    RatFn operator/(const RatFn& o) const
    {
        if (o.num_.is_zero()) throw invalid_parameter("RatFn: division by zero");
        return RatFn(num_ * o.den_, den_ * o.num_);
    }

    RatFn pow(int e) const
    {
        if (e >= 0) return RatFn(num_.pow(e), den_.pow(e));
        if (num_.is_zero()) throw invalid_parameter("RatFn: negative power of zero");
        return RatFn(den_.pow(-e), num_.pow(-e));
    }

    bool operator==(const RatFn& o) const { return num_ * o.den_ == o.num_ * den_; }

    // Substitutes args[i] for variable i. Negative exponents take the
    // reciprocal of the substituted value.
    RatFn substitute(const std::vector<RatFn>& args) const
    {
        size_t nv = args.empty() ? nvars() : args[0].nvars();
        auto eval_poly = [&](const Poly& p) {
            RatFn acc = RatFn::constant(nv, 0);
            for (auto& [e, c] : p.terms()) {
                RatFn term = RatFn::constant(nv, c);
                for (size_t i = 0; i < p.nvars(); ++i)
                    if (e[i] != 0) term = term * args[i].pow(e[i]);
                acc = acc + term;
            }
            return acc;
        };
        return eval_poly(num_) / eval_poly(den_);
    }

    std::string str(const std::vector<std::string>& names) const
    {
        if (den_.is_one()) return num_.str(names);
        return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
    }

private:
    Poly num_{Poly::constant(0, 0)};
    Poly den_{Poly::constant(0, 1)};
};

} // namespace ansyz
