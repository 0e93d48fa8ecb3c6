#pragma once

// Truncated Laurent series in a variable t of degree -rho, with coefficients
// in the free algebra on xi_i, tau_i. Truncation is explicit state: every
// series carries a ceiling (exclusive) and reading a coefficient at or above
// the ceiling is a hard error, never a silent zero.

#include <map>
#include <stdexcept>
#include <string>

#include "coeff_alg.hpp"

namespace c2ops {

struct CeilingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sentinel ceiling for exact (polynomial) series.
inline constexpr int kExactCeiling = 1 << 28;

struct LaurentSeries {
    int lo = 0;       // below lo the series is exactly zero
    int ceiling = kExactCeiling;  // exponents >= ceiling are unknown
    std::map<int, CoeffAlg> coeffs;

    static LaurentSeries zero(int ceiling = kExactCeiling)
    {
        LaurentSeries f;
        f.lo = ceiling;
        f.ceiling = ceiling;
        return f;
    }
    static LaurentSeries constant(CoeffAlg c, int ceiling = kExactCeiling)
    {
        LaurentSeries f;
        f.lo = 0;
        f.ceiling = ceiling;
        if (!c.is_zero())
            f.coeffs[0] = std::move(c);
        return f;
    }
    static LaurentSeries monomial(CoeffAlg c, int exp, int ceiling = kExactCeiling)
    {
        LaurentSeries f;
        f.lo = exp;
        f.ceiling = ceiling;
        if (!c.is_zero())
            f.coeffs[exp] = std::move(c);
        return f;
    }
    static LaurentSeries t(int ceiling = kExactCeiling)
    {
        return monomial(CoeffAlg::one(), 1, ceiling);
    }

    void trim()
    {
        for (auto it = coeffs.begin(); it != coeffs.end();)
            it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
    }
};

inline CoeffAlg coeff(const LaurentSeries& f, int s)
{
    if (s >= f.ceiling)
        throw CeilingError("coefficient at t^" + std::to_string(s) +
                           " requested past ceiling t^" + std::to_string(f.ceiling));
    auto it = f.coeffs.find(s);
    return it == f.coeffs.end() ? CoeffAlg::zero() : it->second;
}

inline CoeffAlg residue(const LaurentSeries& f) { return coeff(f, -1); }

inline LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g)
{
    LaurentSeries out;
    out.lo = std::min(f.lo, g.lo);
    out.ceiling = std::min(f.ceiling, g.ceiling);
    out.coeffs = f.coeffs;
    for (const auto& [s, c] : g.coeffs) {
        auto [it, fresh] = out.coeffs.try_emplace(s, c);
        if (!fresh)
            it->second = add(it->second, c);
    }
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = (it->first >= out.ceiling) ? out.coeffs.erase(it) : std::next(it);
    out.trim();
    return out;
}

inline LaurentSeries mul(const LaurentSeries& f, const LaurentSeries& g)
{
    LaurentSeries out;
    out.lo = f.lo + g.lo;
    // The unknown tails start at f.ceiling + g.lo and g.ceiling + f.lo.
    out.ceiling = std::min({f.ceiling == kExactCeiling ? kExactCeiling : f.ceiling + g.lo,
                            g.ceiling == kExactCeiling ? kExactCeiling : g.ceiling + f.lo});
    for (const auto& [s, c] : f.coeffs)
        for (const auto& [r, d] : g.coeffs) {
            if (s + r >= out.ceiling)
                continue;
            auto [it, fresh] = out.coeffs.try_emplace(s + r, mul(c, d));
            if (!fresh)
                it->second = add(it->second, mul(c, d));
        }
    out.trim();
    return out;
}

// Ceiling used when inverting an exact polynomial, whose inverse is an
// honest infinite series.
inline constexpr int kDefaultInverseCeiling = 64;

// Multiplicative inverse; requires leading term exactly 1*t^1.
inline LaurentSeries invert(const LaurentSeries& f)
{
    if (f.coeffs.empty() || f.lo != 1 || coeff(f, 1) != CoeffAlg::one() ||
        f.coeffs.begin()->first != 1)
        throw std::invalid_argument("inverse requires a series with leading term t");
    // f = t (1 + h), h of positive valuation; 1/f = t^{-1} sum h^k.
    int hceil = f.ceiling == kExactCeiling ? kExactCeiling : f.ceiling - 1;
    if (hceil == kExactCeiling && f.coeffs.size() > 1)
        hceil = kDefaultInverseCeiling;
    LaurentSeries h;
    h.lo = 1;
    h.ceiling = hceil;
    for (const auto& [s, c] : f.coeffs)
        if (s > 1)
            h.coeffs[s - 1] = c;
    if (h.coeffs.empty()) {
        LaurentSeries out = LaurentSeries::monomial(CoeffAlg::one(), -1);
        out.ceiling = hceil == kExactCeiling ? kExactCeiling : hceil - 1;
        return out;
    }
    LaurentSeries geom = LaurentSeries::constant(CoeffAlg::one(), hceil);
    LaurentSeries hk = LaurentSeries::constant(CoeffAlg::one(), kExactCeiling);
    int bound = hceil;
    for (int k = 1; k * h.lo < bound; ++k) {
        hk = mul(hk, h);
        geom = add(geom, hk);
    }
    geom.ceiling = hceil;
    return mul(LaurentSeries::monomial(CoeffAlg::one(), -1), geom);
}

inline LaurentSeries power(const LaurentSeries& f, int r)
{
    if (r == 0)
        return LaurentSeries::constant(CoeffAlg::one());
    LaurentSeries base = r > 0 ? f : invert(f);
    int n = r > 0 ? r : -r;
    LaurentSeries out = base;
    for (int k = 1; k < n; ++k)
        out = mul(out, base);
    return out;
}

// Substitution f(g(t)); g must have positive valuation. Negative exponents of
// f require g to be invertible (leading term t).
inline LaurentSeries compose(const LaurentSeries& f, const LaurentSeries& g)
{
    if (g.lo <= 0)
        throw std::invalid_argument("compose requires positive valuation of the inner series");
    LaurentSeries out = LaurentSeries::zero(kExactCeiling);
    // Tail of f past its ceiling contributes valuation >= g.lo * f.ceiling.
    if (f.ceiling != kExactCeiling)
        out.ceiling = g.lo * f.ceiling;
    out.lo = g.lo * f.lo;
    if (f.coeffs.empty())
        return out;
    int slo = f.coeffs.begin()->first;
    int shi = f.coeffs.rbegin()->first;
    LaurentSeries gk = power(g, slo);
    for (int s = slo; s <= shi; ++s) {
        CoeffAlg c = coeff(f, s);
        if (!c.is_zero())
            out = add(out, mul(LaurentSeries::constant(c), gk));
        if (s < shi)
            gk = mul(gk, g);
    }
    return out;
}

inline LaurentSeries derivative(const LaurentSeries& f)
{
    LaurentSeries out;
    out.lo = f.lo - 1;
    out.ceiling = f.ceiling == kExactCeiling ? kExactCeiling : f.ceiling - 1;
    for (const auto& [s, c] : f.coeffs)
        if (s & 1)
            out.coeffs[s - 1] = c;
    return out;
}

// xi(t) = t + xi_1 t^2 + xi_2 t^4 + ... (xi_0 = 1), truncated below ceiling.
inline LaurentSeries xi_series(int ceiling)
{
    if (ceiling < 2)
        throw std::invalid_argument("xi_series requires ceiling >= 2");
    LaurentSeries f;
    f.lo = 1;
    f.ceiling = ceiling;
    for (int i = 0; (1 << i) < ceiling; ++i)
        f.coeffs[1 << i] = CoeffAlg::xi(i);
    return f;
}

// tau(t) = tau_0 t + tau_1 t^2 + tau_2 t^4 + ...
inline LaurentSeries tau_series(int ceiling)
{
    if (ceiling < 2)
        throw std::invalid_argument("tau_series requires ceiling >= 2");
    LaurentSeries f;
    f.lo = 1;
    f.ceiling = ceiling;
    for (int i = 0; (1 << i) < ceiling; ++i)
        f.coeffs[1 << i] = CoeffAlg::tau(i);
    return f;
}

// Milnor conjugates, expanded in the unbarred symbols.
// xibar_0 = 1 and xibar_i = sum_{j<i} xi_{i-j}^{2^j} xibar_j.
inline CoeffAlg conjugate_xi(int i)
{
    static std::vector<CoeffAlg> cache{CoeffAlg::one()};
    for (int k = (int)cache.size(); k <= i; ++k) {
        CoeffAlg acc;
        for (int j = 0; j < k; ++j) {
            CoeffAlg p = CoeffAlg::xi(k - j);
            for (int t = 0; t < j; ++t)
                p = square(p);
            acc = add(acc, mul(p, cache[j]));
        }
        cache.push_back(acc);
    }
    return cache[i];
}

// taubar_i = tau_i + sum_{j<i} xi_{i-j}^{2^j} taubar_j.
inline CoeffAlg conjugate_tau(int i)
{
    static std::vector<CoeffAlg> cache{CoeffAlg::tau(0)};
    for (int k = (int)cache.size(); k <= i; ++k) {
        CoeffAlg acc = CoeffAlg::tau(k);
        for (int j = 0; j < k; ++j) {
            CoeffAlg p = CoeffAlg::xi(k - j);
            for (int t = 0; t < j; ++t)
                p = square(p);
            acc = add(acc, mul(p, cache[j]));
        }
        cache.push_back(acc);
    }
    return cache[i];
}

// xibar(t), taubar(t) expanded in unbarred symbols.
inline LaurentSeries xibar_series(int ceiling)
{
    if (ceiling < 2)
        throw std::invalid_argument("xibar_series requires ceiling >= 2");
    LaurentSeries f;
    f.lo = 1;
    f.ceiling = ceiling;
    for (int i = 0; (1 << i) < ceiling; ++i)
        f.coeffs[1 << i] = conjugate_xi(i);
    f.trim();
    return f;
}

inline LaurentSeries taubar_series(int ceiling)
{
    if (ceiling < 2)
        throw std::invalid_argument("taubar_series requires ceiling >= 2");
    LaurentSeries f;
    f.lo = 1;
    f.ceiling = ceiling;
    for (int i = 0; (1 << i) < ceiling; ++i)
        f.coeffs[1 << i] = conjugate_tau(i);
    return f;
}

inline std::string to_string(const LaurentSeries& f)
{
    std::string r;
    for (const auto& [s, c] : f.coeffs) {
        if (c.is_zero())
            continue;
        if (!r.empty())
            r += " + ";
        std::string cs = to_string(c);
        bool needs_parens = c.monos.size() > 1;
        if (s == 0) {
            r += cs;
            continue;
        }
        std::string ts = "t";
        if (s != 1)
            ts += "^" + std::to_string(s);
        if (c.is_one()) {
            r += ts;
        } else if (needs_parens) {
            r += "(" + cs + ")*" + ts;
        } else {
            r += cs + "*" + ts;
        }
    }
    if (r.empty())
        return "0";
    return r;
}

}  // namespace c2ops
