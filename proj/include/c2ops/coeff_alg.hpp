#pragma once

// Free F2 polynomial algebra on the symbols xi_1, xi_2, ... and
// tau_0, tau_1, .... No relations are imposed here; tau powers are
// unrestricted. xi_0 denotes the constant 1 by convention and never
// appears as a stored symbol.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "degree.hpp"
#include "point.hpp"

namespace c2ops {

// Sparse multi-index, sorted by symbol index, exponents > 0.
using MultiIndex = std::vector<std::pair<int, int>>;

namespace detail {
inline void mi_mul(MultiIndex& x, const MultiIndex& y)
{
    MultiIndex out;
    out.reserve(x.size() + y.size());
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (i->first < j->first)
            out.push_back(*i++);
        else if (j->first < i->first)
            out.push_back(*j++);
        else {
            out.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), i, x.end());
    out.insert(out.end(), j, y.end());
    x = std::move(out);
}

inline void mi_push(MultiIndex& x, int idx, int exp)
{
    if (exp == 0)
        return;
    auto it = std::lower_bound(x.begin(), x.end(), std::pair<int, int>{idx, 0},
                               [](auto& p, auto& q) { return p.first < q.first; });
    if (it != x.end() && it->first == idx)
        it->second += exp;
    else
        x.insert(it, {idx, exp});
}
}  // namespace detail

// Monomial xi^E * tau^F with exponent 1 elided in rendering.
struct SymMonomial {
    MultiIndex xi;
    MultiIndex tau;

    bool is_one() const { return xi.empty() && tau.empty(); }
    auto operator<=>(const SymMonomial&) const = default;

    static SymMonomial xi1(int i, int e = 1)
    {
        SymMonomial m;
        if (e)
            m.xi.push_back({i, e});
        return m;
    }
    static SymMonomial tau1(int i, int e = 1)
    {
        SymMonomial m;
        if (e)
            m.tau.push_back({i, e});
        return m;
    }
};

inline SymMonomial mul(SymMonomial x, const SymMonomial& y)
{
    detail::mi_mul(x.xi, y.xi);
    detail::mi_mul(x.tau, y.tau);
    return x;
}

// |xi_i| = (2^i - 1) rho, |tau_i| = (2^i - 1) rho + 1.
inline Degree degree_of(const SymMonomial& m)
{
    Degree d{0, 0};
    for (auto [i, e] : m.xi)
        d += e * (((1 << i) - 1) * kRho);
    for (auto [i, e] : m.tau)
        d += e * ((((1 << i) - 1) * kRho) + kOne);
    return d;
}

// F2 polynomial: sorted duplicate-free set of monomials.
struct CoeffAlg {
    std::vector<SymMonomial> monos;

    CoeffAlg() = default;
    explicit CoeffAlg(SymMonomial m) : monos{std::move(m)} {}

    static CoeffAlg zero() { return {}; }
    static CoeffAlg one() { return CoeffAlg(SymMonomial{}); }
    static CoeffAlg xi(int i) { return i == 0 ? one() : CoeffAlg(SymMonomial::xi1(i)); }
    static CoeffAlg tau(int i) { return CoeffAlg(SymMonomial::tau1(i)); }

    bool is_zero() const { return monos.empty(); }
    bool is_one() const { return monos.size() == 1 && monos.front().is_one(); }
    bool operator==(const CoeffAlg&) const = default;
};

inline CoeffAlg add(const CoeffAlg& x, const CoeffAlg& y)
{
    CoeffAlg out;
    out.monos = detail::xor_merge(x.monos, y.monos);
    return out;
}

inline CoeffAlg mul(const CoeffAlg& x, const CoeffAlg& y)
{
    CoeffAlg out;
    for (const auto& m : x.monos)
        for (const auto& n : y.monos)
            detail::xor_in(out.monos, mul(m, n));
    return out;
}

inline CoeffAlg square(const CoeffAlg& x)
{
    // Frobenius: cross terms cancel mod 2.
    CoeffAlg out;
    out.monos.reserve(x.monos.size());
    for (auto m : x.monos) {
        for (auto& [i, e] : m.xi)
            e *= 2;
        for (auto& [i, e] : m.tau)
            e *= 2;
        out.monos.push_back(std::move(m));
    }
    std::sort(out.monos.begin(), out.monos.end());
    return out;
}

// Homogeneous degree when all monomials agree; used by spot checks.
inline bool homogeneous_of_degree(const CoeffAlg& x, Degree d)
{
    for (const auto& m : x.monos)
        if (degree_of(m) != d)
            return false;
    return true;
}

inline std::string to_string(const SymMonomial& m)
{
    if (m.is_one())
        return "1";
    std::string r;
    auto app = [&r](const char* name, int i, int e) {
        if (!r.empty())
            r += "*";
        r += name;
        r += std::to_string(i);
        if (e != 1)
            r += "^" + std::to_string(e);
    };
    for (auto [i, e] : m.tau)
        app("tau", i, e);
    for (auto [i, e] : m.xi)
        app("xi", i, e);
    return r;
}

inline std::string to_string(const CoeffAlg& x)
{
    if (x.monos.empty())
        return "0";
    std::string r;
    for (const auto& m : x.monos) {
        if (!r.empty())
            r += " + ";
        r += to_string(m);
    }
    return r;
}

}  // namespace c2ops
