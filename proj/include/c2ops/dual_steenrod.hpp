#pragma once

// Normal forms and Hopf-algebroid structure maps for the C2-equivariant dual
// Steenrod algebra
//   A = HF[tau_i, xi_i, ubar] / (tau_0 a = ubar + u,  tau_i^2 = tau_{i+1} a + xi_{i+1} ubar).
// ubar is eliminated (ubar = u + tau_0 a), so normalized monomials are
// coefficient * xi-monomial * square-free tau-monomial. Tensors over the base
// collect coefficients on the left factor through the right unit.

#include <cassert>
#include <stdexcept>
#include <vector>

#include "coeff_alg.hpp"
#include "point.hpp"
#include "series.hpp"

namespace c2ops {

// Normalized monomial: coeff * xi^E * prod_{i in tau} tau_i.
struct ASMonomial {
    PointClass coeff = PointClass::one();
    MultiIndex xi;           // exponents >= 1
    std::vector<int> tau;    // sorted, distinct indices

    bool is_unit() const { return coeff.is_one() && xi.empty() && tau.empty(); }
    bool symbol_free() const { return xi.empty() && tau.empty(); }
    auto operator<=>(const ASMonomial&) const = default;
};

inline Degree degree_of(const ASMonomial& m)
{
    Degree d = degree_of(m.coeff);
    for (auto [i, e] : m.xi)
        d += e * (((1 << i) - 1) * kRho);
    for (int i : m.tau)
        d += (((1 << i) - 1) * kRho) + kOne;
    return d;
}

struct ASElem {
    std::vector<ASMonomial> monos;

    ASElem() = default;
    explicit ASElem(ASMonomial m) : monos{std::move(m)} {}

    static ASElem zero() { return {}; }
    static ASElem one() { return ASElem(ASMonomial{}); }
    static ASElem coeff(PointClass c) { return ASElem(ASMonomial{c, {}, {}}); }
    static ASElem xi(int i, int e = 1)
    {
        ASMonomial m;
        if (i > 0 && e > 0)
            m.xi.push_back({i, e});
        return ASElem(m);
    }
    static ASElem tau(int i) { return ASElem(ASMonomial{PointClass::one(), {}, {i}}); }

    bool is_zero() const { return monos.empty(); }
    bool operator==(const ASElem&) const = default;
};

inline ASElem add(const ASElem& x, const ASElem& y)
{
    ASElem out;
    out.monos = detail::xor_merge(x.monos, y.monos);
    return out;
}

// Pre-normal-form monomial: tau exponents unrestricted, ubar allowed.
struct RawMonomial {
    PointClass coeff = PointClass::one();
    MultiIndex xi;
    MultiIndex tau;
    int ubar = 0;
};

namespace detail {
inline bool odd_binomial(long long n, long long k)
{
    // Lucas: C(n,k) odd iff k's bits are contained in n's.
    if (k < 0 || n < 0 || k > n)
        return false;
    return (k & n) == k;
}
}  // namespace detail

// Rewrite to the normal form. ubar -> u + tau_0 a first, then each tau_i^2 ->
// tau_{i+1} a + xi_{i+1} u + xi_{i+1} tau_0 a until square-free. Each step
// drops the tau factor count, so the worklist terminates.
inline ASElem normalize(const RawMonomial& raw)
{
    ASElem out;
    std::vector<RawMonomial> work{raw};
    while (!work.empty()) {
        RawMonomial m = std::move(work.back());
        work.pop_back();
        if (m.ubar > 0) {
            int e = m.ubar;
            for (int j = 0; j <= e; ++j) {
                if (!detail::odd_binomial(e, j))
                    continue;
                auto c = mul(m.coeff, PointClass::pos(e - j, j));
                if (!c)
                    continue;
                RawMonomial next = m;
                next.ubar = 0;
                next.coeff = *c;
                detail::mi_push(next.tau, 0, j);
                work.push_back(std::move(next));
            }
            continue;
        }
        auto sq = std::find_if(m.tau.begin(), m.tau.end(), [](auto& p) { return p.second >= 2; });
        if (sq != m.tau.end()) {
            int i = sq->first;
            MultiIndex rest = m.tau;
            for (auto& p : rest)
                if (p.first == i)
                    p.second -= 2;
            std::erase_if(rest, [](auto& p) { return p.second == 0; });
            // tau_{i+1} a
            if (auto c = mul(m.coeff, PointClass::a())) {
                RawMonomial n1{*c, m.xi, rest, 0};
                detail::mi_push(n1.tau, i + 1, 1);
                work.push_back(std::move(n1));
            }
            // xi_{i+1} u
            if (auto c = mul(m.coeff, PointClass::u())) {
                RawMonomial n2{*c, m.xi, rest, 0};
                detail::mi_push(n2.xi, i + 1, 1);
                work.push_back(std::move(n2));
            }
            // xi_{i+1} tau_0 a
            if (auto c = mul(m.coeff, PointClass::a())) {
                RawMonomial n3{*c, m.xi, rest, 0};
                detail::mi_push(n3.xi, i + 1, 1);
                detail::mi_push(n3.tau, 0, 1);
                work.push_back(std::move(n3));
            }
            continue;
        }
        ASMonomial nm;
        nm.coeff = m.coeff;
        nm.xi = m.xi;
        for (auto [i, e] : m.tau) {
            assert(e == 1);
            nm.tau.push_back(i);
        }
        std::sort(nm.tau.begin(), nm.tau.end());
        detail::xor_in(out.monos, nm);
    }
    return out;
}

inline ASElem mul(const ASMonomial& x, const ASMonomial& y)
{
    auto c = mul(x.coeff, y.coeff);
    if (!c)
        return ASElem::zero();
    RawMonomial raw;
    raw.coeff = *c;
    raw.xi = x.xi;
    detail::mi_mul(raw.xi, y.xi);
    for (int i : x.tau)
        detail::mi_push(raw.tau, i, 1);
    for (int i : y.tau)
        detail::mi_push(raw.tau, i, 1);
    return normalize(raw);
}

inline ASElem mul(const ASElem& x, const ASElem& y)
{
    ASElem out;
    for (const auto& m : x.monos)
        for (const auto& n : y.monos)
            out = add(out, mul(m, n));
    return out;
}

inline ASElem from_coeff_alg(const CoeffAlg& c)
{
    ASElem out;
    for (const auto& m : c.monos) {
        RawMonomial raw;
        raw.xi = m.xi;
        raw.tau = m.tau;
        out = add(out, normalize(raw));
    }
    return out;
}

inline ASElem mul_point(const PointElem& c, const ASElem& x)
{
    ASElem out;
    for (const auto& pc : c.classes)
        out = add(out, mul(ASElem::coeff(pc), x));
    return out;
}

// Right unit. On the polynomial cone eta(u) = u + tau_0 a, eta(a) = a,
// extended multiplicatively. On th/(a^k u^n) the boundary-map formula
//   eta = sum_{j<=k} C(n+j, n) tau_0^j th/(a^{k-j} u^{n+j})
// is exact: terms with j > k die under the boundary map. `ceiling` bounds the
// tau_0-expansion and must exceed the a-division count.
inline ASElem eta_R(const PointElem& x, int ceiling = 1 << 20)
{
    ASElem out;
    for (const auto& c : x.classes) {
        if (c.is_pos()) {
            // (u + tau_0 a)^i a^j expanded binomially
            int i = c.e1;
            for (int j = 0; j <= i; ++j) {
                if (!detail::odd_binomial(i, j))
                    continue;
                RawMonomial term;
                term.coeff = PointClass::pos(i - j, j + c.e2);
                detail::mi_push(term.tau, 0, j);
                out = add(out, normalize(term));
            }
            continue;
        }
        int k = c.e1, n = c.e2;
        if (k >= ceiling)
            throw CeilingError("eta_R: tau_0 expansion needs ceiling > " + std::to_string(k));
        for (int j = 0; j <= k; ++j) {
            if (!detail::odd_binomial(n + j, n))
                continue;
            RawMonomial term;
            term.coeff = PointClass::theta(k - j, n + j);
            detail::mi_push(term.tau, 0, j);
            out = add(out, normalize(term));
        }
    }
    return out;
}

inline ASElem eta_R(PointClass c, int ceiling = 1 << 20)
{
    thread_local std::map<PointClass, ASElem> cache;
    auto it = cache.find(c);
    if (it != cache.end())
        return it->second;
    ASElem v = eta_R(PointElem(c), ceiling);
    cache.emplace(c, v);
    return v;
}

// x (x) y with base coefficients collected on the left through eta_R; the
// right factor of a stored pair always has coefficient 1.
struct TensorElem {
    std::vector<std::pair<ASMonomial, ASMonomial>> pairs;

    static TensorElem zero() { return {}; }
    bool is_zero() const { return pairs.empty(); }
    bool operator==(const TensorElem&) const = default;
};

namespace detail {
// Move a right-factor coefficient across the tensor sign: x (x) c y =
// x eta_R(c) (x) y.
inline void tensor_accumulate(TensorElem& acc, const ASMonomial& left, const ASMonomial& right)
{
    if (right.coeff.is_one()) {
        xor_in(acc.pairs, {left, right});
        return;
    }
    ASMonomial bare = right;
    bare.coeff = PointClass::one();
    ASElem moved = mul(ASElem(left), eta_R(right.coeff));
    for (const auto& lm : moved.monos)
        xor_in(acc.pairs, {lm, bare});
}
}  // namespace detail

inline TensorElem tensor(const ASElem& x, const ASElem& y)
{
    TensorElem out;
    for (const auto& xm : x.monos)
        for (const auto& ym : y.monos)
            detail::tensor_accumulate(out, xm, ym);
    return out;
}

inline TensorElem add(const TensorElem& x, const TensorElem& y)
{
    TensorElem out;
    out.pairs = detail::xor_merge(x.pairs, y.pairs);
    return out;
}

inline TensorElem mul(const TensorElem& x, const TensorElem& y)
{
    TensorElem out;
    for (const auto& [x1, y1] : x.pairs)
        for (const auto& [x2, y2] : y.pairs) {
            ASElem l = mul(x1, x2);
            ASElem r = mul(y1, y2);
            for (const auto& lm : l.monos)
                for (const auto& rm : r.monos)
                    detail::tensor_accumulate(out, lm, rm);
        }
    return out;
}

inline TensorElem mul_left(const ASElem& c, const TensorElem& t)
{
    TensorElem out;
    for (const auto& cm : c.monos)
        for (const auto& [x, y] : t.pairs) {
            ASElem l = mul(cm, x);
            for (const auto& lm : l.monos)
                detail::tensor_accumulate(out, lm, y);
        }
    return out;
}

// psi(xi_k) = sum_j xi_{k-j}^{2^j} (x) xi_j,
// psi(tau_k) = tau_k (x) 1 + sum_j xi_{k-j}^{2^j} (x) tau_j, with xi_0 = 1.
inline TensorElem psi_xi(int k)
{
    TensorElem out;
    for (int j = 0; j <= k; ++j) {
        ASMonomial l;
        if (k - j > 0)
            l.xi.push_back({k - j, 1 << j});
        ASMonomial r;
        if (j > 0)
            r.xi.push_back({j, 1});
        detail::xor_in(out.pairs, {l, r});
    }
    return out;
}

inline TensorElem psi_tau(int k)
{
    TensorElem out;
    ASMonomial tk;
    tk.tau = {k};
    detail::xor_in(out.pairs, {tk, ASMonomial{}});
    for (int j = 0; j <= k; ++j) {
        ASMonomial l;
        if (k - j > 0)
            l.xi.push_back({k - j, 1 << j});
        ASMonomial r;
        r.tau = {j};
        detail::xor_in(out.pairs, {l, r});
    }
    return out;
}

inline TensorElem psi(const ASElem& x)
{
    TensorElem out;
    for (const auto& m : x.monos) {
        TensorElem t;
        ASMonomial c;
        c.coeff = m.coeff;
        detail::tensor_accumulate(t, c, ASMonomial{});
        for (auto [i, e] : m.xi) {
            TensorElem p = psi_xi(i);
            for (int rep = 0; rep < e; ++rep)
                t = mul(t, p);
        }
        for (int i : m.tau)
            t = mul(t, psi_tau(i));
        out = add(out, t);
    }
    return out;
}

// Collapse of psi by the augmentation on the indicated side.
inline ASElem counit_right_collapse(const TensorElem& t)
{
    ASElem out;
    for (const auto& [x, y] : t.pairs)
        if (y.symbol_free()) {
            assert(y.coeff.is_one());
            out = add(out, ASElem(x));
        }
    return out;
}

inline ASElem counit_left_collapse(const TensorElem& t)
{
    ASElem out;
    for (const auto& [x, y] : t.pairs)
        if (x.symbol_free()) {
            ASMonomial m = y;
            m.coeff = x.coeff;
            out = add(out, ASElem(m));
        }
    return out;
}

// Bockstein: derivation with beta(tau_i) = xi_i for i >= 1, beta(tau_0) = 0,
// beta(xi_i) = 0, beta(u) = a, beta(a) = 0. Undefined on the divided cone.
inline ASElem bockstein(const ASElem& x)
{
    ASElem out;
    for (const auto& m : x.monos) {
        if (!m.coeff.is_pos())
            throw std::invalid_argument("bockstein: negative-cone coefficient");
        if (m.coeff.e1 & 1) {
            ASMonomial t = m;
            t.coeff = PointClass::pos(m.coeff.e1 - 1, m.coeff.e2 + 1);
            out = add(out, ASElem(t));
        }
        for (int i : m.tau) {
            if (i == 0)
                continue;
            ASMonomial t = m;
            std::erase(t.tau, i);
            RawMonomial raw{t.coeff, t.xi, {}, 0};
            for (int j : t.tau)
                detail::mi_push(raw.tau, j, 1);
            detail::mi_push(raw.xi, i, 1);
            out = add(out, normalize(raw));
        }
    }
    return out;
}

// Derivation across a tensor: beta(x (x) y) = beta(x) (x) y + x (x) beta(y).
inline TensorElem bockstein(const TensorElem& t)
{
    TensorElem out;
    for (const auto& [x, y] : t.pairs) {
        ASElem bx = bockstein(ASElem(x));
        for (const auto& m : bx.monos)
            detail::tensor_accumulate(out, m, y);
        ASElem by = bockstein(ASElem(y));
        for (const auto& m : by.monos) {
            ASElem l = mul(ASElem(x), ASElem::coeff(m.coeff));
            ASMonomial bare = m;
            bare.coeff = PointClass::one();
            for (const auto& lm : l.monos)
                detail::tensor_accumulate(out, lm, bare);
        }
    }
    return out;
}

// Conjugation (antipode): ring map with chi(xi_i), chi(tau_i) the Milnor
// conjugates and chi(u) = u + tau_0 a, chi(a) = a.
inline ASElem conjugate(const ASElem& x)
{
    ASElem out;
    for (const auto& m : x.monos) {
        if (!m.coeff.is_pos())
            throw std::invalid_argument("conjugate: negative-cone coefficient");
        ASElem t = eta_R(m.coeff);  // chi restricted to the base is eta_R
        for (auto [i, e] : m.xi) {
            ASElem xb = from_coeff_alg(conjugate_xi(i));
            for (int rep = 0; rep < e; ++rep)
                t = mul(t, xb);
        }
        for (int i : m.tau)
            t = mul(t, from_coeff_alg(conjugate_tau(i)));
        out = add(out, t);
    }
    return out;
}

inline std::string to_string(const ASMonomial& m)
{
    std::string r;
    if (!m.coeff.is_one() || m.symbol_free())
        r = to_string(m.coeff);
    auto app = [&r](const std::string& part) {
        if (!r.empty())
            r += "*";
        r += part;
    };
    for (int i : m.tau)
        app("tau" + std::to_string(i));
    for (auto [i, e] : m.xi)
        app("xi" + std::to_string(i) + (e == 1 ? "" : "^" + std::to_string(e)));
    return r;
}

inline std::string to_string(const ASElem& x)
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

inline std::string to_string(const TensorElem& t)
{
    if (t.pairs.empty())
        return "0";
    std::string r;
    for (const auto& [x, y] : t.pairs) {
        if (!r.empty())
            r += " + ";
        r += "(" + to_string(x) + ")(x)(" + to_string(y) + ")";
    }
    return r;
}

}  // namespace c2ops
