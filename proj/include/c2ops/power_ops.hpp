#pragma once

// Power operations Q^{s rho} and Q^{s rho + sigma} = Q^{(s+1) rho - 1}.
//
// Determined generator values:
//   vanishing   Q^{s rho} x = 0 for s < min{a, (a+b)/2}, deg x = (a,b)
//   squaring    Q^{n rho - eps} x = x^2 in degree n rho - eps
//   table       Q^{2^k rho} tau_k = tau_{k+1} + tau_0 xi_{k+1}
//               Q^{2^k rho} xi_k  = xi_{k+1} + xi_1 xi_k^2
//   coefficients  Q^0 = id on HF*, Q^{s rho} 1 = 0 for s != 0
//   sigma line  Q^{s rho + sigma} = beta o Q^{(s+1) rho}
// extended by additivity and the Cartan formula, with powers grouped as
// Q^q(y^{2^j}) = (Q^{q/2^j} y)^{2^j} when 2^j | q and 0 otherwise.
//
// Values Q^{q rho} tau_k, Q^{q rho} xi_k for q > 2^k are not in the table;
// in Strict mode they raise UndeterminedError. The co-Nishida identity for
// the classes c and b of Bmu2 determines them, and Extended mode solves
// those identities as triangular series equations (the same mechanism that
// derives the action table itself).

#include <functional>

#include "bmu.hpp"
#include "ext_powers.hpp"

namespace c2ops {

// Q^{s rho} (line = Rho) or Q^{s rho + sigma} (line = RhoSigma).
// Q^{s rho - 1} is the alias Q^{(s-1) rho + sigma}.
struct QSymbol {
    enum class Line : uint8_t { Rho, RhoSigma };
    Line line = Line::Rho;
    int s = 0;

    static QSymbol rho(int s) { return {Line::Rho, s}; }
    static QSymbol rho_minus_one(int s) { return {Line::RhoSigma, s - 1}; }
};

namespace detail {
inline int cdiv2(int x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }
}

// Smallest s with Q^{s rho} possibly nonzero on degree V.
inline int vanishing_bound(Degree V)
{
    return std::min(V.a, detail::cdiv2(V.a + V.b));
}

enum class QMode { Strict, Extended };

// ---------------------------------------------------------------------------
// Derived tau/xi series via the co-Nishida identities on Bmu2.
//
// With F_k(u) = sum_q Q^{q rho}(tau_k) u^q and H_m(u) = sum_q Q^{q rho}(xi_m) u^q:
//   F_0 = tau_0 + u^{-1} tau(u) + u^{-1} beta(F_0) tau(u)
//   F_k = tau_k + u^{-2^{k-1}} F_{k-1} + u^{-1} beta(F_k) tau(u)
//                 + u^{-2^{k-1}-1} beta(F_{k-1}) tau(u)            (k >= 1)
//   H_m = xi_m + xi_{m-1}^2 xi(u)^{-1} + u^{-2^{m-1}} H_{m-1}
//                 + u^{-1} beta(H_m) tau(u)
//                 + u^{-2^{m-1}-1} beta(H_{m-1}) tau(u)            (m >= 1)
// solved ascending in the exponent: applying beta removes the implicit
// beta(f_q) tau_0 term because beta tau_0 = 0 and beta^2 = 0.
// ---------------------------------------------------------------------------
namespace detail {

inline CoeffAlg beta_coeffalg(const CoeffAlg& x)
{
    CoeffAlg out;
    for (const auto& m : x.monos)
        for (auto [i, e] : m.tau) {
            if (i == 0 || e % 2 == 0)
                continue;
            SymMonomial t = m;
            for (auto& p : t.tau)
                if (p.first == i)
                    p.second -= 1;
            std::erase_if(t.tau, [](auto& p) { return p.second == 0; });
            mi_push(t.xi, i, 1);
            xor_in(out.monos, t);
        }
    return out;
}

struct CascadeSeries {
    std::vector<CoeffAlg> f;  // f[q] = Q^{q rho} value, q < lo stored as zero
    std::vector<CoeffAlg> bf; // beta of f[q]
};

// Solve F = W + u^{-1} beta(F) tau(u) for F supported in degrees >= lo,
// given the known part W as coefficients W[q], ascending.
inline void cascade_solve(CascadeSeries& S, const std::function<CoeffAlg(int)>& W, int lo,
                          int q_hi)
{
    for (int q = (int)S.f.size(); q <= q_hi; ++q) {
        if (q < lo) {
            S.f.push_back(CoeffAlg::zero());
            S.bf.push_back(CoeffAlg::zero());
            continue;
        }
        // f_q = W_q + beta(f_q) tau_0 + sum_{i>=1} beta(f_{q+1-2^i}) tau_i
        CoeffAlg known = W(q);
        for (int i = 1; q + 1 - (1 << i) >= 0; ++i) {
            int q2 = q + 1 - (1 << i);
            if (q2 < (int)S.bf.size() && q2 < q)
                known = add(known, mul(S.bf[q2], CoeffAlg::tau(i)));
        }
        // beta of the equation: beta(f_q) = beta(known)  (+ terms with beta tau_i
        // already folded into `known`'s beta)
        CoeffAlg g = beta_coeffalg(known);
        CoeffAlg fq = add(known, mul(g, CoeffAlg::tau(0)));
        S.f.push_back(fq);
        S.bf.push_back(g);
    }
}

inline const CascadeSeries& tau_cascade(int k, int q_hi);

inline const CascadeSeries& xi_cascade(int m, int q_hi);

inline const CascadeSeries& tau_cascade(int k, int q_hi)
{
    static std::vector<CascadeSeries> cache;
    if ((int)cache.size() <= k)
        cache.resize(k + 1);
    CascadeSeries& S = cache[k];
    if ((int)S.f.size() > q_hi)
        return S;
    int lo = 1 << k;
    if (k == 0) {
        // W(q) = tau_k delta_{q,0}-free part: coefficients of u^{-1} tau(u)
        auto W = [](int q) {
            // u^{-1} tau(u) has tau_i at exponent 2^i - 1; the constant tau_0
            // cancels the left-hand side.
            CoeffAlg out;
            for (int i = 1; (1 << i) - 1 <= q + 1; ++i)
                if ((1 << i) - 1 == q)
                    out = add(out, CoeffAlg::tau(i));
            return out;
        };
        cascade_solve(S, W, lo, q_hi);
        return S;
    }
    int shift = 1 << (k - 1);
    const CascadeSeries& prev = tau_cascade(k - 1, q_hi + shift + 1);
    auto W = [&prev, shift](int q) {
        CoeffAlg out;
        // u^{-shift} F_{k-1}
        if (q + shift < (int)prev.f.size())
            out = add(out, prev.f[q + shift]);
        // u^{-shift-1} beta(F_{k-1}) tau(u)
        for (int i = 0; (1 << i) <= q + shift + 1; ++i) {
            int q2 = q + shift + 1 - (1 << i);
            if (q2 >= 0 && q2 < (int)prev.bf.size())
                out = add(out, mul(prev.bf[q2], CoeffAlg::tau(i)));
        }
        return out;
    };
    cascade_solve(S, W, lo, q_hi);
    return S;
}

inline const CascadeSeries& xi_cascade(int m, int q_hi)
{
    static std::vector<CascadeSeries> cache;
    if ((int)cache.size() <= m)
        cache.resize(m + 1);
    if (m == 0) {
        // H_0 is the constant series 1 of the unit; never queried here.
        throw std::logic_error("xi_cascade(0) is the unit series");
    }
    CascadeSeries& S = cache[m];
    if ((int)S.f.size() > q_hi)
        return S;
    int lo = (1 << m) - 1;
    int shift = 1 << (m - 1);
    // xi(u)^{-1} coefficients, shared by every m
    static LaurentSeries xinv = power(xi_series(260), -1);
    if (q_hi + 2 >= xinv.ceiling)
        xinv = power(xi_series(2 * q_hi + 8), -1);
    if (m == 1) {
        auto W = [&](int q) {
            // xi_0^2 xi(u)^{-1} = xi(u)^{-1}; the u^{-1} and constant terms
            // cancel against the left-hand side and u^{-1} H_0.
            return q >= 1 ? coeff(xinv, q) : CoeffAlg::zero();
        };
        cascade_solve(S, W, lo, q_hi);
        return S;
    }
    const CascadeSeries& prev = xi_cascade(m - 1, q_hi + shift + 1);
    auto W = [&, shift, m](int q) {
        CoeffAlg out;
        // xi_{m-1}^2 xi(u)^{-1}
        CoeffAlg c = coeff(xinv, q);
        if (!c.is_zero())
            out = add(out, mul(square(CoeffAlg::xi(m - 1)), c));
        if (q + shift < (int)prev.f.size())
            out = add(out, prev.f[q + shift]);
        for (int i = 0; (1 << i) <= q + shift + 1; ++i) {
            int q2 = q + shift + 1 - (1 << i);
            if (q2 >= 0 && q2 < (int)prev.bf.size())
                out = add(out, mul(prev.bf[q2], CoeffAlg::tau(i)));
        }
        return out;
    };
    cascade_solve(S, W, lo, q_hi);
    return S;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Q^{q rho} on normalized dual-Steenrod monomials.
// ---------------------------------------------------------------------------
namespace detail {

// A single factor f^{2^j} of a monomial.
struct QFactor {
    enum class Kind : uint8_t { Coeff, Xi, Tau } kind;
    int index = 0;  // xi/tau index; unused for Coeff
    PointClass coeff;
    int pow2 = 1;  // the factor is (base)^{pow2}, pow2 a power of two
};

inline Degree factor_degree(const QFactor& f)
{
    switch (f.kind) {
        case QFactor::Kind::Coeff:
            return degree_of(f.coeff);
        case QFactor::Kind::Xi:
            return f.pow2 * (((1 << f.index) - 1) * kRho);
        default:
            return f.pow2 * ((((1 << f.index) - 1) * kRho) + kOne);
    }
}

inline std::vector<QFactor> factorize(const ASMonomial& m)
{
    std::vector<QFactor> out;
    if (!m.coeff.is_one())
        out.push_back({QFactor::Kind::Coeff, 0, m.coeff, 1});
    for (auto [i, e] : m.xi)
        for (int bit = 0; (1 << bit) <= e; ++bit)
            if (e & (1 << bit))
                out.push_back({QFactor::Kind::Xi, i, PointClass::one(), 1 << bit});
    for (int i : m.tau)
        out.push_back({QFactor::Kind::Tau, i, PointClass::one(), 1});
    return out;
}

// Q^{q rho} on a single base generator (pow2 handled by the caller).
inline ASElem q_base(QFactor::Kind kind, int index, PointClass coeff, int q, QMode mode)
{
    switch (kind) {
        case QFactor::Kind::Coeff: {
            Degree d = degree_of(coeff);
            if (q < vanishing_bound(d))
                return ASElem::zero();
            if (q == 0)
                return ASElem::coeff(coeff);
            if (coeff.is_one())
                return ASElem::zero();
            throw UndeterminedError("Q^{" + std::to_string(q) +
                                    "rho} on coefficient class " + to_string(coeff) +
                                    " is not determined");
        }
        case QFactor::Kind::Xi: {
            int k = index;
            if (q < (1 << k) - 1)
                return ASElem::zero();
            if (q == (1 << k) - 1)
                return ASElem::xi(k, 2);  // squaring degree
            if (q == (1 << k))
                return add(ASElem::xi(k + 1), mul(ASElem::xi(1), ASElem::xi(k, 2)));
            if (mode == QMode::Strict)
                throw UndeterminedError("Q^{" + std::to_string(q) + "rho} xi_" +
                                        std::to_string(k) + " is not determined");
            return from_coeff_alg(xi_cascade(k, q).f[q]);
        }
        default: {
            int k = index;
            if (q < (1 << k))
                return ASElem::zero();
            if (q == (1 << k))
                return add(ASElem::tau(k + 1),
                           mul(ASElem::tau(0), ASElem::xi(k + 1)));
            if (mode == QMode::Strict)
                throw UndeterminedError("Q^{" + std::to_string(q) + "rho} tau_" +
                                        std::to_string(k) + " is not determined");
            return from_coeff_alg(tau_cascade(k, q).f[q]);
        }
    }
}

inline ASElem q_power(const ASElem& x, int pow2)
{
    ASElem out = x;
    for (int p = 1; p < pow2; p *= 2)
        out = mul(out, out);
    return out;
}

// Cartan over the factor list, recursively. Terms where any factor falls
// below its vanishing bound are dropped before undetermined values are
// touched.
inline ASElem q_factors(const std::vector<QFactor>& fs, size_t from, int q, QMode mode)
{
    if (from == fs.size())
        return q == 0 ? ASElem::one() : ASElem::zero();
    if (from + 1 == fs.size()) {
        const QFactor& f = fs[from];
        if (q % f.pow2 != 0)
            return ASElem::zero();
        return q_power(q_base(f.kind, f.index, f.coeff, q / f.pow2, mode), f.pow2);
    }
    const QFactor& f = fs[from];
    Degree rest_deg{0, 0};
    for (size_t i = from + 1; i < fs.size(); ++i)
        rest_deg += factor_degree(fs[i]);
    int t_f = vanishing_bound(factor_degree(f));
    int t_rest = vanishing_bound(rest_deg);
    ASElem out;
    for (int q1 = t_f; q1 <= q - t_rest; ++q1) {
        if (q1 % f.pow2 != 0)
            continue;
        ASElem rest = q_factors(fs, from + 1, q - q1, mode);
        if (rest.is_zero())
            continue;
        ASElem head = q_power(q_base(f.kind, f.index, f.coeff, q1 / f.pow2, mode), f.pow2);
        if (head.is_zero())
            continue;
        out = add(out, mul(head, rest));
    }
    return out;
}

}  // namespace detail

// Q^{q rho} on a monomial, with the total-degree vanishing filter applied
// before the Cartan expansion.
inline ASElem q_rho(int q, const ASMonomial& m, QMode mode = QMode::Strict)
{
    if (q < vanishing_bound(degree_of(m)))
        return ASElem::zero();
    return detail::q_factors(detail::factorize(m), 0, q, mode);
}

inline ASElem q_rho(int q, const ASElem& x, QMode mode = QMode::Strict)
{
    ASElem out;
    for (const auto& m : x.monos)
        out = add(out, q_rho(q, m, mode));
    return out;
}

// Q^{q rho + sigma} = beta o Q^{(q+1) rho}.
inline ASElem q_sigma(int q, const ASElem& x, QMode mode = QMode::Strict)
{
    return bockstein(q_rho(q + 1, x, mode));
}

inline ASElem q_apply(QSymbol sym, const ASElem& x, QMode mode = QMode::Strict)
{
    return sym.line == QSymbol::Line::Rho ? q_rho(sym.s, x, mode) : q_sigma(sym.s, x, mode);
}

// ---------------------------------------------------------------------------
// Q on Bmu2: the F/G series of a monomial, as t-polynomials with BmuElem
// coefficients.
// ---------------------------------------------------------------------------

struct BmuQSeries {
    std::map<int, BmuElem> terms;  // exponent -> value
    std::set<int> undet;           // exponents with undetermined values
    int valid_hi = 1 << 28;        // exponents above this were truncated

    void push(int r, const BmuElem& v)
    {
        if (v.is_zero())
            return;
        auto [it, fresh] = terms.try_emplace(r, v);
        if (!fresh) {
            it->second = add(it->second, v);
            if (it->second.is_zero())
                terms.erase(it);
        }
    }
};

namespace detail {

inline BmuQSeries bmu_q_mul(const BmuQSeries& x, const BmuQSeries& y)
{
    BmuQSeries out;
    int lo_x = x.terms.empty() ? 0 : x.terms.begin()->first;
    int lo_y = y.terms.empty() ? 0 : y.terms.begin()->first;
    out.valid_hi = std::min(x.valid_hi + lo_y, y.valid_hi + lo_x);
    for (const auto& [r, v] : x.terms)
        for (const auto& [s, w] : y.terms)
            if (r + s <= out.valid_hi)
                out.push(r + s, mul(v, w));
    for (int p : x.undet) {
        for (const auto& [s, w] : y.terms)
            out.undet.insert(p + s);
        for (int s : y.undet)
            out.undet.insert(p + s);
    }
    for (int p : y.undet)
        for (const auto& [s, w] : x.terms)
            out.undet.insert(p + s);
    return out;
}

inline BmuQSeries bmu_q_add(const BmuQSeries& x, const BmuQSeries& y)
{
    BmuQSeries out = x;
    out.valid_hi = std::min(x.valid_hi, y.valid_hi);
    for (const auto& [r, v] : y.terms)
        out.push(r, v);
    out.undet.insert(y.undet.begin(), y.undet.end());
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = (it->first > out.valid_hi) ? out.terms.erase(it) : std::next(it);
    return out;
}

// invert a series whose lowest term is a single invertible b-monomial
inline BmuQSeries bmu_q_invert(const BmuQSeries& f, int hi)
{
    if (!f.undet.empty())
        throw UndeterminedError("inverting a Q-series with undetermined entries");
    auto lead_it = f.terms.begin();
    if (lead_it == f.terms.end())
        throw std::invalid_argument("inverting zero Q-series");
    int lv = lead_it->first;
    const BmuElem& lead = lead_it->second;
    if (lead.monos.size() != 1 || lead.monos[0].c_exp != 0 ||
        !lead.monos[0].coeff.is_one())
        throw std::invalid_argument("Q-series lead not an invertible b-power");
    BmuMonomial lead_inv{PointClass::one(), 0, -lead.monos[0].b_exp};
    // f = L(1 + R), 1/f = L^{-1} sum R^k
    BmuQSeries R;
    R.valid_hi = f.valid_hi - lv;
    for (auto it = std::next(lead_it); it != f.terms.end(); ++it) {
        BmuElem v;
        for (const auto& m : it->second.monos)
            v = add(v, mul(lead_inv, m));
        R.push(it->first - lv, v);
    }
    BmuQSeries acc;
    acc.valid_hi = hi - (-lv);
    acc.push(0, BmuElem::one());
    if (!R.terms.empty()) {
        int rlo = R.terms.begin()->first;
        BmuQSeries Rk = acc;
        for (int k = 1; k * rlo <= acc.valid_hi; ++k) {
            Rk = bmu_q_mul(Rk, R);
            acc = bmu_q_add(acc, Rk);
        }
    }
    BmuQSeries out;
    out.valid_hi = hi;
    for (const auto& [r, v] : acc.terms) {
        BmuElem w;
        for (const auto& m : v.monos)
            w = add(w, mul(lead_inv, m));
        out.push(r - lv, w);
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = (it->first > out.valid_hi) ? out.terms.erase(it) : std::next(it);
    return out;
}

}  // namespace detail

// F and G series of a Bmu monomial, valid for extraction up to t^hi.
inline std::pair<BmuQSeries, BmuQSeries> bmu_q_series(const BmuMonomial& m, int hi)
{
    using detail::bmu_q_add;
    using detail::bmu_q_mul;
    BmuQSeries F, G;
    F.push(0, BmuElem::one());
    // coefficient factor
    if (!m.coeff.is_one()) {
        BmuQSeries Fc, Gc;
        Fc.push(0, BmuElem(BmuMonomial{m.coeff, 0, 0}));
        if (m.coeff.is_pos()) {
            if (m.coeff.e1 & 1)
                Gc.push(-1,
                        BmuElem(BmuMonomial{PointClass::pos(m.coeff.e1 - 1, m.coeff.e2 + 1), 0, 0}));
        } else {
            // on the divided cone only Q^0 = id and the vanishing range are
            // known; the window in between is undetermined
            int T = vanishing_bound(degree_of(m.coeff));
            for (int r = T; r <= -1; ++r)
                Fc.undet.insert(r);
            for (int r = T - 1; r <= -1; ++r)
                Gc.undet.insert(r);
        }
        G = bmu_q_add(bmu_q_mul(G, Fc), bmu_q_mul(F, Gc));
        F = bmu_q_mul(F, Fc);
    }
    if (m.c_exp == 1) {
        BmuQSeries Fc, Gc;
        Fc.push(0, BmuElem(BmuMonomial::c()));
        Gc.push(-1, BmuElem(BmuMonomial::b()));
        G = bmu_q_add(bmu_q_mul(G, Fc), bmu_q_mul(F, Gc));
        F = bmu_q_mul(F, Fc);
    }
    if (m.b_exp != 0) {
        BmuQSeries Fb;
        Fb.push(0, BmuElem(BmuMonomial::b()));
        Fb.push(-1, BmuElem(BmuMonomial::b(2)));
        BmuQSeries Fbj;
        Fbj.push(0, BmuElem::one());
        int n = m.b_exp > 0 ? m.b_exp : -m.b_exp;
        for (int i = 0; i < n; ++i)
            Fbj = bmu_q_mul(Fbj, Fb);
        if (m.b_exp < 0)
            Fbj = detail::bmu_q_invert(Fbj, hi + 1);
        G = bmu_q_mul(G, Fbj);  // G_b = 0
        F = bmu_q_mul(F, Fbj);
    }
    return {F, G};
}

// User-facing action on Bmu2.
inline BmuElem q_apply(QSymbol sym, const BmuElem& x)
{
    BmuElem out;
    for (const auto& m : x.monos) {
        auto [F, G] = bmu_q_series(m, sym.s + 1);
        const BmuQSeries& S = sym.line == QSymbol::Line::Rho ? F : G;
        if (sym.s > S.valid_hi)
            throw CeilingError("bmu Q-series truncated before requested exponent");
        if (S.undet.count(sym.s))
            throw UndeterminedError("power operation on " + to_string(m) +
                                    " is not determined at this index");
        auto it = S.terms.find(sym.s);
        if (it != S.terms.end())
            out = add(out, it->second);
    }
    return out;
}

inline BmuElem q_rho_bmu(int s, const BmuElem& x) { return q_apply(QSymbol::rho(s), x); }

inline BmuElem q_sigma_bmu(int s, const BmuElem& x)
{
    return q_apply(QSymbol{QSymbol::Line::RhoSigma, s}, x);
}

}  // namespace c2ops
