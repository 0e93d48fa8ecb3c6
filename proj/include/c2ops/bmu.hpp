#pragma once

// The cohomology ring of the equivariant classifying space of mu_2,
//   HF^*[[c, b]] / (c^2 = a c + u b),
// optionally with b inverted, its completed right Steenrod coaction, and the
// action of power operations on it. Power operations are carried as a pair
// of t-series per class: F(x) = sum_r Q^{r rho}(x) t^r and
// G(x) = sum_r Q^{r rho + sigma}(x) t^r, which multiply by the Cartan rule
// F(xy) = F(x)F(y), G(xy) = G(x)F(y) + F(x)G(y).

#include <map>
#include <set>

#include "dual_steenrod.hpp"
#include "series.hpp"

namespace c2ops {

struct UndeterminedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// coeff * c^eps * b^j; j may be negative in the b-localized ring.
struct BmuMonomial {
    PointClass coeff = PointClass::one();
    int c_exp = 0;  // 0 or 1 after normalization
    int b_exp = 0;

    static BmuMonomial one() { return {}; }
    static BmuMonomial b(int j = 1) { return {PointClass::one(), 0, j}; }
    static BmuMonomial c() { return {PointClass::one(), 1, 0}; }

    bool is_one() const { return coeff.is_one() && c_exp == 0 && b_exp == 0; }
    auto operator<=>(const BmuMonomial&) const = default;
};

inline Degree degree_of(const BmuMonomial& m)
{
    // homotopy degrees: |b| = -rho, |c| = -sigma
    return degree_of(m.coeff) + (-m.b_exp) * kRho + (m.c_exp ? Degree{0, -1} : Degree{0, 0});
}

struct BmuElem {
    std::vector<BmuMonomial> monos;

    BmuElem() = default;
    explicit BmuElem(BmuMonomial m) : monos{std::move(m)} {}
    static BmuElem zero() { return {}; }
    static BmuElem one() { return BmuElem(BmuMonomial::one()); }

    bool is_zero() const { return monos.empty(); }
    bool operator==(const BmuElem&) const = default;
};

inline BmuElem add(const BmuElem& x, const BmuElem& y)
{
    BmuElem out;
    out.monos = detail::xor_merge(x.monos, y.monos);
    return out;
}

// Normalizing product: c^2 -> a c + u b.
inline BmuElem mul(const BmuMonomial& x, const BmuMonomial& y)
{
    auto cf = mul(x.coeff, y.coeff);
    if (!cf)
        return BmuElem::zero();
    int ce = x.c_exp + y.c_exp;
    int be = x.b_exp + y.b_exp;
    if (ce < 2)
        return BmuElem(BmuMonomial{*cf, ce, be});
    BmuElem out;
    if (auto ca = mul(*cf, PointClass::a()))
        out = add(out, BmuElem(BmuMonomial{*ca, 1, be}));
    if (auto cu = mul(*cf, PointClass::u()))
        out = add(out, BmuElem(BmuMonomial{*cu, 0, be + 1}));
    return out;
}

inline BmuElem mul(const BmuElem& x, const BmuElem& y)
{
    BmuElem out;
    for (const auto& m : x.monos)
        for (const auto& n : y.monos)
            out = add(out, mul(m, n));
    return out;
}

inline BmuElem mul_point(const PointElem& c, const BmuElem& x)
{
    BmuElem out;
    for (auto pc : c.classes)
        for (const auto& m : x.monos)
            out = add(out, mul(BmuMonomial{pc, 0, 0}, m));
    return out;
}

// Bockstein: beta c = b, beta b = 0, derivation over products.
inline BmuElem bmu_bockstein(const BmuMonomial& m)
{
    if (!m.coeff.is_pos())
        throw UndeterminedError("bockstein of a negative-cone coefficient on Bmu2");
    BmuElem out;
    if (m.coeff.e1 & 1)
        out = add(out, BmuElem(BmuMonomial{PointClass::pos(m.coeff.e1 - 1, m.coeff.e2 + 1),
                                           m.c_exp, m.b_exp}));
    if (m.c_exp == 1)
        out = add(out, BmuElem(BmuMonomial{m.coeff, 0, m.b_exp + 1}));
    return out;
}

// Sum of Bmu (x) A-monomial pairs; A-side coefficients are migrated onto the
// Bmu factor, so stored A-monomials have coefficient 1.
struct BmuTensor {
    std::vector<std::pair<BmuMonomial, ASMonomial>> pairs;

    static BmuTensor zero() { return {}; }
    bool is_zero() const { return pairs.empty(); }
    bool operator==(const BmuTensor&) const = default;
};

namespace detail {
inline void bmu_tensor_accumulate(BmuTensor& acc, const BmuMonomial& left, const ASMonomial& right)
{
    if (right.coeff.is_one()) {
        xor_in(acc.pairs, {left, right});
        return;
    }
    auto cf = mul(left.coeff, right.coeff);
    if (!cf)
        return;
    ASMonomial bare = right;
    bare.coeff = PointClass::one();
    xor_in(acc.pairs, {BmuMonomial{*cf, left.c_exp, left.b_exp}, bare});
}
}  // namespace detail

inline BmuTensor add(const BmuTensor& x, const BmuTensor& y)
{
    BmuTensor out;
    out.pairs = detail::xor_merge(x.pairs, y.pairs);
    return out;
}

// Multiply the A-side by an element of the dual Steenrod algebra.
inline BmuTensor mul_as_side(const BmuTensor& t, const ASElem& z)
{
    BmuTensor out;
    for (const auto& [bm, am] : t.pairs)
        for (const auto& zm : z.monos) {
            ASElem prod = mul(am, zm);
            for (const auto& pm : prod.monos)
                detail::bmu_tensor_accumulate(out, bm, pm);
        }
    return out;
}

// Derivation Bockstein across the tensor.
inline BmuTensor bockstein(const BmuTensor& t)
{
    BmuTensor out;
    for (const auto& [bm, am] : t.pairs) {
        BmuElem bl = bmu_bockstein(bm);
        for (const auto& m : bl.monos)
            detail::bmu_tensor_accumulate(out, m, am);
        ASElem br = bockstein(ASElem(am));
        for (const auto& m : br.monos) {
            auto cf = mul(bm.coeff, m.coeff);
            if (!cf)
                continue;
            ASMonomial bare = m;
            bare.coeff = PointClass::one();
            detail::xor_in(out.pairs, {BmuMonomial{*cf, bm.c_exp, bm.b_exp}, bare});
        }
    }
    return out;
}

// Completed right coaction, truncated at b-exponent <= b_cap:
//   psi(b^s)  = sum_i b^i (x) [xi(t)^s]_{t^i}
//   psi(c b^s) = sum_i c b^i (x) [xi(t)^s]_{t^i} + sum_i b^i (x) [tau(t) xi(t)^s]_{t^i}
// and psi(coeff x) = psi(x) * (1 (x) eta_R(coeff)).
inline BmuTensor bmu_coaction(const BmuElem& x, int b_cap)
{
    BmuTensor out;
    for (const auto& m : x.monos) {
        BmuTensor t;
        int s = m.b_exp;
        int C = std::max(2, b_cap + 2 + 2 * std::max(0, -s) + 2 * m.c_exp);
        auto emit = [&t, b_cap](BmuMonomial bm, const CoeffAlg& c) {
            if (bm.b_exp > b_cap)
                return;
            for (const auto& mono : c.monos) {
                ASMonomial am;
                am.xi = mono.xi;
                for (auto [i, e] : mono.tau) {
                    if (e != 1)
                        throw std::logic_error("coaction coefficient not tau-linear");
                    am.tau.push_back(i);
                }
                std::sort(am.tau.begin(), am.tau.end());
                detail::xor_in(t.pairs, {bm, am});
            }
        };
        LaurentSeries xis = power(xi_series(C), s);
        for (int i = std::min(s, 0); i <= b_cap; ++i) {
            if (i >= xis.ceiling)
                throw CeilingError("bmu_coaction window exhausted");
            CoeffAlg cf = coeff(xis, i);
            if (!cf.is_zero())
                emit(BmuMonomial{PointClass::one(), m.c_exp, i}, cf);
        }
        if (m.c_exp == 1) {
            LaurentSeries f = mul(tau_series(C), xis);
            for (int i = std::min(s, 0); i <= b_cap; ++i) {
                if (i >= f.ceiling)
                    throw CeilingError("bmu_coaction window exhausted");
                CoeffAlg cf = coeff(f, i);
                if (!cf.is_zero())
                    emit(BmuMonomial{PointClass::one(), 0, i}, cf);
            }
        }
        if (!m.coeff.is_one())
            t = mul_as_side(t, eta_R(m.coeff));
        // migrate the module coefficient onto the Bmu factor
        out = add(out, t);
    }
    return out;
}

inline std::string to_string(const BmuMonomial& m)
{
    std::string r;
    if (!m.coeff.is_one() || (m.c_exp == 0 && m.b_exp == 0))
        r = to_string(m.coeff);
    auto app = [&r](const std::string& p) {
        if (!r.empty())
            r += "*";
        r += p;
    };
    if (m.c_exp == 1)
        app("c");
    if (m.b_exp != 0)
        app("b" + (m.b_exp == 1 ? std::string() : "^" + std::to_string(m.b_exp)));
    return r;
}

inline std::string to_string(const BmuElem& x)
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

inline std::string to_string(const BmuTensor& t)
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
