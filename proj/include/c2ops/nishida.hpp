#pragma once

// The interchange law between the right Steenrod coaction and power
// operations, as a formal power-series identity:
//   sum_r psi(Q^{r rho} x) t^r
//     = sum_r Q^{r rho}(psi x) xibar(t)^r + sum_r Q^{r rho+sigma}(psi x) xibar(t)^r taubar(t),
// where Q acts on a tensor through the external Cartan rule and each term is
// filtered by total-degree vanishing first. The same identity, read off at
// single coefficients with one formal unknown, derives the action on tau_k.

#include "power_ops.hpp"

namespace c2ops {

struct NishidaWindow {
    int r_lo = -3;
    int r_hi = 3;
    int b_cap = 12;  // Bmu terms kept up to this b-exponent
};

struct Report {
    enum class Status : uint8_t { Ok, Fail, Undetermined };
    Status status = Status::Ok;
    std::string witness;

    bool ok() const { return status == Status::Ok; }
};

namespace detail {

// Q^{r rho} applied externally to one coaction term, Extended mode.
inline BmuTensor ext_q_rho_term(int r, const BmuMonomial& bm, const ASMonomial& am)
{
    if (r < vanishing_bound(degree_of(bm) + degree_of(am)))
        return BmuTensor::zero();
    int t_as = vanishing_bound(degree_of(am));
    BmuTensor out;
    auto [F, G] = bmu_q_series(bm, r - t_as);
    for (int p : F.undet)
        if (r - p >= t_as)
            throw UndeterminedError("external operation hits an undetermined Bmu value");
    for (const auto& [p, val] : F.terms) {
        int q = r - p;
        if (q < t_as)
            continue;
        ASElem right = q_rho(q, ASElem(am), QMode::Extended);
        if (right.is_zero())
            continue;
        for (const auto& vm : val.monos)
            for (const auto& rm : right.monos)
                bmu_tensor_accumulate(out, vm, rm);
    }
    return out;
}

inline BmuTensor ext_q_rho(int r, const BmuTensor& t)
{
    BmuTensor out;
    for (const auto& [bm, am] : t.pairs)
        out = add(out, ext_q_rho_term(r, bm, am));
    return out;
}

// Q^{r rho + sigma} external = beta o Q^{(r+1) rho} external.
inline BmuTensor ext_q_sigma(int r, const BmuTensor& t)
{
    return bockstein(ext_q_rho(r + 1, t));
}

inline BmuTensor restrict_cap(const BmuTensor& t, int b_cap)
{
    BmuTensor out;
    for (const auto& [bm, am] : t.pairs)
        if (bm.b_exp <= b_cap)
            xor_in(out.pairs, {bm, am});
    return out;
}

inline int min_vanishing(const BmuTensor& t)
{
    int m = 1 << 20;
    for (const auto& [bm, am] : t.pairs)
        m = std::min(m, vanishing_bound(degree_of(bm) + degree_of(am)));
    return m;
}

}  // namespace detail

// Verify the identity coefficientwise for t^s, s in [r_lo, r_hi].
inline Report co_nishida_check(const BmuElem& x, NishidaWindow w)
{
    try {
        BmuTensor P = bmu_coaction(x, w.b_cap);
        int r_floor = detail::min_vanishing(P);
        for (int s = w.r_lo; s <= w.r_hi; ++s) {
            BmuTensor lhs = detail::restrict_cap(bmu_coaction(q_rho_bmu(s, x), w.b_cap), w.b_cap);
            BmuTensor rhs;
            int C = std::max(2, s - r_floor + 6 + 2 * std::abs(s));
            for (int r = r_floor; r <= s; ++r) {
                CoeffAlg c = coeff(power(xibar_series(C), r), s);
                if (c.is_zero())
                    continue;
                BmuTensor term = detail::ext_q_rho(r, P);
                rhs = add(rhs, mul_as_side(term, from_coeff_alg(c)));
            }
            for (int r = r_floor - 1; r <= s - 1; ++r) {
                CoeffAlg c = coeff(mul(power(xibar_series(C), r), taubar_series(C)), s);
                if (c.is_zero())
                    continue;
                BmuTensor term = detail::ext_q_sigma(r, P);
                rhs = add(rhs, mul_as_side(term, from_coeff_alg(c)));
            }
            rhs = detail::restrict_cap(rhs, w.b_cap);
            if (!(lhs == rhs)) {
                Report rep;
                rep.status = Report::Status::Fail;
                rep.witness = "coefficient of t^" + std::to_string(s) + ": lhs = " +
                              to_string(lhs) + ", rhs = " + to_string(rhs);
                return rep;
            }
        }
    } catch (const UndeterminedError& e) {
        return {Report::Status::Undetermined, e.what()};
    }
    return {};
}

// The same identity for classes of the dual Steenrod algebra itself. The
// right coaction on A as the homology of HF is the conjugated swap of the
// coproduct: psi_R(x) = sum x_(2) (x) chi(x_(1)). It is finite, so no cap is
// needed.
inline TensorElem as_right_coaction(const ASElem& x)
{
    TensorElem out;
    for (const auto& [l, r] : psi(x).pairs) {
        ASElem chi_l = conjugate(ASElem(l));
        for (const auto& cm : chi_l.monos)
            detail::tensor_accumulate(out, r, cm);
    }
    return out;
}

namespace detail {

inline TensorElem mul_right(const TensorElem& t, const ASElem& z)
{
    TensorElem out;
    for (const auto& [l, r] : t.pairs)
        for (const auto& zm : z.monos) {
            ASElem prod = mul(ASElem(r), ASElem(zm));
            for (const auto& pm : prod.monos)
                tensor_accumulate(out, l, pm);
        }
    return out;
}

inline TensorElem ext_q_rho(int r, const TensorElem& t)
{
    TensorElem out;
    for (const auto& [lm, rm] : t.pairs) {
        if (r < vanishing_bound(degree_of(lm) + degree_of(rm)))
            continue;
        int t_l = vanishing_bound(degree_of(lm));
        int t_r = vanishing_bound(degree_of(rm));
        for (int q1 = t_l; q1 <= r - t_r; ++q1) {
            ASElem left = q_rho(q1, ASElem(lm), QMode::Extended);
            if (left.is_zero())
                continue;
            ASElem right = q_rho(r - q1, ASElem(rm), QMode::Extended);
            if (right.is_zero())
                continue;
            for (const auto& l : left.monos)
                for (const auto& rr : right.monos)
                    tensor_accumulate(out, l, rr);
        }
    }
    return out;
}

inline TensorElem ext_q_sigma(int r, const TensorElem& t)
{
    return bockstein(ext_q_rho(r + 1, t));
}

inline int min_vanishing(const TensorElem& t)
{
    int m = 1 << 20;
    for (const auto& [l, r] : t.pairs)
        m = std::min(m, vanishing_bound(degree_of(l) + degree_of(r)));
    return m;
}

}  // namespace detail

inline Report co_nishida_check(const ASElem& x, NishidaWindow w)
{
    try {
        TensorElem P = as_right_coaction(x);
        int r_floor = detail::min_vanishing(P);
        for (int s = w.r_lo; s <= w.r_hi; ++s) {
            TensorElem lhs = as_right_coaction(q_rho(s, x, QMode::Extended));
            TensorElem rhs;
            int C = std::max(2, s - r_floor + 6 + 2 * std::abs(s));
            for (int r = r_floor; r <= s; ++r) {
                CoeffAlg c = coeff(power(xibar_series(C), r), s);
                if (c.is_zero())
                    continue;
                rhs = add(rhs, detail::mul_right(detail::ext_q_rho(r, P), from_coeff_alg(c)));
            }
            for (int r = r_floor - 1; r <= s - 1; ++r) {
                CoeffAlg c = coeff(mul(power(xibar_series(C), r), taubar_series(C)), s);
                if (c.is_zero())
                    continue;
                rhs = add(rhs, detail::mul_right(detail::ext_q_sigma(r, P), from_coeff_alg(c)));
            }
            if (!(lhs == rhs)) {
                Report rep;
                rep.status = Report::Status::Fail;
                rep.witness = "coefficient of t^" + std::to_string(s) + ": lhs = " +
                              to_string(lhs) + ", rhs = " + to_string(rhs);
                return rep;
            }
        }
    } catch (const UndeterminedError& e) {
        return {Report::Status::Undetermined, e.what()};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Executing the derivation of Q^{2^k rho} tau_k from the identity for c.
// The t^0 coefficient reads
//   psi(c) = Q^0(psi c) + beta(Q^0(psi c)) * (1 (x) tau_0),
// and its b^{2^{k+1}} slot is an equation X + tau_0 beta(X) = tau_{k+1} in the
// unknown X = Q^{2^k rho} tau_k; applying beta solves it.
// ---------------------------------------------------------------------------

namespace detail {

struct LinTensor {
    BmuTensor c0, cU, cV;
    std::set<int> poison;  // b-exponents whose value involves other unknowns
};

inline LinTensor lin_add(const LinTensor& x, const LinTensor& y)
{
    LinTensor out;
    out.c0 = add(x.c0, y.c0);
    out.cU = add(x.cU, y.cU);
    out.cV = add(x.cV, y.cV);
    out.poison = x.poison;
    out.poison.insert(y.poison.begin(), y.poison.end());
    return out;
}

inline LinTensor lin_bockstein(const LinTensor& x)
{
    LinTensor out;
    out.c0 = bockstein(x.c0);
    out.cU = bockstein(x.cU);
    out.cV = add(bockstein(x.cV), x.cU);  // beta(U) = V, beta(V) = 0
    for (int e : x.poison) {
        out.poison.insert(e);
        out.poison.insert(e + 1);
    }
    return out;
}

inline LinTensor lin_mul_as(const LinTensor& x, const ASElem& z)
{
    LinTensor out;
    out.c0 = mul_as_side(x.c0, z);
    out.cU = mul_as_side(x.cU, z);
    out.cV = mul_as_side(x.cV, z);
    out.poison = x.poison;
    return out;
}

inline ASElem slot(const BmuTensor& t, const BmuMonomial& key)
{
    ASElem out;
    for (const auto& [bm, am] : t.pairs)
        if (bm == key)
            out = add(out, ASElem(am));
    return out;
}

}  // namespace detail

// Derive Q^{2^k rho} tau_k through the engine; the result must be
// tau_{k+1} + tau_0 xi_{k+1}.
inline ASElem derive_action_on_tau(int k, int b_cap = 0)
{
    int slot_exp = 1 << (k + 1);
    if (b_cap < slot_exp)
        b_cap = slot_exp;
    BmuTensor P = bmu_coaction(BmuElem(BmuMonomial::c()), b_cap);

    // E = Q^0 external of P, with Q^{2^j rho} tau_j kept formal
    detail::LinTensor E;
    for (const auto& [bm, am] : P.pairs) {
        auto [F, G] = bmu_q_series(bm, 1);
        for (const auto& [p, val] : F.terms) {
            int q = -p;
            if (am.symbol_free()) {
                if (q != 0)
                    continue;  // Q^{q rho} 1 = 0 for q != 0
                for (const auto& vm : val.monos)
                    detail::bmu_tensor_accumulate(E.c0, vm, am);
                continue;
            }
            if (am.xi.empty() && am.tau.size() == 1) {
                int j = am.tau.front();
                if (q < (1 << j))
                    continue;  // vanishing
                if (q == (1 << j) && j == k) {
                    for (const auto& vm : val.monos)
                        detail::bmu_tensor_accumulate(E.cU, vm, ASMonomial{});
                    continue;
                }
                // a different unknown; poison its landing slots
                for (const auto& vm : val.monos)
                    E.poison.insert(vm.b_exp);
                continue;
            }
            throw std::logic_error("unexpected coaction term for c");
        }
    }

    // constant term of taubar(t)/xibar(t), computed, must be tau_0
    CoeffAlg cterm = coeff(mul(taubar_series(8), power(xibar_series(8), -1)), 0);
    if (!(cterm == CoeffAlg::tau(0)))
        throw std::logic_error("constant term of taubar/xibar is not tau_0");
    detail::LinTensor S = detail::lin_mul_as(detail::lin_bockstein(E), from_coeff_alg(cterm));
    detail::LinTensor R = detail::lin_add(E, S);

    BmuMonomial key = BmuMonomial::b(slot_exp);
    if (R.poison.count(slot_exp))
        throw std::logic_error("derivation slot contaminated by another unknown");
    ASElem lhs = detail::slot(P, key);
    ASElem c0 = detail::slot(R.c0, key);
    ASElem cU = detail::slot(R.cU, key);
    ASElem cV = detail::slot(R.cV, key);
    if (!(cU == ASElem::one()))
        throw std::logic_error("derivation: unexpected U coefficient " + to_string(cU));
    if (!(cV == ASElem::tau(0)))
        throw std::logic_error("derivation: unexpected V coefficient " + to_string(cV));
    // lhs = c0 + U + tau_0 V with beta U = V: apply beta, then substitute back
    ASElem K = add(lhs, c0);
    ASElem V = bockstein(K);
    return add(K, mul(ASElem::tau(0), V));
}

}  // namespace c2ops
