#pragma once

// Free-module bookkeeping for the homology of extended powers of slice
// spheres and for the spectrum of quadratic operations: generators e^V_W
// with V in {m rho, m rho - 1} and W in {s rho, s rho + sigma}, the
// suspension maps theta/theta^sigma, the completed left coaction on the
// e_V, and the diagonal.

#include <optional>
#include <vector>

#include "dual_steenrod.hpp"
#include "series.hpp"

namespace c2ops {

// Generator e^{source}_{twist} of the homology of P_2(S^{source}).
struct ExtPowerGen {
    int m = 0;           // source is m*rho or m*rho - 1
    bool desuspended = false;  // true: source = m*rho - 1
    int s = 0;           // twist is s*rho or s*rho + sigma
    bool twist_sigma = false;

    bool valid() const
    {
        if (!desuspended)
            return s >= m;
        return twist_sigma ? s >= m - 1 : s >= m;
    }
    Degree degree() const
    {
        Degree d = (m + s) * kRho;
        if (desuspended)
            d = d - kOne;
        if (twist_sigma)
            d += kSigma;
        return d;
    }
    auto operator<=>(const ExtPowerGen&) const = default;
};

// theta: Sigma P_2(S^{m rho - 1}) -> P_2(S^{m rho}) on homology.
inline std::optional<ExtPowerGen> theta(const ExtPowerGen& g)
{
    if (!g.desuspended)
        throw std::invalid_argument("theta expects a generator over m*rho - 1");
    if (g.twist_sigma && g.s == g.m - 1)
        return std::nullopt;
    return ExtPowerGen{g.m, false, g.s, g.twist_sigma};
}

// theta^sigma: Sigma^sigma P_2(S^{m rho}) -> P_2(S^{(m+1) rho - 1}).
inline std::optional<ExtPowerGen> theta_sigma(const ExtPowerGen& g)
{
    if (g.desuspended)
        throw std::invalid_argument("theta_sigma expects a generator over m*rho");
    if (!g.twist_sigma && g.s == g.m)
        return std::nullopt;
    return ExtPowerGen{g.m + 1, true, g.s, g.twist_sigma};
}

// Generator e_{s rho} or e_{s rho + sigma} of the homotopy of the spectrum
// of quadratic operations.
struct OpsGen {
    int s = 0;
    bool sigma = false;

    Degree degree() const { return sigma ? (s * kRho) + kSigma : s * kRho; }
    auto operator<=>(const OpsGen&) const = default;
};

inline std::string to_string(const OpsGen& g)
{
    return std::string("e[") + std::to_string(g.s) + (g.sigma ? "rho+sigma]" : "rho]");
}

// Bockstein on the generators: beta e_{s rho} = e_{(s-1) rho + sigma}.
inline std::optional<OpsGen> ops_beta(const OpsGen& g)
{
    if (g.sigma)
        return std::nullopt;
    return OpsGen{g.s - 1, true};
}

using OpsCoaction = std::vector<std::pair<ASMonomial, OpsGen>>;

struct OpsWindow {
    int r_lo = -4;
    int r_hi = 4;
};

// Completed left coaction:
//   psi_L(e_{s rho + sigma}) = sum_r [xi(t)^r]_{t^s} (x) e_{r rho + sigma}
//   psi_L(e_{s rho})         = sum_r [xi(t)^r]_{t^s} (x) e_{r rho}
//                            + sum_r [xi(t)^r tau(t)]_{t^s} (x) e_{r rho + sigma}
// truncated to r in the window; each emitted coefficient is exact.
inline OpsCoaction psi_L(const OpsGen& g, OpsWindow w)
{
    OpsCoaction out;
    int s = g.s;
    auto emit = [&out](const CoeffAlg& c, OpsGen target) {
        for (const auto& m : c.monos) {
            ASMonomial am;
            am.xi = m.xi;
            for (auto [i, e] : m.tau) {
                if (e != 1)
                    throw std::logic_error("coaction coefficient not tau-linear");
                am.tau.push_back(i);
            }
            std::sort(am.tau.begin(), am.tau.end());
            detail::xor_in(out, {am, target});
        }
    };
    auto ceiling_for = [s](int r) { return std::max(2, s + 3 + 2 * std::max(0, -r)); };
    for (int r = w.r_lo; r <= std::min(w.r_hi, s); ++r) {
        CoeffAlg c = coeff(power(xi_series(ceiling_for(r)), r), s);
        if (!c.is_zero())
            emit(c, OpsGen{r, g.sigma});
    }
    if (!g.sigma) {
        for (int r = w.r_lo; r <= std::min(w.r_hi, s - 1); ++r) {
            int C = ceiling_for(r);
            CoeffAlg c = coeff(mul(power(xi_series(C), r), tau_series(C)), s);
            if (!c.is_zero())
                emit(c, OpsGen{r, true});
        }
    }
    return out;
}

// delta(e_{k rho}) = sum_{i+j=k} e_{i rho} (x) e_{j rho}, i in the window.
inline std::vector<std::pair<OpsGen, OpsGen>> ops_diagonal(const OpsGen& g, int i_lo, int i_hi)
{
    if (g.sigma)
        throw std::invalid_argument("ops_diagonal expects a rho-line generator");
    std::vector<std::pair<OpsGen, OpsGen>> out;
    for (int i = i_lo; i <= i_hi; ++i)
        out.push_back({OpsGen{i, false}, OpsGen{g.s - i, false}});
    return out;
}

}  // namespace c2ops
