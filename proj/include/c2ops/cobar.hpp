#pragma once

// Bounded-window reduced cobar complexes over the quotient Hopf algebroid
//   Lambda = HF[tau_0, tau_1, ...]/(tau_i^2 = a tau_{i+1}),
// its associated graded restricted to tau_0 (the exterior E(tau_0) with the
// right-unit twist), and the degree-windowed dual Steenrod algebra itself.
// Words are kept in the canonical front-coefficient form
//   c [m_1 | ... | m_s] e
// with pure reduced letters and a pure module tail; coefficients produced in
// the middle of a word migrate left across the tensor signs through the
// right unit. Homology ranks per (s, degree) block come from exact F2
// elimination.

#include <functional>
#include <map>
#include <numeric>

#include "dual_steenrod.hpp"
#include "f2_matrix.hpp"

namespace c2ops {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class HopfKind { Lambda, ETau0Graded, ATrunc };
enum class ComoduleKind { HFStar, PStar };

struct CobarWord {
    PointClass coeff = PointClass::one();
    std::vector<ASMonomial> letters;  // pure: coeff field is 1
    MultiIndex tail;                  // xi exponents of the P* tail

    auto operator<=>(const CobarWord&) const = default;
};

inline Degree degree_of(const CobarWord& w)
{
    Degree d = degree_of(w.coeff);
    for (const auto& m : w.letters)
        d += degree_of(m);
    for (auto [i, e] : w.tail)
        d += e * (((1 << i) - 1) * kRho);
    return d;
}

inline std::string to_string(const CobarWord& w)
{
    std::string r = w.coeff.is_one() ? "" : to_string(w.coeff);
    r += "[";
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i)
            r += "|";
        ASMonomial m = w.letters[i];
        r += to_string(m);
    }
    r += "]";
    if (!w.tail.empty()) {
        ASMonomial t;
        t.xi = w.tail;
        r += to_string(t);
    }
    return r;
}

using CobarElem = std::vector<CobarWord>;  // sorted F2 set

// ---------------------------------------------------------------------------
// Hopf-algebroid structure maps used by the cobar engine.
// ---------------------------------------------------------------------------

namespace lambda_detail {

// Normalize a tau multi-index via tau_i^2 = a tau_{i+1}.
inline ASElem lambda_normalize(PointClass coeff, MultiIndex tau)
{
    ASElem out;
    std::vector<std::pair<PointClass, MultiIndex>> work{{coeff, std::move(tau)}};
    while (!work.empty()) {
        auto [c, t] = std::move(work.back());
        work.pop_back();
        auto sq = std::find_if(t.begin(), t.end(), [](auto& p) { return p.second >= 2; });
        if (sq == t.end()) {
            ASMonomial m;
            m.coeff = c;
            for (auto [i, e] : t)
                m.tau.push_back(i);
            std::sort(m.tau.begin(), m.tau.end());
            detail::xor_in(out.monos, m);
            continue;
        }
        int i = sq->first;
        auto ca = mul(c, PointClass::a());
        if (!ca)
            continue;
        MultiIndex rest = t;
        for (auto& p : rest)
            if (p.first == i)
                p.second -= 2;
        std::erase_if(rest, [](auto& p) { return p.second == 0; });
        detail::mi_push(rest, i + 1, 1);
        work.push_back({*ca, std::move(rest)});
    }
    return out;
}

inline ASElem lambda_mul(const ASMonomial& x, const ASMonomial& y)
{
    auto c = mul(x.coeff, y.coeff);
    if (!c)
        return ASElem::zero();
    MultiIndex t;
    for (int i : x.tau)
        detail::mi_push(t, i, 1);
    for (int i : y.tau)
        detail::mi_push(t, i, 1);
    return lambda_normalize(*c, std::move(t));
}

// eta_R in Lambda: the dual-Steenrod formula with xi killed.
inline ASElem lambda_eta(PointClass c)
{
    ASElem out;
    if (c.is_pos()) {
        for (int j = 0; j <= c.e1; ++j) {
            if (!detail::odd_binomial(c.e1, j))
                continue;
            MultiIndex t;
            detail::mi_push(t, 0, j);
            out = add(out, lambda_normalize(PointClass::pos(c.e1 - j, c.e2 + j), std::move(t)));
        }
        return out;
    }
    for (int j = 0; j <= c.e1; ++j) {
        if (!detail::odd_binomial(c.e2 + j, c.e2))
            continue;
        MultiIndex t;
        detail::mi_push(t, 0, j);
        out = add(out, lambda_normalize(PointClass::theta(c.e1 - j, c.e2 + j), std::move(t)));
    }
    return out;
}

}  // namespace lambda_detail

struct HopfOps {
    HopfKind kind;

    ASElem mul_monos(const ASMonomial& x, const ASMonomial& y) const
    {
        switch (kind) {
            case HopfKind::Lambda:
                return lambda_detail::lambda_mul(x, y);
            case HopfKind::ETau0Graded: {
                // exterior: any repeated tau_0 dies
                if (!x.tau.empty() && !y.tau.empty())
                    return ASElem::zero();
                auto c = mul(x.coeff, y.coeff);
                if (!c)
                    return ASElem::zero();
                ASMonomial m;
                m.coeff = *c;
                m.tau = x.tau.empty() ? y.tau : x.tau;
                return ASElem(m);
            }
            case HopfKind::ATrunc:
                return mul(x, y);
        }
        return ASElem::zero();
    }

    ASElem eta(PointClass c) const
    {
        switch (kind) {
            case HopfKind::Lambda:
                return lambda_detail::lambda_eta(c);
            case HopfKind::ETau0Graded: {
                // square-zero expansion: only the tau_0-linear term survives
                ASElem out = ASElem::coeff(c);
                PointElem lin;
                if (c.is_pos()) {
                    if (c.e1 & 1)
                        lin = PointElem(PointClass::pos(c.e1 - 1, c.e2 + 1));
                } else if (c.e1 >= 1 && (c.e2 + 1) % 2 == 1) {
                    lin = PointElem(PointClass::theta(c.e1 - 1, c.e2 + 1));
                }
                for (auto pc : lin.classes)
                    out = add(out, ASElem(ASMonomial{pc, {}, {0}}));
                return out;
            }
            case HopfKind::ATrunc:
                return eta_R(c);
        }
        return ASElem::zero();
    }

    // Middle terms of the reduced coproduct of a pure letter; left slots may
    // carry coefficients, right slots are pure.
    std::vector<std::pair<ASMonomial, ASMonomial>> psibar(const ASMonomial& m) const
    {
        thread_local std::map<std::pair<int, ASMonomial>, std::vector<std::pair<ASMonomial, ASMonomial>>>
            cache;
        auto key = std::make_pair((int)kind, m);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
        std::vector<std::pair<ASMonomial, ASMonomial>> out;
        switch (kind) {
            case HopfKind::Lambda: {
                // psi(tau_S) = prod (tau_i (x) 1 + 1 (x) tau_i): subset splits
                int n = (int)m.tau.size();
                for (int mask = 1; mask + 1 < (1 << n); ++mask) {
                    ASMonomial l, r;
                    for (int i = 0; i < n; ++i)
                        ((mask >> i) & 1 ? l : r).tau.push_back(m.tau[i]);
                    out.push_back({l, r});
                }
                break;
            }
            case HopfKind::ETau0Graded:
                break;  // tau_0 is primitive
            case HopfKind::ATrunc: {
                for (const auto& [l, r] : psi(ASElem(m)).pairs) {
                    if (l.symbol_free() || r.symbol_free())
                        continue;
                    out.push_back({l, r});
                }
                break;
            }
        }
        cache.emplace(std::move(key), out);
        return out;
    }

    // Letter pool: all pure reduced letters with degree components bounded by
    // (a_cap, ab_cap).
    std::vector<ASMonomial> letter_pool(int a_cap, int ab_cap) const
    {
        std::vector<ASMonomial> out;
        if (a_cap < 1 || ab_cap < 1)
            return out;
        if (kind == HopfKind::ETau0Graded) {
            out.push_back(ASMonomial{PointClass::one(), {}, {0}});
            return out;
        }
        // tau subsets
        std::vector<int> idx;
        for (int i = 0; (1 << i) <= a_cap; ++i)
            idx.push_back(i);
        std::vector<ASMonomial> taus;
        for (int mask = 1; mask < (1 << (int)idx.size()); ++mask) {
            ASMonomial m;
            for (size_t i = 0; i < idx.size(); ++i)
                if ((mask >> i) & 1)
                    m.tau.push_back(idx[i]);
            Degree d = degree_of(m);
            if (d.a <= a_cap && d.a + d.b <= ab_cap)
                taus.push_back(std::move(m));
        }
        if (kind == HopfKind::Lambda)
            return taus;
        // ATrunc: xi part times tau part
        std::vector<MultiIndex> xis{{}};
        std::function<void(int, int, MultiIndex&)> rec = [&](int i, int budget, MultiIndex& cur) {
            int di = (1 << i) - 1;
            if (di > budget || di == 0) {
                if (di == 0) {
                    rec(i + 1, budget, cur);
                }
                return;
            }
            for (int e = 1; e * di <= budget; ++e) {
                cur.push_back({i, e});
                xis.push_back(cur);
                rec(i + 1, budget - e * di, cur);
                cur.pop_back();
            }
            rec(i + 1, budget, cur);
        };
        MultiIndex cur;
        rec(1, a_cap, cur);
        taus.push_back(ASMonomial{});  // empty tau part
        for (const auto& E : xis)
            for (const auto& t : taus) {
                if (E.empty() && t.tau.empty())
                    continue;
                ASMonomial m = t;
                m.xi = E;
                Degree d = degree_of(m);
                if (d.a <= a_cap && d.a + d.b <= ab_cap)
                    out.push_back(std::move(m));
            }
        std::sort(out.begin(), out.end());
        return out;
    }
};

// ---------------------------------------------------------------------------
// Word normalization and the differential.
// ---------------------------------------------------------------------------

namespace detail {

struct LooseWord {
    PointClass coeff;
    std::vector<ASMonomial> letters;  // may carry coefficients
    MultiIndex tail;
};

inline void normalize_word(const HopfOps& H, LooseWord w, CobarElem& acc)
{
    std::vector<LooseWord> work{std::move(w)};
    while (!work.empty()) {
        LooseWord cur = std::move(work.back());
        work.pop_back();
        int dirty = -1;
        for (int i = (int)cur.letters.size() - 1; i >= 0; --i)
            if (!cur.letters[i].coeff.is_one()) {
                dirty = i;
                break;
            }
        if (dirty == -1) {
            bool dead = false;
            for (const auto& l : cur.letters)
                if (l.symbol_free())
                    dead = true;
            if (dead)
                continue;
            CobarWord out;
            out.coeff = cur.coeff;
            out.letters = cur.letters;
            out.tail = cur.tail;
            xor_in(acc, out);
            continue;
        }
        PointClass cc = cur.letters[dirty].coeff;
        cur.letters[dirty].coeff = PointClass::one();
        if (dirty == 0) {
            auto c = mul(cur.coeff, cc);
            if (!c)
                continue;
            cur.coeff = *c;
            work.push_back(std::move(cur));
            continue;
        }
        // gamma (x) cc y = gamma eta(cc) (x) y
        ASElem moved = H.mul_monos(cur.letters[dirty - 1], ASMonomial{});
        // moved == the letter itself normalized; multiply by eta(cc)
        ASElem eta = H.eta(cc);
        ASElem prod;
        for (const auto& lm : moved.monos)
            for (const auto& em : eta.monos)
                prod = add(prod, H.mul_monos(lm, em));
        for (const auto& pm : prod.monos) {
            LooseWord next = cur;
            next.letters[dirty - 1] = pm;
            work.push_back(std::move(next));
        }
    }
}

}  // namespace detail

// Reduced cobar differential in canonical form.
inline CobarElem cobar_differential(const HopfOps& H, const CobarWord& w,
                                    ComoduleKind module)
{
    CobarElem out;
    // coefficient channel: insert eta-bar(c) as a new first letter
    {
        ASElem e = H.eta(w.coeff);
        e = add(e, ASElem::coeff(w.coeff));  // reduced: remove the identity part
        for (const auto& m : e.monos) {
            if (m.symbol_free())
                throw std::logic_error("eta-bar kept a base term");
            detail::LooseWord lw;
            lw.coeff = m.coeff;
            ASMonomial bare = m;
            bare.coeff = PointClass::one();
            lw.letters.push_back(bare);
            lw.letters.insert(lw.letters.end(), w.letters.begin(), w.letters.end());
            lw.tail = w.tail;
            detail::normalize_word(H, std::move(lw), out);
        }
    }
    // letter channels
    for (size_t i = 0; i < w.letters.size(); ++i) {
        for (const auto& [l, r] : H.psibar(w.letters[i])) {
            detail::LooseWord lw;
            lw.coeff = w.coeff;
            lw.letters.assign(w.letters.begin(), w.letters.begin() + i);
            lw.letters.push_back(l);
            lw.letters.push_back(r);
            lw.letters.insert(lw.letters.end(), w.letters.begin() + i + 1, w.letters.end());
            lw.tail = w.tail;
            detail::normalize_word(H, std::move(lw), out);
        }
    }
    // tail channel (P* only): left coaction on the tail monomial
    if (module == ComoduleKind::PStar && !w.tail.empty()) {
        ASMonomial t;
        t.xi = w.tail;
        for (const auto& [l, r] : psi(ASElem(t)).pairs) {
            if (l.symbol_free())
                continue;  // reproduces the word itself; reduced coaction
            if (!r.tau.empty() || !r.coeff.is_one())
                throw std::logic_error("P* coaction left the module");
            detail::LooseWord lw;
            lw.coeff = w.coeff;
            lw.letters = w.letters;
            lw.letters.push_back(l);
            lw.tail = r.xi;
            detail::normalize_word(H, std::move(lw), out);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Basis enumeration and homology ranks per (s, degree) block.
// ---------------------------------------------------------------------------

namespace detail {

inline void enumerate_words(const std::vector<ASMonomial>& pool, ComoduleKind module, int s,
                            Degree V, size_t budget, std::vector<CobarWord>& out)
{
    // tails first (P*: xi monomials; HF*: only the empty tail)
    std::vector<MultiIndex> tails{{}};
    if (module == ComoduleKind::PStar) {
        int ab_cap = std::max(V.a + V.b, 2 * std::max(V.a, 0));
        std::function<void(int, int, MultiIndex&)> rec = [&](int i, int budget2, MultiIndex& cur) {
            int di = 2 * ((1 << i) - 1);
            if (di > budget2)
                return;
            for (int e = 1; e * di <= budget2; ++e) {
                cur.push_back({i, e});
                tails.push_back(cur);
                rec(i + 1, budget2 - e * di, cur);
                cur.pop_back();
            }
            rec(i + 1, budget2, cur);
        };
        MultiIndex cur;
        rec(1, ab_cap, cur);
    }
    // every letter contributes at least (1,0) to the degree and at least 1 to
    // a+b, so a partial tuple is viable only if the remaining letters still
    // fit on one of the two coefficient routes (polynomial cone: total a
    // bounded by V.a; divided cone: total a+b bounded by V.a+V.b)
    std::vector<ASMonomial> usable;
    for (const auto& l : pool) {
        Degree d = degree_of(l);
        if (d.a <= V.a - (s - 1) || d.a + d.b <= V.a + V.b - (s - 1))
            usable.push_back(l);
    }
    std::vector<ASMonomial> letters;
    std::function<void(Degree)> rec_letters = [&](Degree W) {
        int rem = s - (int)letters.size();
        if (rem == 0) {
            for (const auto& tail : tails) {
                Degree T{0, 0};
                for (auto [i, e] : tail)
                    T += e * (((1 << i) - 1) * kRho);
                Degree cd = V - W - T;
                for (auto c : basis_at(cd)) {
                    CobarWord w;
                    w.coeff = c;
                    w.letters = letters;
                    w.tail = tail;
                    out.push_back(std::move(w));
                    if (out.size() > budget)
                        throw BudgetError("cobar block exceeds the basis budget");
                }
            }
            return;
        }
        for (const auto& l : usable) {
            Degree W2 = W + degree_of(l);
            if (W2.a + (rem - 1) > V.a && W2.a + W2.b + (rem - 1) > V.a + V.b)
                continue;
            letters.push_back(l);
            rec_letters(W2);
            letters.pop_back();
        }
    };
    rec_letters({0, 0});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace detail

inline std::vector<CobarWord> cobar_basis(const HopfOps& H, ComoduleKind module, int s,
                                          Degree V, size_t budget = 200000)
{
    if (s < 0)
        return {};
    int a_cap = std::max(V.a, std::max(V.a + V.b, 0));
    int ab_cap = std::max(V.a + V.b, 2 * std::max(V.a, 0));
    auto pool = H.letter_pool(a_cap, ab_cap);
    std::vector<CobarWord> out;
    detail::enumerate_words(pool, module, s, V, budget, out);
    return out;
}

// F2 matrix of d: C^s_V -> C^{s+1}_V in the given bases.
inline F2Matrix cobar_matrix(const HopfOps& H, ComoduleKind module,
                             const std::vector<CobarWord>& from,
                             const std::vector<CobarWord>& to)
{
    F2Matrix m(to.size(), from.size());
    for (size_t j = 0; j < from.size(); ++j) {
        for (const auto& w : cobar_differential(H, from[j], module)) {
            auto it = std::lower_bound(to.begin(), to.end(), w);
            if (it == to.end() || !(*it == w))
                throw std::logic_error("differential image outside the enumerated basis: " +
                                       to_string(w));
            m.set((size_t)(it - to.begin()), j);
        }
    }
    return m;
}

// Rank of d restricted to the given source basis, indexing image words on
// the fly so the target basis never has to be enumerated.
inline size_t rank_of_differential(const HopfOps& H, ComoduleKind module,
                                   const std::vector<CobarWord>& from)
{
    if (from.empty())
        return 0;
    std::map<CobarWord, size_t> col;
    std::vector<std::vector<size_t>> sparse(from.size());
    for (size_t j = 0; j < from.size(); ++j)
        for (const auto& w : cobar_differential(H, from[j], module)) {
            auto [it, fresh] = col.try_emplace(w, col.size());
            sparse[j].push_back(it->second);
        }
    if (col.empty())
        return 0;
    F2Matrix m(from.size(), col.size());
    for (size_t j = 0; j < from.size(); ++j)
        for (size_t c : sparse[j])
            m.set(j, c);
    return rank(std::move(m));
}

// dims of Ext^{s, V} for s = 0..s_max in one pass: bases and differentials
// for the column at V are computed once.
inline std::vector<int> ext_dimensions_column(const HopfOps& H, ComoduleKind module, int s_max,
                                              Degree V, size_t budget = 200000)
{
    std::vector<std::vector<CobarWord>> bases(s_max + 1);
    for (int s = 0; s <= s_max; ++s)
        bases[s] = cobar_basis(H, module, s, V, budget);
    std::vector<size_t> rk(s_max + 1, 0);  // rank of d: C^s -> C^{s+1}
    for (int s = 0; s <= s_max; ++s)
        rk[s] = rank_of_differential(H, module, bases[s]);
    std::vector<int> dims(s_max + 1, 0);
    for (int s = 0; s <= s_max; ++s)
        dims[s] = (int)(bases[s].size() - rk[s] - (s > 0 ? rk[s - 1] : 0));
    return dims;
}

// dim Ext^{s, V} over the given Hopf algebroid, module HF* or P*.
inline int ext_dimension(const HopfOps& H, ComoduleKind module, int s, Degree V,
                         size_t budget = 200000)
{
    return ext_dimensions_column(H, module, s, V, budget)[s];
}

// ---------------------------------------------------------------------------
// Charts.
// ---------------------------------------------------------------------------

struct ExtEntry {
    int s = 0;
    Degree V;
    int dim = 0;
    std::vector<std::string> gens;

    auto operator<=>(const ExtEntry&) const = default;
};

struct ExtChart {
    std::vector<ExtEntry> entries;  // sorted by (s, V)

    const ExtEntry* find(int s, Degree V) const
    {
        for (const auto& e : entries)
            if (e.s == s && e.V == V)
                return &e;
        return nullptr;
    }
};

// v-monomials v_0^{e_0} v_1^{e_1} ... with sum e_i = s and degree V - s*(1,0)
// = sum e_i (2^i - 1) rho; used to label rho-line entries.
inline std::vector<std::string> v_monomial_names(int s, Degree V)
{
    Degree internal = V - s * kOne;
    if (internal.a != internal.b || internal.a < 0)
        return {};
    int n = internal.a;
    std::vector<std::string> out;
    // exponent vectors over v_0..v_k with 2^k - 1 <= n
    std::vector<int> exps;
    std::function<void(int, int, int)> rec = [&](int i, int left_s, int left_n) {
        if (left_s == 0 && left_n == 0) {
            std::string name;
            for (size_t j = 0; j < exps.size(); ++j) {
                if (!exps[j])
                    continue;
                if (!name.empty())
                    name += "*";
                name += "v" + std::to_string(j);
                if (exps[j] > 1)
                    name += "^" + std::to_string(exps[j]);
            }
            out.push_back(name.empty() ? "1" : name);
            return;
        }
        if (left_s <= 0)
            return;
        int di = (1 << i) - 1;
        if (di > left_n && i > 0)
            return;
        for (int e = 0; e <= left_s && e * di <= left_n; ++e) {
            exps.push_back(e);
            rec(i + 1, left_s - e, left_n - e * di);
            exps.pop_back();
        }
    };
    rec(0, s, n);
    std::sort(out.begin(), out.end());
    return out;
}

// Chart over the lines V - s = n rho and V - s = n rho - 1 for n <= n_max,
// s <= s_max.
inline ExtChart ext_window(HopfKind kind, ComoduleKind module, int s_max, int n_max,
                           size_t budget = 200000)
{
    HopfOps H{kind};
    ExtChart chart;
    for (int s = 0; s <= s_max; ++s)
        for (int n = 0; n <= n_max; ++n) {
            Degree on_line = s * kOne + n * kRho;
            for (Degree V : {on_line, on_line - kOne}) {
                ExtEntry e;
                e.s = s;
                e.V = V;
                e.dim = ext_dimension(H, module, s, V, budget);
                if (V == on_line && e.dim > 0)
                    e.gens = v_monomial_names(s, V);
                chart.entries.push_back(std::move(e));
            }
        }
    std::sort(chart.entries.begin(), chart.entries.end());
    return chart;
}

// ---------------------------------------------------------------------------
// The small E(tau_0) complex: HF* -> Sigma HF* -> ..., differential the
// tau_0-coefficient of the right unit.
// ---------------------------------------------------------------------------

inline std::optional<PointClass> etau0_small_d(PointClass c)
{
    if (c.is_pos()) {
        if (c.e1 & 1)
            return PointClass::pos(c.e1 - 1, c.e2 + 1);
        return std::nullopt;
    }
    if (c.e1 >= 1 && (c.e2 + 1) % 2 == 1)
        return PointClass::theta(c.e1 - 1, c.e2 + 1);
    return std::nullopt;
}

// dim of the small-complex homology at (s, V).
inline int cotor_etau0_dimension(int s, Degree V)
{
    Degree U = V - s * kOne;
    auto basis = basis_at(U);
    if (basis.empty())
        return 0;
    PointClass x = basis.front();
    if (etau0_small_d(x))
        return 0;  // not a cycle
    if (s == 0)
        return 1;
    // boundary? the unique class one degree up may hit x
    for (auto y : basis_at(U + kOne))
        if (auto dy = etau0_small_d(y); dy && *dy == x)
            return 0;
    return 1;
}

inline ExtChart cotor_etau0_chart(int s_max, int a_bound, int b_bound)
{
    ExtChart chart;
    for (int s = 0; s <= s_max; ++s)
        for (int a = -a_bound; a <= a_bound; ++a)
            for (int b = -b_bound; b <= b_bound; ++b) {
                Degree V{a, b};
                int dim = cotor_etau0_dimension(s, V);
                if (dim == 0)
                    continue;
                ExtEntry e;
                e.s = s;
                e.V = V;
                e.dim = dim;
                PointClass x = basis_at(V - s * kOne).front();
                std::string name = s > 0 ? "v0^" + std::to_string(s) : "";
                if (s == 1)
                    name = "v0";
                if (!x.is_one()) {
                    if (!name.empty())
                        name += "*";
                    name += to_string(x);
                }
                e.gens.push_back(name.empty() ? "1" : name);
                chart.entries.push_back(std::move(e));
            }
    std::sort(chart.entries.begin(), chart.entries.end());
    return chart;
}

// Closed additive form of the small-complex homology:
//   (F[u^2, a] (+) J (+) J0)[v_0] / (v_0 a, v_0 J)
// with J = F{th/(a^k u^{2n+1})} and J0 = F{th/u^{2n}}. At s = 0 everything in
// the kernel survives: even u-powers with any a-multiple, the odd-u divided
// classes J, and the even-u classes J0. On v_0-multiples only F[u^2] and J0
// persist: J0 is primitive (a * th/u^{2n+1} = 0 kills the tau_0 term of the
// right unit) and nothing maps onto it.
inline int cotor_etau0_closed_form(int s, Degree V)
{
    Degree U = V - s * kOne;
    auto basis = basis_at(U);
    if (basis.empty())
        return 0;
    PointClass x = basis.front();
    if (x.is_pos()) {
        if (x.e1 % 2 != 0)
            return 0;
        return (s == 0 || x.e2 == 0) ? 1 : 0;
    }
    if (s == 0)
        return (x.e1 == 0 || x.e2 % 2 == 1) ? 1 : 0;
    return (x.e1 == 0 && x.e2 % 2 == 0) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Change of rings: Ext_{A}(P*) vs Ext_{Lambda}(HF*) on a window.
// ---------------------------------------------------------------------------

struct ChangeOfRingsReport {
    bool ok = true;
    bool budget_exceeded = false;
    std::string witness;
};

// Compare the charts for every V with |a + b| <= ab_max over a generous
// a-range; "total internal degree" is the a+b weight that bounds every
// letter and tail.
inline ChangeOfRingsReport change_of_rings_check(int s_max, int ab_max, size_t budget = 200000)
{
    ChangeOfRingsReport rep;
    HopfOps A{HopfKind::ATrunc};
    HopfOps L{HopfKind::Lambda};
    try {
        for (int ab = -ab_max; ab <= ab_max; ++ab)
            for (int a = -ab_max - 6; a <= ab_max + 6; ++a) {
                Degree V{a, ab - a};
                auto da = ext_dimensions_column(A, ComoduleKind::PStar, s_max, V, budget);
                auto dl = ext_dimensions_column(L, ComoduleKind::HFStar, s_max, V, budget);
                for (int s = 0; s <= s_max; ++s)
                    if (da[s] != dl[s]) {
                        rep.ok = false;
                        rep.witness = "s=" + std::to_string(s) + " V=" + to_string(V) +
                                      ": Ext_A(P*)=" + std::to_string(da[s]) +
                                      " Ext_Lambda(HF*)=" + std::to_string(dl[s]);
                        return rep;
                    }
            }
    } catch (const BudgetError& e) {
        rep.ok = false;
        rep.budget_exceeded = true;
        rep.witness = e.what();
    }
    return rep;
}

}  // namespace c2ops
