#pragma once

// Command-line front end. run_command is the whole CLI as a pure function of
// its arguments so the tests can drive it; main() is a thin wrapper. Exit
// codes: 0 ok, 1 fail, 2 undetermined or budget exceeded, 3 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include "cobar.hpp"
#include "nishida.hpp"
#include "parse.hpp"

namespace c2ops {

struct CliResult {
    int code = 0;
    std::string out;
};

namespace cli_detail {

using ordered_json = nlohmann::ordered_json;

inline LaurentSeries parse_series_expr(const std::string& text, int ceiling)
{
    parse_detail::Lexer lx(text);
    LaurentSeries out = LaurentSeries::constant(CoeffAlg::one());
    do {
        size_t p = lx.pos();
        std::string id = lx.ident();
        int e = 1;
        if (lx.accept('^'))
            e = lx.integer();
        LaurentSeries base;
        if (id == "xi")
            base = xi_series(ceiling);
        else if (id == "xibar")
            base = xibar_series(ceiling);
        else if (id == "tau")
            base = tau_series(ceiling);
        else if (id == "taubar")
            base = taubar_series(ceiling);
        else if (id == "t")
            base = LaurentSeries::t(ceiling);
        else
            throw ParseError("unknown series '" + id + "'", p);
        out = mul(out, power(base, e));
    } while (lx.accept('*'));
    if (!lx.eof())
        throw ParseError("trailing input", lx.pos());
    return out;
}

inline QSymbol parse_qsymbol(const std::string& text)
{
    parse_detail::Lexer lx(text);
    int s = lx.integer();
    std::string id = lx.ident();
    if (id != "rho")
        throw ParseError("expected 'rho'", 0);
    QSymbol q = QSymbol::rho(s);
    if (lx.accept('+')) {
        std::string sig = lx.ident();
        if (sig != "sigma")
            throw ParseError("expected 'sigma'", 0);
        q = QSymbol{QSymbol::Line::RhoSigma, s};
    } else if (lx.accept('-')) {
        if (lx.integer() != 1)
            throw ParseError("only 'rho-1' is supported", 0);
        q = QSymbol::rho_minus_one(s);
    }
    if (!lx.eof())
        throw ParseError("trailing input", lx.pos());
    return q;
}

inline std::string tensor_text(const TensorElem& t) { return to_string(t); }

// JSON term lists: {coefficient, left, right} per tensor summand.
inline ordered_json tensor_terms_json(const TensorElem& t)
{
    ordered_json arr = ordered_json::array();
    for (const auto& [l, r] : t.pairs) {
        ordered_json j;
        j["coefficient"] = to_string(l.coeff);
        ASMonomial bare = l;
        bare.coeff = PointClass::one();
        j["left"] = to_string(bare);
        j["right"] = to_string(r);
        arr.push_back(std::move(j));
    }
    return arr;
}

inline ordered_json tensor_terms_json(const BmuTensor& t)
{
    ordered_json arr = ordered_json::array();
    for (const auto& [l, r] : t.pairs) {
        ordered_json j;
        j["coefficient"] = to_string(l.coeff);
        BmuMonomial bare = l;
        bare.coeff = PointClass::one();
        j["left"] = to_string(bare);
        j["right"] = to_string(r);
        arr.push_back(std::move(j));
    }
    return arr;
}

inline ordered_json chart_json(const ExtChart& chart)
{
    ordered_json arr = ordered_json::array();
    for (const auto& e : chart.entries) {
        ordered_json j;
        j["s"] = e.s;
        j["degree"] = {{"a", e.V.a}, {"b", e.V.b}};
        j["dim"] = e.dim;
        j["gens"] = e.gens;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline std::string chart_ascii(const ExtChart& chart, int s_max, int n_max)
{
    std::string out;
    out += "Ext dimensions on the lines V - s = n*rho (left) and n*rho - 1 (right)\n";
    out += "s\\n ";
    for (int n = 0; n <= n_max; ++n)
        out += std::to_string(n) + "   ";
    out += "\n";
    for (int s = s_max; s >= 0; --s) {
        out += std::to_string(s) + " | ";
        for (int n = 0; n <= n_max; ++n) {
            const ExtEntry* on = chart.find(s, s * kOne + n * kRho);
            const ExtEntry* off = chart.find(s, s * kOne + n * kRho - kOne);
            out += std::to_string(on ? on->dim : 0);
            out += ",";
            out += std::to_string(off ? off->dim : 0);
            out += " ";
        }
        out += "\n";
    }
    return out;
}

inline size_t default_budget()
{
    if (const char* env = std::getenv("C2OPS_BUDGET")) {
        long v = std::atol(env);
        if (v > 0)
            return (size_t)v;
    }
    return 200000;
}

inline uint64_t xorshift(uint64_t& s)
{
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
}

inline int selftest(uint64_t seed, std::string& out)
{
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        out += std::string(ok ? "PASS " : "FAIL ") + name + "\n";
        if (!ok)
            ++failures;
    };
    // conjugation identities mod t^16
    {
        auto id1 = compose(xi_series(17), xibar_series(16));
        bool ok = true;
        for (int s = 1; s < id1.ceiling; ++s)
            ok = ok && (coeff(id1, s) == (s == 1 ? CoeffAlg::one() : CoeffAlg::zero()));
        report("conjugation identity xi(xibar(t)) = t mod t^16", ok);
    }
    // residue lemma spot checks
    {
        bool ok = true;
        for (int r = -3; r <= 3; ++r)
            for (int s = -3; s <= 3; ++s)
                ok = ok && (coeff(power(xibar_series(16), -s - 1), -r - 1) ==
                            coeff(power(xi_series(16), r), s));
        report("residue lemma |r|,|s| <= 3", ok);
    }
    // coefficient-ring commutativity/associativity on random triples
    {
        bool ok = true;
        uint64_t st = seed ? seed : 1;
        for (int i = 0; i < 40; ++i) {
            auto pick = [&st]() {
                int a = (int)(xorshift(st) % 13) - 6;
                int b = (int)(xorshift(st) % 13) - 6;
                auto cs = basis_at({a, b});
                return cs.empty() ? PointElem::one() : PointElem(cs.front());
            };
            PointElem x = pick(), y = pick(), z = pick();
            ok = ok && (mul(x, y) == mul(y, x));
            ok = ok && (mul(mul(x, y), z) == mul(x, mul(y, z)));
        }
        report("coefficient ring laws (seeded)", ok);
    }
    // derived action
    {
        bool ok = true;
        for (int k = 0; k <= 1; ++k)
            ok = ok && (derive_action_on_tau(k) ==
                        add(ASElem::tau(k + 1), mul(ASElem::tau(0), ASElem::xi(k + 1))));
        report("derived action on tau_0, tau_1", ok);
    }
    // co-Nishida for c on a small window
    {
        report("co-Nishida for c, |r| <= 2",
               co_nishida_check(BmuElem(BmuMonomial::c()), {-2, 2, 8}).ok());
    }
    // Ext over Lambda: unit entry
    {
        HopfOps L{HopfKind::Lambda};
        report("Ext_Lambda unit entry", ext_dimension(L, ComoduleKind::HFStar, 0, {0, 0}) == 1);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace cli_detail

inline CliResult run_command(std::vector<std::string> args)
{
    using cli_detail::ordered_json;
    CliResult res;
    CLI::App app{"exact calculator for the C2-equivariant dual Steenrod algebra, "
                 "its power operations, and bounded cobar/Ext windows"};
    app.require_subcommand(1);

    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    // conjugate
    auto* sc_conj = app.add_subcommand("conjugate", "Milnor conjugate xibar_i or taubar_i");
    std::string conj_what = "xi";
    int conj_i = 1;
    sc_conj->add_option("--what", conj_what)->check(CLI::IsMember({"xi", "tau"}));
    sc_conj->add_option("--i", conj_i)->required();

    // coeff
    auto* sc_coeff = app.add_subcommand("coeff", "coefficient of t^s in a series expression");
    std::string coeff_series;
    int coeff_at = 0, coeff_ceiling = 32;
    sc_coeff->add_option("--series", coeff_series)->required();
    sc_coeff->add_option("--at", coeff_at)->required();
    sc_coeff->add_option("--ceiling", coeff_ceiling);

    // compose
    auto* sc_comp = app.add_subcommand("compose", "substitute one named series into another");
    std::string comp_f = "xi", comp_g = "xibar";
    int comp_ceiling = 32;
    sc_comp->add_option("--f", comp_f)->check(CLI::IsMember({"xi", "tau", "xibar", "taubar"}));
    sc_comp->add_option("--g", comp_g)->check(CLI::IsMember({"xi", "xibar"}));
    sc_comp->add_option("--ceiling", comp_ceiling);

    // normal-form / psi / bockstein
    auto* sc_nf = app.add_subcommand("normal-form", "rewrite to the monomial basis");
    auto* sc_psi = app.add_subcommand("psi", "coproduct of a dual Steenrod element");
    auto* sc_beta = app.add_subcommand("bockstein", "Bockstein of a dual Steenrod element");
    std::string elem_text;
    for (auto* sc : {sc_nf, sc_psi, sc_beta})
        sc->add_option("--elem", elem_text)->required();

    // etar
    auto* sc_etar = app.add_subcommand("etar", "right unit on a coefficient-ring element");
    std::string etar_text;
    sc_etar->add_option("--elem", etar_text)->required();

    // coaction
    auto* sc_coact = app.add_subcommand("coaction", "completed right coaction on Bmu2");
    std::string coact_text;
    int coact_cap = 8;
    sc_coact->add_option("--elem", coact_text)->required();
    sc_coact->add_option("--bcap", coact_cap);

    // qop
    auto* sc_qop = app.add_subcommand("qop", "apply a power operation");
    std::string qop_op, qop_elem, qop_ring = "as";
    bool qop_extended = false;
    sc_qop->add_option("--op", qop_op)->required();
    sc_qop->add_option("--elem", qop_elem)->required();
    sc_qop->add_option("--ring", qop_ring)->check(CLI::IsMember({"as", "bmu"}));
    sc_qop->add_flag("--extended", qop_extended,
                     "allow values derived through the co-Nishida identities");

    // nishida
    auto* sc_nish = app.add_subcommand("nishida", "verify the co-Nishida identity");
    std::string nish_elem, nish_ring = "bmu";
    int nish_window = 3, nish_cap = 12;
    sc_nish->add_option("--elem", nish_elem)->required();
    sc_nish->add_option("--ring", nish_ring)->check(CLI::IsMember({"as", "bmu"}));
    sc_nish->add_option("--window", nish_window);
    sc_nish->add_option("--cap", nish_cap);

    // action-derive
    auto* sc_der = app.add_subcommand("action-derive",
                                      "derive Q^{2^k rho} tau_k through the engine");
    int der_k = 0;
    sc_der->add_option("--k", der_k)->required();

    // diagonal
    auto* sc_diag = app.add_subcommand("diagonal", "diagonal of e_{s rho}");
    int diag_s = 0, diag_lo = -2, diag_hi = 2;
    sc_diag->add_option("--s", diag_s)->required();
    sc_diag->add_option("--lo", diag_lo);
    sc_diag->add_option("--hi", diag_hi);

    // ext
    auto* sc_ext = app.add_subcommand("ext", "Ext chart over a windowed cobar complex");
    std::string ext_hopf = "lambda", ext_module = "hf", ext_format = "ascii";
    int ext_smax = 6, ext_nmax = 6;
    size_t ext_budget = cli_detail::default_budget();
    sc_ext->add_option("--hopf", ext_hopf)
        ->check(CLI::IsMember({"lambda", "etau0", "astar-trunc"}));
    sc_ext->add_option("--module", ext_module)->check(CLI::IsMember({"hf", "pstar"}));
    sc_ext->add_option("--smax", ext_smax);
    sc_ext->add_option("--nmax", ext_nmax);
    sc_ext->add_option("--format", ext_format)->check(CLI::IsMember({"ascii", "json"}));
    sc_ext->add_option("--budget", ext_budget);

    // cotor
    auto* sc_cotor = app.add_subcommand("cotor", "homology of the small E(tau_0) complex");
    int cotor_smax = 6, cotor_amax = 6, cotor_bmax = 6;
    std::string cotor_format = "ascii";
    bool cotor_check = false;
    sc_cotor->add_option("--smax", cotor_smax);
    sc_cotor->add_option("--amax", cotor_amax);
    sc_cotor->add_option("--bmax", cotor_bmax);
    sc_cotor->add_option("--format", cotor_format)->check(CLI::IsMember({"ascii", "json"}));
    sc_cotor->add_flag("--check-closed-form", cotor_check);

    // selftest
    auto* sc_self = app.add_subcommand("selftest", "quick built-in identity checks");
    uint64_t self_seed = 1;
    sc_self->add_option("--seed", self_seed);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        res.code = e.get_exit_code() == 0 ? 0 : 3;
        std::stringstream ss;
        res.code == 0 ? (void)(ss << app.help()) : (void)(ss << e.what() << "\n");
        res.out = ss.str();
        return res;
    }

    auto emit_elem = [&](const std::string& rendered) {
        if (json) {
            ordered_json j;
            j["status"] = "ok";
            j["result"] = rendered;
            res.out = j.dump() + "\n";
        } else {
            res.out = rendered + "\n";
        }
        res.code = 0;
    };

    try {
        if (*sc_conj) {
            CoeffAlg c = conj_what == "xi" ? conjugate_xi(conj_i) : conjugate_tau(conj_i);
            emit_elem(to_string(c));
        } else if (*sc_coeff) {
            auto f = cli_detail::parse_series_expr(coeff_series, coeff_ceiling);
            emit_elem(to_string(coeff(f, coeff_at)));
        } else if (*sc_comp) {
            auto pick = [&](const std::string& n) {
                if (n == "xi")
                    return xi_series(comp_ceiling);
                if (n == "tau")
                    return tau_series(comp_ceiling);
                if (n == "xibar")
                    return xibar_series(comp_ceiling);
                return taubar_series(comp_ceiling);
            };
            emit_elem(to_string(compose(pick(comp_f), pick(comp_g))));
        } else if (*sc_nf) {
            emit_elem(to_string(parse_as(elem_text)));
        } else if (*sc_psi) {
            TensorElem t = psi(parse_as(elem_text));
            if (json) {
                ordered_json j;
                j["status"] = "ok";
                j["terms"] = cli_detail::tensor_terms_json(t);
                res.out = j.dump() + "\n";
            } else {
                res.out = cli_detail::tensor_text(t) + "\n";
            }
        } else if (*sc_beta) {
            emit_elem(to_string(bockstein(parse_as(elem_text))));
        } else if (*sc_etar) {
            emit_elem(to_string(eta_R(parse_point(etar_text))));
        } else if (*sc_coact) {
            BmuTensor t = bmu_coaction(parse_bmu(coact_text), coact_cap);
            if (json) {
                ordered_json j;
                j["status"] = "ok";
                j["terms"] = cli_detail::tensor_terms_json(t);
                res.out = j.dump() + "\n";
            } else {
                res.out = to_string(t) + "\n";
            }
        } else if (*sc_qop) {
            QSymbol q = cli_detail::parse_qsymbol(qop_op);
            if (qop_ring == "bmu") {
                emit_elem(to_string(q_apply(q, parse_bmu(qop_elem))));
            } else {
                QMode mode = qop_extended ? QMode::Extended : QMode::Strict;
                emit_elem(to_string(q_apply(q, parse_as(qop_elem), mode)));
            }
        } else if (*sc_nish) {
            NishidaWindow w{-nish_window, nish_window, nish_cap};
            Report rep = nish_ring == "bmu" ? co_nishida_check(parse_bmu(nish_elem), w)
                                            : co_nishida_check(parse_as(nish_elem), w);
            std::string status = rep.status == Report::Status::Ok            ? "ok"
                                 : rep.status == Report::Status::Fail        ? "fail"
                                                                             : "undetermined";
            if (json) {
                ordered_json j;
                j["status"] = status;
                j["result"] = rep.ok() ? "pass" : rep.witness;
                res.out = j.dump() + "\n";
            } else {
                res.out = rep.ok() ? "pass\n" : status + ": " + rep.witness + "\n";
            }
            res.code = rep.status == Report::Status::Ok            ? 0
                       : rep.status == Report::Status::Fail        ? 1
                                                                   : 2;
        } else if (*sc_der) {
            emit_elem(to_string(derive_action_on_tau(der_k)));
        } else if (*sc_diag) {
            auto d = ops_diagonal(OpsGen{diag_s, false}, diag_lo, diag_hi);
            std::string out;
            for (const auto& [l, r] : d) {
                if (!out.empty())
                    out += " + ";
                out += to_string(l) + "(x)" + to_string(r);
            }
            emit_elem(out.empty() ? "0" : out);
        } else if (*sc_ext) {
            HopfKind kind = ext_hopf == "lambda"  ? HopfKind::Lambda
                            : ext_hopf == "etau0" ? HopfKind::ETau0Graded
                                                  : HopfKind::ATrunc;
            ComoduleKind mod = ext_module == "hf" ? ComoduleKind::HFStar : ComoduleKind::PStar;
            if (mod == ComoduleKind::PStar && kind != HopfKind::ATrunc)
                throw CLI::ValidationError("--module pstar requires --hopf astar-trunc");
            ExtChart chart = ext_window(kind, mod, ext_smax, ext_nmax, ext_budget);
            if (ext_format == "json" || json) {
                ordered_json j;
                j["status"] = "ok";
                j["chart"] = cli_detail::chart_json(chart);
                res.out = j.dump() + "\n";
            } else {
                res.out = cli_detail::chart_ascii(chart, ext_smax, ext_nmax);
            }
        } else if (*sc_cotor) {
            ExtChart chart = cotor_etau0_chart(cotor_smax, cotor_amax, cotor_bmax);
            bool check_ok = true;
            if (cotor_check) {
                for (int s = 0; s <= cotor_smax; ++s)
                    for (int a = -cotor_amax; a <= cotor_amax; ++a)
                        for (int b = -cotor_bmax; b <= cotor_bmax; ++b)
                            check_ok = check_ok && (cotor_etau0_dimension(s, {a, b}) ==
                                                    cotor_etau0_closed_form(s, {a, b}));
            }
            if (cotor_format == "json" || json) {
                ordered_json j;
                j["status"] = check_ok ? "ok" : "fail";
                if (cotor_check)
                    j["closed_form_check"] = check_ok ? "pass" : "fail";
                j["chart"] = cli_detail::chart_json(chart);
                res.out = j.dump() + "\n";
            } else {
                std::string out;
                for (const auto& e : chart.entries) {
                    out += "s=" + std::to_string(e.s) + " V=" + to_string(e.V) +
                           " dim=" + std::to_string(e.dim);
                    if (!e.gens.empty())
                        out += " [" + e.gens.front() + "]";
                    out += "\n";
                }
                if (cotor_check)
                    out += std::string("closed-form check: ") + (check_ok ? "pass" : "fail") + "\n";
                res.out = out;
            }
            res.code = check_ok ? 0 : 1;
        } else if (*sc_self) {
            res.code = cli_detail::selftest(self_seed, res.out);
        }
    } catch (const ParseError& e) {
        res.code = 3;
        res.out = std::string("parse error: ") + e.what() + "\n";
    } catch (const CLI::ValidationError& e) {
        res.code = 3;
        res.out = std::string("usage error: ") + e.what() + "\n";
    } catch (const UndeterminedError& e) {
        if (json) {
            ordered_json j;
            j["status"] = "undetermined";
            j["result"] = e.what();
            res.out = j.dump() + "\n";
        } else {
            res.out = std::string("undetermined: ") + e.what() + "\n";
        }
        res.code = 2;
    } catch (const BudgetError& e) {
        res.code = 2;
        res.out = std::string("budget exceeded: ") + e.what() + "\n";
    } catch (const CeilingError& e) {
        res.code = 2;
        res.out = std::string("window exhausted: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        res.code = 3;
        res.out = std::string("error: ") + e.what() + "\n";
    }
    return res;
}

}  // namespace c2ops
