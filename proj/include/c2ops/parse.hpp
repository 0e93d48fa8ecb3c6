#pragma once

// Recursive-descent parser for the shared element grammar:
//   elem   := term ('+' term)*
//   term   := factor ('*' factor)*
//   factor := sym ('^' int)?
//   sym    := 'u' | 'a' | 'th' ['/' '(' term ')'] | 'b' | 'c' | 'ubar'
//           | 'xi' INT | 'tau' INT | '1'
// Which symbols are admitted depends on the target type.

#include <cctype>
#include <string>

#include "bmu.hpp"
#include "dual_steenrod.hpp"

namespace c2ops {

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& what, size_t p)
        : std::runtime_error(what + " (at position " + std::to_string(p) + ")"), pos(p)
    {
    }
};

namespace parse_detail {

struct Factor {
    std::string sym;  // "u", "a", "th", "b", "c", "ubar", "xi", "tau", "1"
    int index = 0;    // xi/tau index
    int exp = 1;
    int th_k = 0;  // a-divisions for "th"
    int th_n = 0;  // u-divisions for "th"
    size_t pos = 0;
};

struct Term {
    std::vector<Factor> factors;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) {}

    void skip_ws()
    {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_]))
            ++i_;
    }
    bool eof()
    {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek()
    {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c)
    {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "'", i_);
    }
    int integer()
    {
        skip_ws();
        size_t start = i_;
        bool neg = false;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
            neg = s_[i_] == '-';
            ++i_;
        }
        if (i_ >= s_.size() || !std::isdigit((unsigned char)s_[i_]))
            throw ParseError("expected an integer", start);
        long v = 0;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) {
            v = v * 10 + (s_[i_] - '0');
            if (v > 1000000)
                throw ParseError("integer too large", start);
            ++i_;
        }
        return neg ? (int)-v : (int)v;
    }
    std::string ident()
    {
        skip_ws();
        size_t start = i_;
        std::string out;
        while (i_ < s_.size() && std::isalpha((unsigned char)s_[i_]))
            out += s_[i_++];
        if (out.empty())
            throw ParseError("expected a symbol", start);
        return out;
    }
    size_t pos() const { return i_; }

  private:
    const std::string& s_;
    size_t i_ = 0;
};

inline Factor parse_factor(Lexer& lx)
{
    Factor f;
    f.pos = lx.pos();
    if (lx.peek() == '1') {
        lx.expect('1');
        f.sym = "1";
        return f;
    }
    std::string id = lx.ident();
    if (id == "xi" || id == "tau") {
        f.sym = id;
        f.index = lx.integer();
        if (f.index < 0 || (id == "xi" && f.index < 1))
            throw ParseError("bad " + id + " index", f.pos);
    } else if (id == "u" || id == "a" || id == "b" || id == "c" || id == "ubar") {
        f.sym = id;
    } else if (id == "th") {
        f.sym = "th";
        if (lx.accept('/')) {
            lx.expect('(');
            // denominator: product of a^k and u^n
            do {
                size_t p = lx.pos();
                std::string d = lx.ident();
                int e = 1;
                if (lx.accept('^'))
                    e = lx.integer();
                if (e < 0)
                    throw ParseError("negative division", p);
                if (d == "a")
                    f.th_k += e;
                else if (d == "u")
                    f.th_n += e;
                else
                    throw ParseError("unknown divided symbol '" + d + "'", p);
            } while (lx.accept('*'));
            lx.expect(')');
        }
        return f;  // no exponent on th
    } else {
        throw ParseError("unknown symbol '" + id + "'", f.pos);
    }
    if (lx.accept('^'))
        f.exp = lx.integer();
    return f;
}

inline std::vector<Term> parse_sum(const std::string& text)
{
    Lexer lx(text);
    std::vector<Term> out;
    if (lx.eof())
        throw ParseError("empty expression", 0);
    do {
        // allow a literal "0"
        if (lx.peek() == '0') {
            lx.expect('0');
            continue;
        }
        Term t;
        do {
            t.factors.push_back(parse_factor(lx));
        } while (lx.accept('*'));
        out.push_back(std::move(t));
    } while (lx.accept('+'));
    if (!lx.eof())
        throw ParseError("trailing input", lx.pos());
    return out;
}

}  // namespace parse_detail

inline PointElem parse_point(const std::string& text)
{
    PointElem out;
    for (const auto& t : parse_detail::parse_sum(text)) {
        int ue = 0, ae = 0;
        int th = 0, k = 0, n = 0;
        for (const auto& f : t.factors) {
            if (f.exp < 0)
                throw ParseError("negative exponent in the coefficient ring", f.pos);
            if (f.sym == "u")
                ue += f.exp;
            else if (f.sym == "a")
                ae += f.exp;
            else if (f.sym == "th") {
                ++th;
                k += f.th_k;
                n += f.th_n;
            } else if (f.sym == "1") {
            } else
                throw ParseError("symbol '" + f.sym + "' is not a coefficient-ring class", f.pos);
        }
        PointElem term;
        if (th == 0)
            term = PointElem(PointClass::pos(ue, ae));
        else if (th == 1)
            term = mul(PointElem(PointClass::pos(ue, ae)), PointElem(PointClass::theta(k, n)));
        else
            term = PointElem::zero();  // th^2 = 0
        out = add(out, term);
    }
    return out;
}

inline ASElem parse_as(const std::string& text)
{
    ASElem out;
    for (const auto& t : parse_detail::parse_sum(text)) {
        RawMonomial raw;
        int th = 0, k = 0, n = 0, ue = 0, ae = 0;
        for (const auto& f : t.factors) {
            if (f.exp < 0)
                throw ParseError("negative exponent", f.pos);
            if (f.sym == "u")
                ue += f.exp;
            else if (f.sym == "a")
                ae += f.exp;
            else if (f.sym == "ubar")
                raw.ubar += f.exp;
            else if (f.sym == "xi")
                detail::mi_push(raw.xi, f.index, f.exp);
            else if (f.sym == "tau")
                detail::mi_push(raw.tau, f.index, f.exp);
            else if (f.sym == "th") {
                ++th;
                k += f.th_k;
                n += f.th_n;
            } else if (f.sym == "1") {
            } else
                throw ParseError("symbol '" + f.sym + "' is not in the dual Steenrod algebra",
                                 f.pos);
        }
        PointElem coeff(PointClass::pos(ue, ae));
        if (th == 1)
            coeff = mul(coeff, PointElem(PointClass::theta(k, n)));
        else if (th > 1)
            coeff = PointElem::zero();
        for (auto c : coeff.classes) {
            RawMonomial rm = raw;
            rm.coeff = c;
            out = add(out, normalize(rm));
        }
    }
    return out;
}

inline BmuElem parse_bmu(const std::string& text)
{
    BmuElem out;
    for (const auto& t : parse_detail::parse_sum(text)) {
        int ue = 0, ae = 0, ce = 0, be = 0;
        int th = 0, k = 0, n = 0;
        for (const auto& f : t.factors) {
            if (f.sym == "u")
                ue += f.exp;
            else if (f.sym == "a")
                ae += f.exp;
            else if (f.sym == "c")
                ce += f.exp;
            else if (f.sym == "b")
                be += f.exp;  // may be negative (localized)
            else if (f.sym == "th") {
                ++th;
                k += f.th_k;
                n += f.th_n;
            } else if (f.sym == "1") {
            } else
                throw ParseError("symbol '" + f.sym + "' is not in the Bmu2 ring", f.pos);
            if (f.exp < 0 && f.sym != "b")
                throw ParseError("negative exponent", f.pos);
        }
        PointElem coeff(PointClass::pos(ue, ae));
        if (th == 1)
            coeff = mul(coeff, PointElem(PointClass::theta(k, n)));
        else if (th > 1)
            coeff = PointElem::zero();
        BmuElem term = BmuElem(BmuMonomial{PointClass::one(), 0, be});
        for (int i = 0; i < ce; ++i)
            term = mul(term, BmuElem(BmuMonomial::c()));
        out = add(out, mul_point(coeff, term));
    }
    return out;
}

}  // namespace c2ops
