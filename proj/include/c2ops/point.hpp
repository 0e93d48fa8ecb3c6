#pragma once

// Exact arithmetic in the RO(C2)-graded coefficient ring of a point,
//   F[u, a] (+) F{th/(a^k u^n) : k, n >= 0},
// together with its Tate variant F[u^{±1}, a^{±1}], the underlying ring
// F[res(u)^{±1}], the Mackey restriction/transfer maps and the boundary map
// of the Tate square. Everything is mod 2; elements are sparse F2 sets of
// basis classes and may be inhomogeneous.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degree.hpp"

namespace c2ops {

// A basis class of the coefficient ring: either u^i a^j in the polynomial
// cone or th/(a^k u^n) in the divided (negative) cone.
struct PointClass {
    enum class Cone : uint8_t { Pos, Neg };
    Cone cone = Cone::Pos;
    // Pos: e1 = exponent of u, e2 = exponent of a.
    // Neg: e1 = a-divisions k, e2 = u-divisions n.
    int e1 = 0;
    int e2 = 0;

    static PointClass one() { return {Cone::Pos, 0, 0}; }
    static PointClass u(int i = 1) { return {Cone::Pos, i, 0}; }
    static PointClass a(int j = 1) { return {Cone::Pos, 0, j}; }
    static PointClass pos(int i, int j) { return {Cone::Pos, i, j}; }
    static PointClass theta(int k = 0, int n = 0) { return {Cone::Neg, k, n}; }

    bool is_one() const { return cone == Cone::Pos && e1 == 0 && e2 == 0; }
    bool is_pos() const { return cone == Cone::Pos; }

    auto operator<=>(const PointClass&) const = default;
};

inline Degree degree_of(PointClass c)
{
    if (c.cone == PointClass::Cone::Pos)
        return {c.e1, -c.e1 - c.e2};
    return {-(2 + c.e2), 2 + c.e1 + c.e2};
}

// All basis classes in a given degree. The two cones are degreewise disjoint
// and each contributes at most one class, so the result has size 0 or 1.
inline std::vector<PointClass> basis_at(Degree d)
{
    std::vector<PointClass> out;
    if (d.a >= 0 && -d.a - d.b >= 0)
        out.push_back(PointClass::pos(d.a, -d.a - d.b));
    if (d.a <= -2 && d.a + d.b >= 0)
        out.push_back(PointClass::theta(d.a + d.b, -d.a - 2));
    return out;
}

// Product of basis classes; empty when the product vanishes.
inline std::optional<PointClass> mul(PointClass x, PointClass y)
{
    using Cone = PointClass::Cone;
    if (x.cone == Cone::Neg && y.cone == Cone::Neg)
        return std::nullopt;  // square-zero part
    if (x.cone == Cone::Neg)
        std::swap(x, y);
    if (y.cone == Cone::Pos)
        return PointClass::pos(x.e1 + y.e1, x.e2 + y.e2);
    // u^i a^j * th/(a^k u^n): divided structure, zero once a cone is left.
    if (y.e1 >= x.e2 && y.e2 >= x.e1)
        return PointClass::theta(y.e1 - x.e2, y.e2 - x.e1);
    return std::nullopt;
}

// Sparse F2 sum of basis classes, kept sorted and duplicate-free.
struct PointElem {
    std::vector<PointClass> classes;

    PointElem() = default;
    explicit PointElem(PointClass c) : classes{c} {}

    static PointElem zero() { return {}; }
    static PointElem one() { return PointElem(PointClass::one()); }

    bool is_zero() const { return classes.empty(); }
    bool operator==(const PointElem&) const = default;
};

namespace detail {
// XOR-merge of sorted vectors (F2 addition).
template <class T>
std::vector<T> xor_merge(const std::vector<T>& x, const std::vector<T>& y)
{
    std::vector<T> out;
    out.reserve(x.size() + y.size());
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (*i < *j)
            out.push_back(*i++);
        else if (*j < *i)
            out.push_back(*j++);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), i, x.end());
    out.insert(out.end(), j, y.end());
    return out;
}

template <class T>
void xor_in(std::vector<T>& acc, const T& t)
{
    auto it = std::lower_bound(acc.begin(), acc.end(), t);
    if (it != acc.end() && *it == t)
        acc.erase(it);
    else
        acc.insert(it, t);
}
}  // namespace detail

inline PointElem add(const PointElem& x, const PointElem& y)
{
    PointElem out;
    out.classes = detail::xor_merge(x.classes, y.classes);
    return out;
}

inline PointElem mul(const PointElem& x, const PointElem& y)
{
    PointElem out;
    for (const auto& c : x.classes)
        for (const auto& d : y.classes)
            if (auto p = mul(c, d))
                detail::xor_in(out.classes, *p);
    return out;
}

// Underlying homotopy: F2 sum of res(u)^i. res(u)^i sits in degree (i, -i).
struct UnderlyingElem {
    std::vector<int> exps;

    static UnderlyingElem zero() { return {}; }
    static UnderlyingElem res_u(int i) { return {{i}}; }
    bool is_zero() const { return exps.empty(); }
    bool operator==(const UnderlyingElem&) const = default;
};

inline UnderlyingElem add(const UnderlyingElem& x, const UnderlyingElem& y)
{
    UnderlyingElem out;
    out.exps = detail::xor_merge(x.exps, y.exps);
    return out;
}

inline UnderlyingElem mul(const UnderlyingElem& x, const UnderlyingElem& y)
{
    UnderlyingElem out;
    for (int i : x.exps)
        for (int j : y.exps)
            detail::xor_in(out.exps, i + j);
    return out;
}

// res(a) = 0 and the divided cone is in the image of the transfer, so it
// restricts to zero as well.
inline UnderlyingElem restriction(const PointElem& x)
{
    UnderlyingElem out;
    for (const auto& c : x.classes)
        if (c.cone == PointClass::Cone::Pos && c.e2 == 0)
            detail::xor_in(out.exps, c.e1);
    return out;
}

// tr(res(u)^{-(n+2)}) = th/u^n for n >= 0; everything else transfers to zero.
inline PointElem transfer(const UnderlyingElem& y)
{
    PointElem out;
    for (int m : y.exps)
        if (m <= -2)
            detail::xor_in(out.classes, PointClass::theta(0, -m - 2));
    return out;
}

// Class u^i a^j of the Tate ring, i and j arbitrary.
struct TateClass {
    int ue = 0;
    int ae = 0;
    auto operator<=>(const TateClass&) const = default;
};

// Boundary map of the Tate diagram: d(u^{-n-1} a^{-k-1}) = th/(a^k u^n) when
// k, n >= 0, and 0 on the rest of the Laurent ring.
inline PointElem tate_boundary(TateClass z)
{
    if (z.ue <= -1 && z.ae <= -1)
        return PointElem(PointClass::theta(-z.ae - 1, -z.ue - 1));
    return PointElem::zero();
}

inline std::string to_string(PointClass c)
{
    auto pow = [](const char* s, int e) {
        std::string r = s;
        if (e != 1)
            r += "^" + std::to_string(e);
        return r;
    };
    if (c.cone == PointClass::Cone::Pos) {
        if (c.e1 == 0 && c.e2 == 0)
            return std::string("1");
        std::string r;
        if (c.e1 != 0)
            r = pow("u", c.e1);
        if (c.e2 != 0) {
            if (!r.empty())
                r += "*";
            r += pow("a", c.e2);
        }
        return r;
    }
    if (c.e1 == 0 && c.e2 == 0)
        return std::string("th");
    std::string denom;
    if (c.e1 != 0)
        denom = pow("a", c.e1);
    if (c.e2 != 0) {
        if (!denom.empty())
            denom += "*";
        denom += pow("u", c.e2);
    }
    return "th/(" + denom + ")";
}

inline std::string to_string(const PointElem& x)
{
    if (x.classes.empty())
        return "0";
    std::string r;
    for (const auto& c : x.classes) {
        if (!r.empty())
            r += " + ";
        r += to_string(c);
    }
    return r;
}

inline std::string to_string(const UnderlyingElem& x)
{
    if (x.exps.empty())
        return "0";
    std::string r;
    for (int i : x.exps) {
        if (!r.empty())
            r += " + ";
        r += "ru";
        if (i != 1)
            r += "^" + std::to_string(i);
    }
    return r;
}

}  // namespace c2ops
