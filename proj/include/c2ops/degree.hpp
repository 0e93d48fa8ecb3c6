#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace c2ops {

// RO(C2) degree a + b*sigma. rho = 1 + sigma = (1,1).
struct Degree {
    int a = 0;
    int b = 0;

    friend Degree operator+(Degree x, Degree y) { return {x.a + y.a, x.b + y.b}; }
    friend Degree operator-(Degree x, Degree y) { return {x.a - y.a, x.b - y.b}; }
    Degree& operator+=(Degree y)
    {
        a += y.a;
        b += y.b;
        return *this;
    }
    friend Degree operator*(int n, Degree d) { return {n * d.a, n * d.b}; }
    auto operator<=>(const Degree&) const = default;
};

inline constexpr Degree kRho{1, 1};
inline constexpr Degree kSigma{0, 1};
inline constexpr Degree kOne{1, 0};

inline std::string to_string(Degree d)
{
    return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")";
}

}  // namespace c2ops
