#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <c2ops/series.hpp>

using namespace c2ops;

namespace {

CoeffAlg xi(int i) { return CoeffAlg::xi(i); }
CoeffAlg tau(int i) { return CoeffAlg::tau(i); }
CoeffAlg pw(CoeffAlg c, int n)
{
    CoeffAlg r = CoeffAlg::one();
    for (int k = 0; k < n; ++k)
        r = mul(r, c);
    return r;
}

// Independent oracle: compositional reversion of xi(t), solved degree by
// degree. Over F2 adding c t^m to g changes xi(g) by c t^m + O(t^{2m}).
LaurentSeries reversion_of_xi(int ceiling)
{
    LaurentSeries g = LaurentSeries::t(ceiling);
    for (int m = 2; m < ceiling; ++m) {
        LaurentSeries err = compose(xi_series(ceiling + 1), g);
        CoeffAlg e = coeff(err, m);
        if (!e.is_zero()) {
            LaurentSeries corr = LaurentSeries::monomial(e, m, ceiling);
            g = add(g, corr);
        }
    }
    return g;
}

uint64_t xorshift(uint64_t& s)
{
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
}

}  // namespace

TEST_CASE("xi and tau series")
{
    auto f = xi_series(3);
    CHECK(coeff(f, 1) == CoeffAlg::one());
    CHECK(coeff(f, 2) == xi(1));
    CHECK_THROWS_AS(coeff(f, 3), CeilingError);
    CHECK(to_string(f) == "t + xi1*t^2");

    auto g = tau_series(3);
    CHECK(to_string(g) == "tau0*t + tau1*t^2");
    CHECK_THROWS_AS(xi_series(1), std::invalid_argument);
}

TEST_CASE("conjugates by recursion match the frozen expansions")
{
    CHECK(conjugate_xi(1) == xi(1));
    CHECK(conjugate_xi(2) == add(xi(2), pw(xi(1), 3)));
    CHECK(conjugate_xi(3) ==
          add(add(xi(3), mul(xi(1), square(xi(2)))),
              add(mul(pw(xi(1), 4), xi(2)), pw(xi(1), 7))));
    CHECK(conjugate_tau(0) == tau(0));
    CHECK(conjugate_tau(1) == add(tau(1), mul(xi(1), tau(0))));
    CHECK(conjugate_tau(2) ==
          add(add(tau(2), mul(square(xi(1)), tau(1))),
              mul(add(pw(xi(1), 3), xi(2)), tau(0))));
}

TEST_CASE("conjugates match the compositional reversion oracle")
{
    auto g = reversion_of_xi(17);  // sees xibar_0 .. xibar_4
    for (int i = 0; (1 << i) < 17; ++i)
        CHECK(coeff(g, 1 << i) == conjugate_xi(i));
    // reversion is supported on 2-power exponents only
    for (int m = 1; m < 17; ++m)
        if ((m & (m - 1)) != 0)
            CHECK(coeff(g, m).is_zero());
    // tau(reversion) = taubar
    auto tb = compose(tau_series(18), g);
    for (int i = 0; (1 << i) < 17; ++i)
        CHECK(coeff(tb, 1 << i) == conjugate_tau(i));
}

TEST_CASE("powers")
{
    auto f = xi_series(8);
    CHECK(power(f, 0).coeffs == LaurentSeries::constant(CoeffAlg::one()).coeffs);

    auto inv = power(f, -1);
    CHECK(coeff(inv, -1) == CoeffAlg::one());
    CHECK(coeff(inv, 0) == xi(1));
    CHECK(coeff(inv, 1) == square(xi(1)));
    CHECK(coeff(inv, 2) == add(pw(xi(1), 3), xi(2)));

    // f * f^{-1} = 1 within the valid ceiling
    auto prod = mul(f, inv);
    for (int s = 0; s < prod.ceiling; ++s)
        CHECK(coeff(prod, s) == (s == 0 ? CoeffAlg::one() : CoeffAlg::zero()));

    CHECK(coeff(power(f, 2), 4) == square(xi(1)));
    CHECK_THROWS(power(tau_series(6), -1));
}

TEST_CASE("mul(tau, xi^{-1}) has constant term tau_0")
{
    auto q = mul(tau_series(8), power(xi_series(8), -1));
    CHECK(coeff(q, 0) == tau(0));
    CHECK(coeff(q, 1) == add(mul(tau(0), xi(1)), tau(1)));
}

TEST_CASE("compose")
{
    auto f = xi_series(9);
    CHECK(compose(f, LaurentSeries::t()).coeffs == xi_series(9).coeffs);
    CHECK_THROWS(compose(f, LaurentSeries::constant(CoeffAlg::one())));

    auto xb = xibar_series(9);
    auto id1 = compose(xi_series(10), xb);
    for (int s = 1; s < id1.ceiling; ++s)
        CHECK(coeff(id1, s) == (s == 1 ? CoeffAlg::one() : CoeffAlg::zero()));
    auto id2 = compose(xb, xi_series(9));
    for (int s = 1; s < id2.ceiling; ++s)
        CHECK(coeff(id2, s) == (s == 1 ? CoeffAlg::one() : CoeffAlg::zero()));

    auto tb = compose(tau_series(10), xb);
    for (int i = 0; (1 << i) < tb.ceiling; ++i)
        CHECK(coeff(tb, 1 << i) == conjugate_tau(i));
}

TEST_CASE("derivative")
{
    CHECK(to_string(derivative(xi_series(20))) == "1");
    CHECK(derivative(LaurentSeries::monomial(CoeffAlg::one(), 2)).coeffs.empty());
    CHECK(to_string(derivative(LaurentSeries::monomial(CoeffAlg::one(), 3))) == "t^2");
}

TEST_CASE("residue lemma, small window")
{
    for (int r = -5; r <= 5; ++r)
        for (int s = -5; s <= 5; ++s) {
            int ceil = 24;
            auto lhs1 = coeff(power(xibar_series(ceil), -s - 1), -r - 1);
            auto rhs1 = coeff(power(xi_series(ceil), r), s);
            CHECK(lhs1 == rhs1);
            auto lhs2 = coeff(mul(taubar_series(ceil), power(xibar_series(ceil), -s - 1)), -r - 1);
            auto rhs2 = coeff(mul(power(xi_series(ceil), r), tau_series(ceil)), s);
            CHECK(lhs2 == rhs2);
        }
}

TEST_CASE("residue under change of variables")
{
    uint64_t seed = 0x9e3779b97f4a7c15ull;
    for (int trial = 0; trial < 20; ++trial) {
        LaurentSeries f;
        f.lo = -5;
        f.ceiling = 6;
        for (int s = -5; s < 6; ++s)
            if (xorshift(seed) & 1) {
                CoeffAlg c = (xorshift(seed) & 1) ? CoeffAlg::one() : xi(1 + (int)(xorshift(seed) % 2));
                f.coeffs[s] = c;
            }
        auto lhs = residue(mul(compose(f, xi_series(16)), derivative(xi_series(16))));
        CHECK(lhs == residue(f));
    }
}

TEST_CASE("degree homogeneity of power coefficients")
{
    for (int r = -4; r <= 4; ++r)
        for (int s = -4; s <= 4; ++s) {
            auto c = coeff(power(xi_series(16), r), s);
            CHECK(homogeneous_of_degree(c, (s - r) * kRho));
            auto d = coeff(mul(power(xi_series(16), r), tau_series(16)), s);
            CHECK(homogeneous_of_degree(d, ((s - r) * kRho) - kSigma));
        }
}

TEST_CASE("rendering")
{
    auto inv = power(xi_series(5), -1);
    CHECK(to_string(inv).substr(0, 31) == "t^-1 + xi1 + xi1^2*t + (xi1^3 +");
}
