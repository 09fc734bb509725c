#include <gtest/gtest.h>

#include <array>

#include "oracles.hpp"
#include "qvcz/quadrature.hpp"

using namespace qvcz;

TEST(GaussLegendre, WeightsAndSymmetry) {
    for (int n : {1, 2, 5, 8, 64, 128}) {
        const auto rule = make_gauss_legendre(n);
        ASSERT_EQ(rule.size(), n);
        double w = 0.0;
        for (int i = 0; i < n; ++i) {
            w += rule.weights[i];
            EXPECT_NEAR(rule.nodes[i], -rule.nodes[n - 1 - i], 1e-15);
            EXPECT_LT(std::abs(rule.nodes[i]), 0.5);
        }
        EXPECT_NEAR(w, 1.0, 1e-14) << n;
    }
}

TEST(GaussLegendre, ExactForPolynomials) {
    // n nodes integrate degree 2n-1 exactly; ∫u^{2p} over [-½,½] = 2^{-2p}/(2p+1).
    const auto rule = make_gauss_legendre(6);
    for (int p = 0; p <= 5; ++p) {
        double s = 0.0;
        for (int i = 0; i < 6; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 2 * p);
        EXPECT_NEAR(s, std::pow(2.0, -2 * p) / (2 * p + 1), 1e-15) << p;
    }
}

TEST(GaussLegendre, CachedRuleIsStable) {
    const auto& a = gauss_legendre(64);
    const auto& b = gauss_legendre(64);
    EXPECT_EQ(&a, &b);
    EXPECT_EQ(a.nodes, make_gauss_legendre(64).nodes);
}

TEST(Integrate1d, Examples) {
    const QuadratureSpec spec;
    EXPECT_NEAR(std::abs(integrate1d([](double) { return Complex(1.0); }, spec) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(
        std::abs(integrate1d([](double u) { return Complex(std::pow(std::cos(kPi * u), 2)); }, spec) - oracle::int_cos2),
        0.0, 1e-14);
    EXPECT_NEAR(std::abs(integrate1d([](double u) { return Complex(u); }, spec)), 0.0, 1e-15);
}

TEST(Integrate2d, Examples) {
    const QuadratureSpec spec;
    auto c2 = [](double x) { return std::pow(std::cos(kPi * x), 2); };
    EXPECT_NEAR(std::abs(integrate2d([](double, double) { return Complex(1.0); }, spec) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(integrate2d([&](double u, double v) { return Complex(c2(u) * c2(v)); }, spec) - 0.25), 0.0,
                1e-14);
    const Complex r = integrate2d([&](double u, double v) { return Complex(c2(u - v) * c2(u) * c2(v)); }, spec);
    EXPECT_NEAR(std::abs(r - oracle::cos2_diff_cos2_cos2()), 0.0, 1e-14);
    EXPECT_NEAR(oracle::cos2_diff_cos2_cos2(), 5.0 / 32.0, 1e-16);
}

TEST(Integrate2d, Linearity) {
    const QuadratureSpec spec;
    auto f = [](double u, double v) { return Complex(std::cos(3 * u) * v, u * u); };
    auto g = [](double u, double v) { return std::polar(1.0, 2 * kPi * 1.7 * (u - v)); };
    const Complex alpha(0.3, -1.1), beta(2.0, 0.5);
    const Complex lhs = integrate2d([&](double u, double v) { return alpha * f(u, v) + beta * g(u, v); }, spec);
    const Complex rhs = alpha * integrate2d(f, spec) + beta * integrate2d(g, spec);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-14);
}

TEST(Integrate2d, OscillationConvergesAtDefaultNodes) {
    // ∫∫ e^{2πiν(u−v)} = sinc(ν)²; default nodes cover |ν| ≤ 6.
    for (double nu : {0.0, 0.7, 2.5, 4.0, 6.0}) {
        auto f = [nu](double u, double v) { return std::polar(1.0, 2 * kPi * nu * (u - v)); };
        const auto chk = integrate2d_checked(f, QuadratureSpec{});
        EXPECT_TRUE(chk.converged) << nu << " delta " << chk.delta;
        const double s = nu == 0.0 ? 1.0 : std::sin(kPi * nu) / (kPi * nu);
        EXPECT_NEAR(std::abs(chk.value - s * s), 0.0, 1e-12) << nu;
    }
}

TEST(Integrate2d, LowOrderFailsConvergence) {
    auto f = [](double u, double v) { return std::polar(1.0, 2 * kPi * 30.0 * (u - v)); };
    EXPECT_FALSE(integrate2d_checked(f, QuadratureSpec{8, 1e-9}).converged);
}

TEST(Integrate, NonFiniteIntegrandThrows) {
    try {
        integrate1d([](double u) { return Complex(1.0 / (u - u)); }, QuadratureSpec{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonFiniteIntegrand);
    }
    EXPECT_THROW(integrate2d([](double, double) { return Complex(NAN); }, QuadratureSpec{}), Error);
}

TEST(QuadratureSpec, Validation) {
    EXPECT_THROW((QuadratureSpec{4, 1e-9}.validate()), Error);
    EXPECT_THROW((QuadratureSpec{64, 0.0}.validate()), Error);
    EXPECT_NO_THROW(QuadratureSpec{}.validate());
    EXPECT_EQ(QuadratureSpec{}.doubled().nodes_per_axis, 128);
}

TEST(Fresnel, ZeroInZeroOut) {
    const auto p = sample_aperture([](double) { return Complex(0.0); }, 1.0, 512);
    const std::array<double, 3> xs = {-0.3, 0.0, 0.4};
    for (const Complex a : fresnel_propagate(p, 5.0, 1e-3, xs).amplitude) EXPECT_EQ(a, Complex(0.0));
}

TEST(Fresnel, EvenInputGivesEvenIntensity) {
    const auto p = sample_aperture([](double x) { return Complex(std::cos(kPi * x)); }, 1.0, 4096);
    std::vector<double> xs;
    for (double x = -0.6; x <= 0.6 + 1e-12; x += 0.05) xs.push_back(x);
    const auto out = fresnel_propagate(p, 50.0, 1e-3, xs);
    const size_t n = xs.size();
    for (size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(std::norm(out.amplitude[i]), std::norm(out.amplitude[n - 1 - i]), 1e-9) << xs[i];
    }
    EXPECT_DOUBLE_EQ(out.z, 50.0);
}

TEST(Fresnel, MatchesOversampledOracle) {
    const double X = 0.4, z = 350.0, lambda = 1e-3, L = 1.0;
    const auto p = sample_aperture([](double x) { return Complex(std::cos(kPi * x)); }, L, 8192);
    const std::array<double, 1> at = {X};
    const double engine = std::norm(fresnel_propagate(p, z, lambda, at).amplitude[0]);
    const double reference = std::norm(oracle::fresnel_cos_amplitude(X, z, lambda, L, 81920));
    EXPECT_LT(std::abs(engine - reference) / reference, 1e-6);
}

TEST(Fresnel, Guards) {
    const auto p = sample_aperture([](double) { return Complex(1.0); }, 1.0, 64);
    const std::array<double, 1> at = {0.0};
    try {
        fresnel_propagate(p, 0.0, 1e-3, at);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZNonpositive);
    }
    try {
        fresnel_propagate(p, 0.01, 1e-3, at);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UndersampledPhase);
    }
    EXPECT_NEAR(fresnel_nyquist_spacing(350.0, 1e-3, 0.9), 1e-3 * 350.0 / 1.8, 1e-15);
}

TEST(FieldProfile, Validation) {
    FieldProfile p;
    p.grid = {0.0, 0.1, 0.3};
    p.amplitude = {1.0, 1.0, 1.0};
    EXPECT_THROW(p.validate(), Error);
    p.grid = {0.0, 0.1, 0.2};
    EXPECT_NO_THROW(p.validate());
    p.amplitude.pop_back();
    EXPECT_THROW(p.validate(), Error);
}
