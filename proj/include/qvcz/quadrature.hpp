#pragma once

#include <cmath>
#include <concepts>
#include <span>
#include <vector>

#include "qvcz/core.hpp"

namespace qvcz {

struct QuadratureSpec {
    int nodes_per_axis = 64;
    double target_abs_tol = 1e-9;

    /// Throws InvalidArgument unless nodes_per_axis >= 8 and tol > 0.
    void validate() const;
    QuadratureSpec doubled() const { return {2 * nodes_per_axis, target_abs_tol}; }
};

/// Gauss–Legendre nodes and weights mapped to [-1/2, 1/2].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

GaussLegendreRule make_gauss_legendre(int n);

/// Cached rule; the returned reference stays valid for the process lifetime.
const GaussLegendreRule& gauss_legendre(int n);

template <typename F>
concept Integrand1d = std::invocable<F, double> && std::convertible_to<std::invoke_result_t<F, double>, Complex>;

template <typename F>
concept Integrand2d =
    std::invocable<F, double, double> && std::convertible_to<std::invoke_result_t<F, double, double>, Complex>;

namespace detail {
[[noreturn]] void throw_non_finite(double u);
[[noreturn]] void throw_non_finite(double u, double v);
inline bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }
}  // namespace detail

/// ∫ f(u) du over [-1/2, 1/2].
template <Integrand1d F>
Complex integrate1d(F&& f, const QuadratureSpec& spec) {
    spec.validate();
    const auto& rule = gauss_legendre(spec.nodes_per_axis);
    Complex sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        const Complex value = f(rule.nodes[i]);
        if (!detail::finite(value)) detail::throw_non_finite(rule.nodes[i]);
        sum += rule.weights[i] * value;
    }
    return sum;
}

/// ∫∫ f(u,v) du dv over [-1/2, 1/2]², tensor-product rule.
template <Integrand2d F>
Complex integrate2d(F&& f, const QuadratureSpec& spec) {
    spec.validate();
    const auto& rule = gauss_legendre(spec.nodes_per_axis);
    Complex sum = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        Complex row = 0.0;
        for (int j = 0; j < rule.size(); ++j) {
            const Complex value = f(rule.nodes[i], rule.nodes[j]);
            if (!detail::finite(value)) detail::throw_non_finite(rule.nodes[i], rule.nodes[j]);
            row += rule.weights[j] * value;
        }
        sum += rule.weights[i] * row;
    }
    return sum;
}

struct ConvergenceCheck {
    Complex value;     // estimate at spec.nodes_per_axis
    double delta;      // |result(N) - result(2N)|
    bool converged;    // delta < spec.target_abs_tol
};

template <Integrand2d F>
ConvergenceCheck integrate2d_checked(F&& f, const QuadratureSpec& spec) {
    const Complex coarse = integrate2d(f, spec);
    const Complex fine = integrate2d(f, spec.doubled());
    const double delta = std::abs(fine - coarse);
    return {coarse, delta, delta < spec.target_abs_tol};
}

/// Sampled scalar field on a uniform transverse grid at distance z.
struct FieldProfile {
    std::vector<double> grid;
    std::vector<Complex> amplitude;
    double z = 0.0;

    /// Throws InvalidArgument if the grid is not strictly increasing and
    /// uniform, sizes differ, or amplitudes are not finite.
    void validate() const;
    double spacing() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }
};

/// Midpoint samples of a(x) on [-L/2, L/2]: x_n = -L/2 + (n + 1/2)·L/count.
template <typename F>
FieldProfile sample_aperture(F&& amplitude, double L, int count) {
    FieldProfile p;
    p.grid.resize(count);
    p.amplitude.resize(count);
    const double h = L / count;
    for (int n = 0; n < count; ++n) {
        p.grid[n] = -0.5 * L + (n + 0.5) * h;
        p.amplitude[n] = amplitude(p.grid[n]);
    }
    return p;
}

/// Fresnel propagation from the source profile to distance z:
///   a(X) = Σ_n a(ρ_n) · (-i e^{ikz}/(λz)) · e^{ik(X-ρ_n)²/(2z)} · Δρ.
/// Throws ZNonpositive, or UndersampledPhase when the kernel phase advances
/// by more than π between adjacent source samples for some X in out_grid.
FieldProfile fresnel_propagate(const FieldProfile& source, double z, double lambda, std::span<const double> out_grid);

/// Largest source spacing allowed by the phase guard for a window reaching
/// max_distance between a source sample and an output point.
double fresnel_nyquist_spacing(double z, double lambda, double max_distance);

}  // namespace qvcz
