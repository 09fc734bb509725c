#include "qvcz/quadrature.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace qvcz {

void QuadratureSpec::validate() const {
    if (nodes_per_axis < 8) {
        throw Error(ErrorCode::InvalidArgument, "nodes_per_axis must be at least 8, got " + std::to_string(nodes_per_axis));
    }
    if (!(target_abs_tol > 0.0) || !std::isfinite(target_abs_tol)) {
        throw Error(ErrorCode::InvalidArgument, "target_abs_tol must be positive");
    }
}

GaussLegendreRule make_gauss_legendre(int n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order must be positive");
    }
    if (n == 1) {
        return {{0.0}, {1.0}};
    }
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // [-1,1] -> [-1/2,1/2]
        rule.nodes[i] = -0.5 * x;
        rule.nodes[n - 1 - i] = 0.5 * x;
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

const GaussLegendreRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<GaussLegendreRule>(make_gauss_legendre(n));
    }
    return *slot;
}

namespace detail {

void throw_non_finite(double u) {
    throw Error(ErrorCode::NonFiniteIntegrand, "integrand not finite at u=" + std::to_string(u));
}

void throw_non_finite(double u, double v) {
    throw Error(ErrorCode::NonFiniteIntegrand,
                "integrand not finite at (u,v)=(" + std::to_string(u) + ", " + std::to_string(v) + ")");
}

}  // namespace detail

void FieldProfile::validate() const {
    if (grid.size() != amplitude.size()) {
        throw Error(ErrorCode::InvalidArgument, "field profile grid and amplitude sizes differ");
    }
    if (grid.empty()) {
        throw Error(ErrorCode::InvalidArgument, "field profile is empty");
    }
    const double h = spacing();
    for (size_t n = 1; n < grid.size(); ++n) {
        const double step = grid[n] - grid[n - 1];
        if (!(step > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "field profile grid must be strictly increasing");
        }
        if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw Error(ErrorCode::InvalidArgument, "field profile grid must be uniformly spaced");
        }
    }
    for (const Complex& a : amplitude) {
        if (!detail::finite(a)) {
            throw Error(ErrorCode::InvalidArgument, "field profile amplitude not finite");
        }
    }
}

double fresnel_nyquist_spacing(double z, double lambda, double max_distance) {
    // Phase k·d·Δρ/z must not exceed π.
    return lambda * z / (2.0 * max_distance);
}

FieldProfile fresnel_propagate(const FieldProfile& source, double z, double lambda, std::span<const double> out_grid) {
    if (!(z > 0.0)) {
        throw Error(ErrorCode::ZNonpositive, "propagation distance must be positive");
    }
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "wavelength must be positive");
    }
    source.validate();
    if (source.grid.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "Fresnel propagation needs at least two source samples");
    }
    const double h = source.spacing();
    const double k = 2.0 * kPi / lambda;

    double max_distance = 0.0;
    for (double X : out_grid) {
        max_distance = std::max({max_distance, std::abs(X - source.grid.front()), std::abs(X - source.grid.back())});
    }
    if (k * max_distance * h / z > kPi) {
        throw Error(ErrorCode::UndersampledPhase,
                    "Fresnel kernel phase advances by more than pi between source samples (spacing " +
                        std::to_string(h) + ", allowed " + std::to_string(fresnel_nyquist_spacing(z, lambda, max_distance)) +
                        ")");
    }

    const Complex prefactor = Complex(0.0, -1.0) * std::polar(1.0, std::fmod(k * z, 2.0 * kPi)) / (lambda * z);
    FieldProfile out;
    out.z = z;
    out.grid.assign(out_grid.begin(), out_grid.end());
    out.amplitude.resize(out.grid.size());
    for (size_t i = 0; i < out.grid.size(); ++i) {
        const double X = out.grid[i];
        Complex sum = 0.0;
        for (size_t n = 0; n < source.grid.size(); ++n) {
            const double d = X - source.grid[n];
            sum += source.amplitude[n] * std::polar(1.0, 0.5 * k * d * d / z);
        }
        out.amplitude[i] = prefactor * sum * h;
    }
    return out;
}

}  // namespace qvcz
