#include "qvcz/photonstats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qvcz/quadrature.hpp"

namespace qvcz {

PhotonDistribution::PhotonDistribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
    if (p_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "photon distribution is empty");
    }
    for (double v : p_) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "photon probabilities must be finite and non-negative");
        }
    }
}

double PhotonDistribution::total() const {
    double s = 0.0;
    for (double v : p_) s += v;
    return s;
}

double PhotonDistribution::mean() const {
    double s = 0.0;
    for (size_t n = 0; n < p_.size(); ++n) s += n * p_[n];
    return s;
}

double PhotonDistribution::second_moment() const {
    double s = 0.0;
    for (size_t n = 0; n < p_.size(); ++n) s += double(n) * double(n) * p_[n];
    return s;
}

double PhotonDistribution::variance() const {
    const double m = mean();
    return second_moment() - m * m;
}

PhotonDistribution thermal_pmf(double nbar, int n_max) {
    if (!std::isfinite(nbar) || nbar < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "mean photon number must be finite and non-negative");
    }
    if (n_max < 0) {
        throw Error(ErrorCode::InvalidArgument, "n_max must be non-negative");
    }
    const double ratio = nbar / (nbar + 1.0);
    const double tail = std::pow(ratio, n_max + 1);
    if (tail > kTailTolerance) {
        throw Error(ErrorCode::TruncationInsufficient,
                    "thermal tail mass " + std::to_string(tail) + " beyond n_max=" + std::to_string(n_max));
    }
    std::vector<double> p(n_max + 1);
    double term = 1.0 / (nbar + 1.0);
    for (int n = 0; n <= n_max; ++n) {
        p[n] = term;
        term *= ratio;
    }
    return PhotonDistribution(std::move(p));
}

PhotonDistribution convolve(const PhotonDistribution& pH, const PhotonDistribution& pV) {
    const auto& a = pH.probabilities();
    const auto& b = pV.probabilities();
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return PhotonDistribution(std::move(out));
}

double g2_from_distribution(const PhotonDistribution& p) {
    const double m = p.mean();
    if (!(m > 0.0)) {
        throw Error(ErrorCode::ZeroMeanDistribution, "g2 undefined for a distribution with zero mean");
    }
    return 1.0 + (p.variance() - m) / (m * m);
}

DetectorPoint detector_means(double total_mean_photons, const DetectorPlacement& placement,
                             const FresnelGridSpec& grid) {
    const double L = placement.L;
    if (!(L > 0.0) || !(placement.lambda > 0.0) || !std::isfinite(placement.X)) {
        throw Error(ErrorCode::InvalidGeometry, "detector placement needs L > 0, lambda > 0 and finite X");
    }
    if (!(placement.z >= 0.0)) {
        throw Error(ErrorCode::ZNonpositive, "detector distance must be non-negative");
    }
    if (!(total_mean_photons >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "total mean photon number must be non-negative");
    }

    DetectorPoint point{placement.X, placement.z, 0.0, 0.0};
    if (placement.z == 0.0) {
        // ∫(cos² + sin²) over the aperture is L.
        if (std::abs(placement.X) <= 0.5 * L) {
            const double c = std::cos(kPi * placement.X / L);
            const double s = std::sin(kPi * placement.X / L);
            point.mean_h = total_mean_photons * c * c / L;
            point.mean_v = total_mean_photons * s * s / L;
        }
        return point;
    }

    const double z = placement.z;
    const double max_distance = std::abs(placement.X) + 0.5 * L;
    const double guarded = fresnel_nyquist_spacing(z, placement.lambda, max_distance) / grid.nyquist_safety;
    const int samples = std::max(grid.source_samples, static_cast<int>(std::ceil(L / guarded)));

    const FieldProfile h = sample_aperture([L](double x) { return Complex(std::cos(kPi * x / L)); }, L, samples);
    const FieldProfile v = sample_aperture([L](double x) { return Complex(std::sin(kPi * x / L)); }, L, samples);
    const std::array<double, 1> at = {placement.X};
    const Complex ah = fresnel_propagate(h, z, placement.lambda, at).amplitude[0];
    const Complex av = fresnel_propagate(v, z, placement.lambda, at).amplitude[0];

    // Output-plane power of this kernel is (input power)/(λz); input power is L.
    const double plane_power = L / (placement.lambda * z);
    point.mean_h = total_mean_photons * std::norm(ah) / plane_power;
    point.mean_v = total_mean_photons * std::norm(av) / plane_power;
    return point;
}

CombinedStatistics combined_statistics(const DetectorPoint& point, int n_max) {
    const PhotonDistribution pH = thermal_pmf(point.mean_h, n_max);
    const PhotonDistribution pV = thermal_pmf(point.mean_v, n_max);
    CombinedStatistics out{convolve(pH, pV), 0.0};
    const double total = out.distribution.total();
    if (std::abs(total - 1.0) >= kTailTolerance) {
        throw Error(ErrorCode::TruncationInsufficient,
                    "combined distribution mass " + std::to_string(total) + " differs from 1 beyond tolerance");
    }
    out.g2 = g2_from_distribution(out.distribution);
    return out;
}

}  // namespace qvcz
