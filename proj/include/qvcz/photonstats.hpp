#pragma once

#include <vector>

#include "qvcz/core.hpp"

namespace qvcz {

/// Truncated photon-number pmf p(0..n_max()).
class PhotonDistribution {
public:
    PhotonDistribution() = default;
    /// Throws InvalidArgument on negative or non-finite entries.
    explicit PhotonDistribution(std::vector<double> probabilities);

    int n_max() const { return static_cast<int>(p_.size()) - 1; }
    const std::vector<double>& probabilities() const { return p_; }
    double operator[](int n) const { return p_[n]; }

    double total() const;
    double mean() const;
    double second_moment() const;
    double variance() const;

private:
    std::vector<double> p_;
};

inline constexpr double kTailTolerance = 1e-10;

/// Geometric pmf n̄ⁿ/(n̄+1)ⁿ⁺¹ for n = 0..n_max. Throws
/// TruncationInsufficient when the mass beyond n_max exceeds 1e-10.
PhotonDistribution thermal_pmf(double nbar, int n_max);

/// p(n) = Σ_m pH(n−m)·pV(m), n = 0..pH.n_max()+pV.n_max().
PhotonDistribution convolve(const PhotonDistribution& pH, const PhotonDistribution& pV);

/// 1 + (⟨Δn²⟩ − ⟨n⟩)/⟨n⟩². Throws ZeroMeanDistribution if ⟨n⟩ = 0.
double g2_from_distribution(const PhotonDistribution& p);

struct DetectorPlacement {
    double L = 1.0;          // grating length
    double lambda = 1e-3;    // wavelength, same units as L
    double z = 0.0;          // distance from the grating
    double X = 0.0;          // transverse detector position
};

struct FresnelGridSpec {
    int source_samples = 8192;
    double nyquist_safety = 4.0;
};

struct DetectorPoint {
    double X = 0.0;
    double z = 0.0;
    double mean_h = 0.0;
    double mean_v = 0.0;
};

/// Mean photon numbers of the H and V fields at (X, z). The grating turns a
/// uniform field into amplitudes cos(πx/L) and sin(πx/L); for z > 0 both are
/// Fresnel-propagated, at z = 0 the in-plane intensities are used. Scaled so
/// that mean_h + mean_v integrated over the transverse plane equals
/// total_mean_photons.
DetectorPoint detector_means(double total_mean_photons, const DetectorPlacement& placement,
                             const FresnelGridSpec& grid = {});

struct CombinedStatistics {
    PhotonDistribution distribution;
    double g2 = 0.0;
};

/// Thermal pmf per mode, convolved, and its g²(τ=0).
CombinedStatistics combined_statistics(const DetectorPoint& point, int n_max = 64);

}  // namespace qvcz
