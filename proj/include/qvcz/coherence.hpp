#pragma once

#include <array>
#include <span>
#include <vector>

#include "qvcz/core.hpp"
#include "qvcz/grating.hpp"
#include "qvcz/quadrature.hpp"

namespace qvcz {

/// Sign σ of the exchange phase e^{iσ2πν(u−v)}. With σ = +1 the HHVH element
/// carries the −i prefactor of the published closed form.
inline constexpr int kExchangePhaseSign = +1;

struct CoherenceResult {
    ElementIndex element;
    double nu = 0.0;
    Complex direct;
    Complex exchange;
    Complex normalized;
};

// Reference path: each call evaluates its integrals from scratch through
// integrate1d / integrate2d over grating::element_integrand. Kept for testing
// and as the serial baseline of the benchmark.

/// ∫A1(u,u)[j,k] du · ∫A2(v,v)[l,m] dv. Independent of ν.
Complex direct_term(const SourceModel& source, ElementIndex element, const QuadratureSpec& spec);

/// ∫∫ A1(u,v)[j,k] · A2(v,u)[l,m] · e^{iσ2πν(u−v)} du dv.
/// Throws ExchangeUnsupported for the classical source.
Complex exchange_term(const SourceModel& source, ElementIndex element, double nu, const QuadratureSpec& spec);

/// Global normalization N = direct_term(HHHH). Throws DegenerateSource if N = 0.
double normalization(const SourceModel& source, const QuadratureSpec& spec);

CoherenceResult coherence_result(const SourceModel& source, ElementIndex element, double nu, const QuadratureSpec& spec);

Complex g2_numeric(const SourceModel& source, ElementIndex element, double nu, const QuadratureSpec& spec);

G2Matrix g2_matrix_numeric(const SourceModel& source, double nu, const QuadratureSpec& spec);

/// Table-driven evaluator. Kernel matrices A(u_i,u_j) on the tensor grid and
/// the 16 direct terms are computed once; each ν then costs one weighted
/// double sum per element with a separable phase.
class CoherenceEngine {
public:
    CoherenceEngine(const SourceModel& source, const QuadratureSpec& spec);

    const SourceModel& source() const { return source_; }
    const QuadratureSpec& spec() const { return spec_; }
    double normalization() const { return normalization_; }
    Complex direct(ElementIndex e) const { return direct_[e.ordinal()]; }

    Complex exchange(ElementIndex e, double nu) const;
    G2Matrix matrix(double nu) const;

    std::vector<G2Matrix> sweep_serial(std::span<const double> nus) const;
    /// OpenMP over ν points. Each point is computed exactly as in
    /// sweep_serial, so results are bitwise identical.
    std::vector<G2Matrix> sweep_parallel(std::span<const double> nus) const;

private:
    void exchange_all(double nu, std::array<Complex, 16>& out) const;

    SourceModel source_;
    QuadratureSpec spec_;
    int n_ = 0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    // kernel_[(i*n + j)*4 + (2a+b)] = A(u_i, u_j)[a,b]; modes are identical for shipped sources
    // but both are stored so asymmetric sources need no change here.
    std::vector<Complex> kernel1_;
    std::vector<Complex> kernel2_;
    std::array<Complex, 16> direct_{};
    double normalization_ = 0.0;
};

/// Largest |g(N) - g(2N)| over all 16 elements at ν.
double convergence_delta(const CoherenceEngine& coarse, const CoherenceEngine& fine, double nu);

}  // namespace qvcz
