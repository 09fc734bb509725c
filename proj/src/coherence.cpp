#include "qvcz/coherence.hpp"

#include <cmath>

namespace qvcz {

namespace {

Complex phase(double nu, double u) { return std::polar(1.0, kExchangePhaseSign * 2.0 * kPi * nu * u); }

}  // namespace

Complex direct_term(const SourceModel& source, ElementIndex element, const QuadratureSpec& spec) {
    const int j = index_of(element.j), k = index_of(element.k);
    const int l = index_of(element.l), m = index_of(element.m);
    const ComplexMatrix2 rho1 = source.mode_matrix(1);
    const ComplexMatrix2 rho2 = source.mode_matrix(2);
    const Complex first = integrate1d([&](double u) { return detail::kernel_at(rho1, u, u)(j, k); }, spec);
    const Complex second = integrate1d([&](double v) { return detail::kernel_at(rho2, v, v)(l, m); }, spec);
    return first * second;
}

Complex exchange_term(const SourceModel& source, ElementIndex element, double nu, const QuadratureSpec& spec) {
    if (!source.has_exchange_term()) {
        throw Error(ErrorCode::ExchangeUnsupported, "classical source has no exchange term");
    }
    return integrate2d(
        [&](double u, double v) {
            return element_integrand(source, element, CorrelationTerm::Exchange, GratingCoordinate(u),
                                     GratingCoordinate(v)) *
                   phase(nu, u - v);
        },
        spec);
}

double normalization(const SourceModel& source, const QuadratureSpec& spec) {
    const double n = direct_term(source, ElementIndex{}, spec).real();
    if (!(n > 0.0)) {
        throw Error(ErrorCode::DegenerateSource, "direct HHHH term vanishes; cannot normalize");
    }
    return n;
}

CoherenceResult coherence_result(const SourceModel& source, ElementIndex element, double nu, const QuadratureSpec& spec) {
    CoherenceResult r;
    r.element = element;
    r.nu = nu;
    r.direct = direct_term(source, element, spec);
    r.exchange = source.has_exchange_term() ? exchange_term(source, element, nu, spec) : Complex(0.0);
    r.normalized = (r.direct + r.exchange) / normalization(source, spec);
    return r;
}

Complex g2_numeric(const SourceModel& source, ElementIndex element, double nu, const QuadratureSpec& spec) {
    return coherence_result(source, element, nu, spec).normalized;
}

G2Matrix g2_matrix_numeric(const SourceModel& source, double nu, const QuadratureSpec& spec) {
    const double n = normalization(source, spec);
    G2Matrix g(nu);
    for (const ElementIndex e : all_elements()) {
        Complex value = direct_term(source, e, spec);
        if (source.has_exchange_term()) {
            value += exchange_term(source, e, nu, spec);
        }
        g[e] = value / n;
    }
    return g;
}

CoherenceEngine::CoherenceEngine(const SourceModel& source, const QuadratureSpec& spec)
    : source_(source), spec_(spec) {
    spec_.validate();
    const auto& rule = gauss_legendre(spec_.nodes_per_axis);
    n_ = rule.size();
    nodes_ = rule.nodes;
    weights_ = rule.weights;

    const ComplexMatrix2 rho1 = source_.mode_matrix(1);
    const ComplexMatrix2 rho2 = source_.mode_matrix(2);
    kernel1_.resize(static_cast<size_t>(n_) * n_ * 4);
    kernel2_.resize(kernel1_.size());
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const ComplexMatrix2 a1 = detail::kernel_at(rho1, nodes_[i], nodes_[j]);
            const ComplexMatrix2 a2 = detail::kernel_at(rho2, nodes_[i], nodes_[j]);
            for (int c = 0; c < 4; ++c) {
                kernel1_[(static_cast<size_t>(i) * n_ + j) * 4 + c] = a1.a[c];
                kernel2_[(static_cast<size_t>(i) * n_ + j) * 4 + c] = a2.a[c];
            }
        }
    }

    std::array<Complex, 4> diag1{}, diag2{};
    for (int i = 0; i < n_; ++i) {
        const size_t at = (static_cast<size_t>(i) * n_ + i) * 4;
        for (int c = 0; c < 4; ++c) {
            diag1[c] += weights_[i] * kernel1_[at + c];
            diag2[c] += weights_[i] * kernel2_[at + c];
        }
    }
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) {
            direct_[4 * p + q] = diag1[p] * diag2[q];
        }
    }
    normalization_ = direct_[0].real();
    if (!(normalization_ > 0.0)) {
        throw Error(ErrorCode::DegenerateSource, "direct HHHH term vanishes; cannot normalize");
    }
}

void CoherenceEngine::exchange_all(double nu, std::array<Complex, 16>& out) const {
    out.fill(0.0);
    if (!source_.has_exchange_term()) {
        return;
    }
    std::vector<Complex> weighted_phase(n_);
    for (int i = 0; i < n_; ++i) {
        weighted_phase[i] = weights_[i] * phase(nu, nodes_[i]);
    }
    for (int i = 0; i < n_; ++i) {
        std::array<Complex, 16> row{};
        for (int j = 0; j < n_; ++j) {
            const Complex f = std::conj(weighted_phase[j]);
            const Complex* a1 = &kernel1_[(static_cast<size_t>(i) * n_ + j) * 4];
            const Complex* a2 = &kernel2_[(static_cast<size_t>(j) * n_ + i) * 4];
            for (int p = 0; p < 4; ++p) {
                const Complex fp = f * a1[p];
                for (int q = 0; q < 4; ++q) {
                    row[4 * p + q] += fp * a2[q];
                }
            }
        }
        for (int e = 0; e < 16; ++e) {
            out[e] += weighted_phase[i] * row[e];
        }
    }
}

Complex CoherenceEngine::exchange(ElementIndex e, double nu) const {
    if (!source_.has_exchange_term()) {
        throw Error(ErrorCode::ExchangeUnsupported, "classical source has no exchange term");
    }
    std::array<Complex, 16> all;
    exchange_all(nu, all);
    return all[e.ordinal()];
}

G2Matrix CoherenceEngine::matrix(double nu) const {
    std::array<Complex, 16> ex;
    exchange_all(nu, ex);
    G2Matrix g(nu);
    for (const ElementIndex e : all_elements()) {
        g[e] = (direct_[e.ordinal()] + ex[e.ordinal()]) / normalization_;
    }
    return g;
}

std::vector<G2Matrix> CoherenceEngine::sweep_serial(std::span<const double> nus) const {
    std::vector<G2Matrix> out(nus.size());
    for (size_t i = 0; i < nus.size(); ++i) {
        out[i] = matrix(nus[i]);
    }
    return out;
}

std::vector<G2Matrix> CoherenceEngine::sweep_parallel(std::span<const double> nus) const {
    std::vector<G2Matrix> out(nus.size());
    const long count = static_cast<long>(nus.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
        out[i] = matrix(nus[i]);
    }
    return out;
}

double convergence_delta(const CoherenceEngine& coarse, const CoherenceEngine& fine, double nu) {
    return coarse.matrix(nu).max_abs_diff(fine.matrix(nu));
}

}  // namespace qvcz
