#include "qvcz/core.hpp"

#include <cmath>

namespace qvcz {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidGeometry: return "invalid-geometry";
        case ErrorCode::OutOfAperture: return "out-of-aperture";
        case ErrorCode::ExchangeUnsupported: return "exchange-unsupported";
        case ErrorCode::NonFiniteIntegrand: return "non-finite-integrand";
        case ErrorCode::ZNonpositive: return "z-nonpositive";
        case ErrorCode::UndersampledPhase: return "undersampled-phase";
        case ErrorCode::DegenerateSource: return "degenerate-source";
        case ErrorCode::NoLocalMax: return "no-local-max";
        case ErrorCode::TruncationInsufficient: return "truncation-insufficient";
        case ErrorCode::ZeroMeanDistribution: return "zero-mean-distribution";
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::ConfigError: return "config-error";
        case ErrorCode::ConvergenceFailure: return "convergence-failure";
    }
    return "unknown";
}

char to_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

ElementIndex ElementIndex::from_row_col(int row, int col) {
    if (row < 0 || row > 3 || col < 0 || col > 3) {
        throw Error(ErrorCode::InvalidArgument, "matrix position out of range");
    }
    auto p = [](int bit) { return static_cast<Polarization>(bit); };
    return {p(row >> 1), p(col >> 1), p(row & 1), p(col & 1)};
}

ElementIndex ElementIndex::parse(std::string_view text) {
    if (text.size() != 4) {
        throw Error(ErrorCode::InvalidArgument, "element must be four letters from {H,V}: '" + std::string(text) + "'");
    }
    std::array<Polarization, 4> p{};
    for (size_t i = 0; i < 4; ++i) {
        char c = text[i];
        if (c == 'H' || c == 'h') {
            p[i] = Polarization::H;
        } else if (c == 'V' || c == 'v') {
            p[i] = Polarization::V;
        } else {
            throw Error(ErrorCode::InvalidArgument, "element must be four letters from {H,V}: '" + std::string(text) + "'");
        }
    }
    return {p[0], p[1], p[2], p[3]};
}

std::string ElementIndex::str() const {
    return {to_char(j), to_char(k), to_char(l), to_char(m)};
}

const std::array<ElementIndex, 16>& all_elements() {
    static const auto elements = [] {
        std::array<ElementIndex, 16> out{};
        for (int n = 0; n < 16; ++n) {
            out[n] = ElementIndex::from_ordinal(n);
        }
        return out;
    }();
    return elements;
}

ComplexMatrix2 ComplexMatrix2::adjoint() const {
    return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}};
}

bool ComplexMatrix2::approx_equal(const ComplexMatrix2& other, double tol) const {
    for (size_t i = 0; i < 4; ++i) {
        if (std::abs(a[i].real() - other.a[i].real()) > tol || std::abs(a[i].imag() - other.a[i].imag()) > tol) {
            return false;
        }
    }
    return true;
}

ComplexMatrix2 operator*(const ComplexMatrix2& x, const ComplexMatrix2& y) {
    ComplexMatrix2 r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
        }
    }
    return r;
}

ComplexMatrix2 operator*(Complex s, const ComplexMatrix2& x) {
    return {{s * x.a[0], s * x.a[1], s * x.a[2], s * x.a[3]}};
}

ComplexMatrix2 operator+(const ComplexMatrix2& x, const ComplexMatrix2& y) {
    return {{x.a[0] + y.a[0], x.a[1] + y.a[1], x.a[2] + y.a[2], x.a[3] + y.a[3]}};
}

ComplexMatrix2 operator-(const ComplexMatrix2& x, const ComplexMatrix2& y) {
    return {{x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2], x.a[3] - y.a[3]}};
}

bool G2Matrix::approx_equal(const G2Matrix& other, double tol) const {
    for (size_t i = 0; i < entries_.size(); ++i) {
        const Complex d = entries_[i] - other.entries_[i];
        if (std::abs(d.real()) > tol || std::abs(d.imag()) > tol) {
            return false;
        }
    }
    return true;
}

double G2Matrix::max_abs_diff(const G2Matrix& other) const {
    double worst = 0.0;
    for (size_t i = 0; i < entries_.size(); ++i) {
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    }
    return worst;
}

double nu_of(const Geometry& g) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(g.L) || !positive(g.lambda) || !positive(g.z) || !std::isfinite(g.deltaX)) {
        throw Error(ErrorCode::InvalidGeometry, "L, lambda and z must be positive and finite");
    }
    return g.L * g.deltaX / (g.lambda * g.z);
}

double sinc(double nu) {
    const double x = kPi * nu;
    if (std::abs(x) < 1e-6) {
        return 1.0 - x * x / 6.0;
    }
    // sin(nπ) is not exactly zero in floating point.
    if (nu == std::nearbyint(nu)) {
        return 0.0;
    }
    return std::sin(x) / x;
}

}  // namespace qvcz
