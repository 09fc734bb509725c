#pragma once

#include <string_view>

#include "qvcz/core.hpp"

namespace qvcz {

enum class SourceKind {
    UnpolarizedTwoMode,
    HorizontalIndistinguishable,
    ClassicalIncoherent,
};

const char* to_string(SourceKind kind);
SourceKind parse_source_kind(std::string_view text);

/// Incoherent source feeding the grating. The per-mode polarization matrix
/// multiplies a delta-correlated spatial profile; quantum sources carry both
/// the direct and the exchange delta pairing, the classical one only direct.
struct SourceModel {
    SourceKind kind = SourceKind::UnpolarizedTwoMode;
    double intensity_scale = 1.0;

    static SourceModel unpolarized() { return {SourceKind::UnpolarizedTwoMode, 1.0}; }
    static SourceModel horizontal() { return {SourceKind::HorizontalIndistinguishable, 1.0}; }
    static SourceModel classical() { return {SourceKind::ClassicalIncoherent, 1.0}; }

    bool has_exchange_term() const { return kind != SourceKind::ClassicalIncoherent; }

    /// Mode matrix including intensity_scale. mode is 1 or 2.
    ComplexMatrix2 mode_matrix(int mode) const;
};

/// Dimensionless grating position u = x/L.
class GratingCoordinate {
public:
    /// Throws OutOfAperture when |u| > 1/2.
    explicit GratingCoordinate(double u);

    double value() const { return u_; }

private:
    double u_;
};

enum class CorrelationTerm { Direct, Exchange };

/// Jones projector of the grating at u, transmission axis at angle πu.
ComplexMatrix2 jones_projector(GratingCoordinate u);

/// A(u,v) = P(u)·ρ_mode·P(v).
ComplexMatrix2 kernel(const SourceModel& source, int mode, GratingCoordinate u, GratingCoordinate v);

/// Integrand of one delta pairing, without the propagation phase:
///   Direct   -> A1(u,u)[j,k] · A2(v,v)[l,m]
///   Exchange -> A1(u,v)[j,k] · A2(v,u)[l,m]
/// Throws ExchangeUnsupported for the classical source.
Complex element_integrand(const SourceModel& source, ElementIndex element, CorrelationTerm term,
                          GratingCoordinate u, GratingCoordinate v);

namespace detail {

// Unchecked variants for quadrature inner loops; callers guarantee |u|,|v| <= 1/2.
ComplexMatrix2 projector_at(double u);
ComplexMatrix2 kernel_at(const ComplexMatrix2& rho, double u, double v);

}  // namespace detail

}  // namespace qvcz
