#include "qvcz/grating.hpp"

#include <cmath>
#include <string>

namespace qvcz {

const char* to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::UnpolarizedTwoMode: return "unpolarized";
        case SourceKind::HorizontalIndistinguishable: return "horizontal";
        case SourceKind::ClassicalIncoherent: return "classical";
    }
    return "unknown";
}

SourceKind parse_source_kind(std::string_view text) {
    if (text == "unpolarized") return SourceKind::UnpolarizedTwoMode;
    if (text == "horizontal") return SourceKind::HorizontalIndistinguishable;
    if (text == "classical") return SourceKind::ClassicalIncoherent;
    throw Error(ErrorCode::InvalidArgument,
                "unknown source '" + std::string(text) + "' (expected unpolarized, horizontal or classical)");
}

ComplexMatrix2 SourceModel::mode_matrix(int mode) const {
    if (mode != 1 && mode != 2) {
        throw Error(ErrorCode::InvalidArgument, "mode must be 1 or 2");
    }
    ComplexMatrix2 rho;
    switch (kind) {
        case SourceKind::UnpolarizedTwoMode:
            rho = {{0.5, 0.0, 0.0, 0.5}};
            break;
        case SourceKind::HorizontalIndistinguishable:
            rho = {{1.0, 0.0, 0.0, 0.0}};
            break;
        case SourceKind::ClassicalIncoherent:
            rho = ComplexMatrix2::identity();
            break;
    }
    return Complex(intensity_scale) * rho;
}

GratingCoordinate::GratingCoordinate(double u) : u_(u) {
    if (!(std::abs(u) <= 0.5)) {
        throw Error(ErrorCode::OutOfAperture, "grating coordinate outside [-1/2, 1/2]: " + std::to_string(u));
    }
}

namespace detail {

ComplexMatrix2 projector_at(double u) {
    const double c = std::cos(kPi * u);
    const double s = std::sin(kPi * u);
    return {{c * c, c * s, c * s, s * s}};
}

ComplexMatrix2 kernel_at(const ComplexMatrix2& rho, double u, double v) {
    return projector_at(u) * rho * projector_at(v);
}

}  // namespace detail

ComplexMatrix2 jones_projector(GratingCoordinate u) { return detail::projector_at(u.value()); }

ComplexMatrix2 kernel(const SourceModel& source, int mode, GratingCoordinate u, GratingCoordinate v) {
    return detail::kernel_at(source.mode_matrix(mode), u.value(), v.value());
}

Complex element_integrand(const SourceModel& source, ElementIndex element, CorrelationTerm term,
                          GratingCoordinate u, GratingCoordinate v) {
    const int j = index_of(element.j), k = index_of(element.k);
    const int l = index_of(element.l), m = index_of(element.m);
    if (term == CorrelationTerm::Direct) {
        return kernel(source, 1, u, u)(j, k) * kernel(source, 2, v, v)(l, m);
    }
    if (!source.has_exchange_term()) {
        throw Error(ErrorCode::ExchangeUnsupported, "classical source has no exchange term");
    }
    return kernel(source, 1, u, v)(j, k) * kernel(source, 2, v, u)(l, m);
}

}  // namespace qvcz
