#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qvcz/core.hpp"
#include "qvcz/grating.hpp"

namespace qvcz {

/// Analytic g²_jklm(ν) for the unpolarized two-mode source.
///
/// The seven published curves (HHHH, HHVV, HHVH, HVHV, VHHV, HVVV, VVVV) are
/// evaluated as printed. The remaining nine follow from
///   g_kjml(ν) = conj(g_jklm(ν))   (Hermitian partner)
///   g_lmjk(ν) = g_jklm(−ν)        (detectors swapped)
/// which is what the quadrature produces for the ν-odd imaginary elements.
Complex g2_closed_unpolarized(ElementIndex element, double nu);

/// The HHHH curve in its main-text arrangement; algebraically identical to
/// the HHHH branch of g2_closed_unpolarized.
double g2_hhhh_main_text(double nu);

/// Analytic g² for the horizontally polarized indistinguishable source.
///
/// The published expressions lose additive constants inside several sinc
/// arguments and write their variable as ν/2. This catalog fills the gaps
/// with 1 and evaluates at t = ν (the ν of this library), and carries the
/// signs the quadrature requires for HHVV, HVHV and the HHVH family.
Complex g2_closed_horizontal(ElementIndex element, double nu);

/// Same expressions with the signs as printed (gaps filled, t = ν). Used only
/// to report how far the printed forms sit from the quadrature.
Complex g2_closed_horizontal_printed(ElementIndex element, double nu);

/// True where g2_closed_horizontal deviates from the printed signs.
bool horizontal_sign_corrected(ElementIndex element);

/// Classical control: identity matrix in Kronecker layout, i.e. 1 when j = k
/// and l = m, otherwise 0, for every ν.
double g2_closed_classical(ElementIndex element, double nu);

/// Dispatch on source kind.
Complex g2_closed(SourceKind kind, ElementIndex element, double nu);

/// Classical baseline used for decorrelation checks (same pattern as the
/// classical closed form).
double classical_baseline(ElementIndex element);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

enum class Extremum { Maximum, Minimum };

struct ExtremumLocation {
    double nu = 0.0;
    Complex value;   // g² at nu
    double modulus = 0.0;
};

/// Interior local extremum of |curve(ν)| on the interval. A dense scan
/// brackets the most pronounced interior extremum, then golden-section search
/// refines it to `tolerance` in ν. Throws NoLocalMax if |curve| has no
/// interior extremum of the requested kind (monotone or constant curves).
ExtremumLocation locate_extremum(const std::function<Complex(double)>& curve, Interval interval, Extremum kind,
                                 double tolerance = 1e-4);

/// Local maximum of |g²(ν)| for the given source and element.
ExtremumLocation find_resurrection(SourceKind kind, ElementIndex element, Interval interval, double tolerance = 1e-4);

}  // namespace qvcz
