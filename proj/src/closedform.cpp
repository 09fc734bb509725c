#include "qvcz/closedform.hpp"

#include <cmath>
#include <vector>

namespace qvcz {

namespace {

using P = Polarization;
constexpr Complex kI{0.0, 1.0};

// Short names for the sinc family that appears in every expression.
struct Sincs {
    double s0, p1, p2, m1, m2;  // sinc(ν), sinc(ν+1), sinc(ν+2), sinc(1−ν), sinc(2−ν)

    explicit Sincs(double nu)
        : s0(sinc(nu)), p1(sinc(nu + 1.0)), p2(sinc(nu + 2.0)), m1(sinc(1.0 - nu)), m2(sinc(2.0 - nu)) {}
};

double unpol_hhhh(const Sincs& s) {
    return (10 * s.s0 * s.s0 + 2 * (6 * s.p1 + s.p2 + 6 * s.m1 + s.m2) * s.s0 + 6 * s.p1 * s.p1 + s.p2 * s.p2 +
            6 * s.m1 * s.m1 + s.m2 * s.m2 + 4 * s.p1 * s.p2 + 4 * (s.p1 + s.m2) * s.m1 + 16) /
           16;
}

double unpol_hhvv(const Sincs& s) {
    const double d = s.m1 - s.p1;
    return (2 * s.s0 * s.s0 - 2 * (s.p2 + s.m2) * s.s0 + 2 * d * d + s.p2 * s.p2 + s.m2 * s.m2 + 16) / 16;
}

Complex unpol_hhvh(const Sincs& s) {
    // sinc(ν−2) = sinc(2−ν)
    const double bracket = s.m2 * s.m2 + 2 * s.m1 * s.m2 - s.p2 * s.p2 - 2 * s.p2 * s.p1 +
                           2 * (s.m1 - s.p1) * (s.s0 + s.p1 + s.m1);
    return -kI / 16.0 * bracket;
}

double unpol_hvhv(const Sincs& s) {
    const double d = s.m1 - s.p1;
    return (2 * s.s0 * s.s0 - 2 * (s.p2 + s.m2) * s.s0 + 2 * d * d + s.p2 * s.p2 + s.m2 * s.m2) / 16;
}

double unpol_vhhv(const Sincs& s) {
    const double d = s.m1 - s.p1;
    return (6 * s.s0 * s.s0 - 2 * (s.p2 + s.m2) * s.s0 + 2 * d * d - s.p2 * s.p2 - s.m2 * s.m2) / 16;
}

Complex unpol_hvvv(const Sincs& s) {
    const double bracket = 2 * s.p1 * s.p1 - 2 * s.s0 * s.p1 - 2 * s.p2 * s.p1 + s.p2 * s.p2 - 2 * s.m1 * s.m1 -
                           s.m2 * s.m2 + 2 * s.s0 * s.m1 + 2 * s.m1 * s.m2;
    return kI / 16.0 * bracket;
}

double unpol_vvvv(const Sincs& s) {
    return (10 * s.s0 * s.s0 + 2 * (-6 * s.p1 + s.p2 - 6 * s.m1 + s.m2) * s.s0 + 6 * s.p1 * s.p1 + s.p2 * s.p2 +
            6 * s.m1 * s.m1 + s.m2 * s.m2 - 4 * s.p1 * s.p2 + 4 * (s.p1 - s.m2) * s.m1 + 16) /
           16;
}

// Horizontal source building blocks (t = ν).
struct HorizontalTerms {
    double bright;  // 6 s(t) + 4 s(t+1) + s(t+2) + 4 s(1−t) + s(2−t)
    double odd;     // −2 s(t+1) − s(t+2) + 2 s(1−t) + s(2−t)
    double even;    // 2 s(t) − s(t+2) − s(2−t)

    explicit HorizontalTerms(double t) {
        const Sincs s(t);
        bright = 6 * s.s0 + 4 * s.p1 + s.p2 + 4 * s.m1 + s.m2;
        odd = -2 * s.p1 - s.p2 + 2 * s.m1 + s.m2;
        even = 2 * s.s0 - s.p2 - s.m2;
    }
};

bool is(ElementIndex e, P j, P k, P l, P m) { return e == ElementIndex{j, k, l, m}; }

// The seven primary elements from which the rest follow by conjugation and
// detector swap. Returns nullopt for derived elements.
template <typename Primary>
Complex expand_catalog(ElementIndex e, double nu, Primary&& primary) {
    if (auto v = primary(e, nu)) return *v;
    if (auto v = primary(e.adjoint(), nu)) return std::conj(*v);
    if (auto v = primary(e.detector_swapped(), -nu)) return *v;
    if (auto v = primary(e.detector_swapped().adjoint(), -nu)) return std::conj(*v);
    throw Error(ErrorCode::InvalidArgument, "no closed form for element " + e.str());
}

std::optional<Complex> unpolarized_primary(ElementIndex e, double nu) {
    const Sincs s(nu);
    if (is(e, P::H, P::H, P::H, P::H)) return unpol_hhhh(s);
    if (is(e, P::H, P::H, P::V, P::V) || is(e, P::V, P::V, P::H, P::H)) return unpol_hhvv(s);
    if (is(e, P::H, P::H, P::V, P::H)) return unpol_hhvh(s);
    if (is(e, P::H, P::V, P::H, P::V) || is(e, P::V, P::H, P::V, P::H)) return unpol_hvhv(s);
    if (is(e, P::V, P::H, P::H, P::V) || is(e, P::H, P::V, P::V, P::H)) return unpol_vhhv(s);
    if (is(e, P::H, P::V, P::V, P::V)) return unpol_hvvv(s);
    if (is(e, P::V, P::V, P::V, P::V)) return unpol_vvvv(s);
    return std::nullopt;
}

std::optional<Complex> horizontal_primary(ElementIndex e, double nu, bool printed_signs) {
    const HorizontalTerms h(nu);
    const double sign = printed_signs ? -1.0 : 1.0;
    if (is(e, P::H, P::H, P::H, P::H)) return h.bright * h.bright / 36 + 1;
    if (is(e, P::H, P::H, P::V, P::V) || is(e, P::V, P::V, P::H, P::H)) return 1.0 / 3 + sign * h.odd * h.odd / 36;
    if (is(e, P::H, P::H, P::V, P::H)) return -sign * kI * h.odd * h.bright / 36.0;
    if (is(e, P::H, P::V, P::H, P::V) || is(e, P::V, P::H, P::V, P::H)) return sign * h.odd * h.odd / 36;
    if (is(e, P::V, P::H, P::H, P::V) || is(e, P::H, P::V, P::V, P::H)) return h.even * h.bright / 36;
    if (is(e, P::H, P::V, P::V, P::V)) return kI * h.even * h.odd / 36.0;
    if (is(e, P::V, P::V, P::V, P::V)) return (h.even * h.even + 4) / 36;
    return std::nullopt;
}

}  // namespace

Complex g2_closed_unpolarized(ElementIndex element, double nu) {
    return expand_catalog(element, nu, unpolarized_primary);
}

double g2_hhhh_main_text(double nu) {
    const Sincs s(nu);
    return 1 + s.m2 * s.m2 / 16 + 5.0 / 8 * s.s0 * s.s0 + s.p2 * s.p2 / 16 + s.m2 * s.m1 / 4 + 3.0 / 8 * s.m1 * s.m1 +
           s.p1 * (s.p2 + s.m1) / 4 + 3.0 / 8 * s.p1 * s.p1 + s.s0 * (s.m2 + s.p2 + 6 * s.m1 + 6 * s.p1) / 8;
}

Complex g2_closed_horizontal(ElementIndex element, double nu) {
    return expand_catalog(element, nu, [](ElementIndex e, double t) { return horizontal_primary(e, t, false); });
}

Complex g2_closed_horizontal_printed(ElementIndex element, double nu) {
    return expand_catalog(element, nu, [](ElementIndex e, double t) { return horizontal_primary(e, t, true); });
}

bool horizontal_sign_corrected(ElementIndex element) {
    // HHVV and HVHV families, and HHVH with its conjugate and swapped partners.
    const std::array<ElementIndex, 6> corrected = {{
        {P::H, P::H, P::V, P::V}, {P::V, P::V, P::H, P::H},
        {P::H, P::V, P::H, P::V}, {P::V, P::H, P::V, P::H},
        {P::H, P::H, P::V, P::H}, {P::H, P::H, P::H, P::V},
    }};
    for (const ElementIndex c : corrected) {
        if (c == element) return true;
    }
    return element == ElementIndex{P::V, P::H, P::H, P::H} || element == ElementIndex{P::H, P::V, P::H, P::H};
}

double g2_closed_classical(ElementIndex element, double /*nu*/) { return classical_baseline(element); }

double classical_baseline(ElementIndex element) {
    return (element.j == element.k && element.l == element.m) ? 1.0 : 0.0;
}

Complex g2_closed(SourceKind kind, ElementIndex element, double nu) {
    switch (kind) {
        case SourceKind::UnpolarizedTwoMode: return g2_closed_unpolarized(element, nu);
        case SourceKind::HorizontalIndistinguishable: return g2_closed_horizontal(element, nu);
        case SourceKind::ClassicalIncoherent: return g2_closed_classical(element, nu);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown source kind");
}

ExtremumLocation locate_extremum(const std::function<Complex(double)>& curve, Interval interval, Extremum kind,
                                 double tolerance) {
    if (!(interval.hi > interval.lo) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
        throw Error(ErrorCode::InvalidArgument, "search interval must satisfy lo < hi");
    }
    // Maximizing -|g| finds minima with the same code path.
    const double orient = kind == Extremum::Maximum ? 1.0 : -1.0;
    auto score = [&](double nu) { return orient * std::abs(curve(nu)); };

    constexpr int kScan = 2001;
    const double step = (interval.hi - interval.lo) / (kScan - 1);
    std::vector<double> values(kScan);
    for (int i = 0; i < kScan; ++i) {
        values[i] = score(interval.lo + i * step);
    }
    int best = -1;
    for (int i = 1; i + 1 < kScan; ++i) {
        // Strict on the left so flat curves have no extremum.
        const bool peak = values[i] > values[i - 1] && values[i] >= values[i + 1];
        if (peak && (best < 0 || values[i] > values[best])) {
            best = i;
        }
    }
    if (best < 0) {
        throw Error(ErrorCode::NoLocalMax, std::string("no interior local ") +
                                               (kind == Extremum::Maximum ? "maximum" : "minimum") +
                                               " of |g2| on [" + std::to_string(interval.lo) + ", " +
                                               std::to_string(interval.hi) + "]");
    }

    double a = interval.lo + (best - 1) * step;
    double b = interval.lo + (best + 1) * step;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = score(x1), f2 = score(x2);
    while (b - a > tolerance * 1e-2) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = score(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = score(x1);
        }
    }
    ExtremumLocation loc;
    loc.nu = 0.5 * (a + b);
    loc.value = curve(loc.nu);
    loc.modulus = std::abs(loc.value);
    return loc;
}

ExtremumLocation find_resurrection(SourceKind kind, ElementIndex element, Interval interval, double tolerance) {
    return locate_extremum([&](double nu) { return g2_closed(kind, element, nu); }, interval, Extremum::Maximum,
                           tolerance);
}

}  // namespace qvcz
