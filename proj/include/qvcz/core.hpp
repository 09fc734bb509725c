#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qvcz {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorCode {
    InvalidGeometry,
    OutOfAperture,
    ExchangeUnsupported,
    NonFiniteIntegrand,
    ZNonpositive,
    UndersampledPhase,
    DegenerateSource,
    NoLocalMax,
    TruncationInsufficient,
    ZeroMeanDistribution,
    InvalidArgument,
    ConfigError,
    ConvergenceFailure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

enum class Polarization : std::uint8_t { H = 0, V = 1 };

inline constexpr int index_of(Polarization p) { return static_cast<int>(p); }
char to_char(Polarization p);

/// Post-selected polarization 4-tuple jklm. The label follows the BCP
/// convention: element jklm is the coefficient of J_jk(X1,X2) ⊗ J_lm(X3,X4),
/// so in the Kronecker-ordered 4x4 matrix it sits at row (j,l), column (k,m).
struct ElementIndex {
    Polarization j = Polarization::H;
    Polarization k = Polarization::H;
    Polarization l = Polarization::H;
    Polarization m = Polarization::H;

    /// 0..15, bits j k l m (H=0). Defines the basis order used for output.
    constexpr int ordinal() const {
        return (index_of(j) << 3) | (index_of(k) << 2) | (index_of(l) << 1) | index_of(m);
    }
    constexpr int row() const { return 2 * index_of(j) + index_of(l); }
    constexpr int col() const { return 2 * index_of(k) + index_of(m); }

    static constexpr ElementIndex from_ordinal(int n) {
        auto bit = [n](int b) { return static_cast<Polarization>((n >> b) & 1); };
        return {bit(3), bit(2), bit(1), bit(0)};
    }
    static ElementIndex from_row_col(int row, int col);
    static ElementIndex parse(std::string_view text);

    std::string str() const;

    /// Swaps the detector roles: jklm -> lmjk.
    constexpr ElementIndex detector_swapped() const { return {l, m, j, k}; }
    /// Hermitian partner: jklm -> kjml.
    constexpr ElementIndex adjoint() const { return {k, j, m, l}; }
    constexpr ElementIndex relabeled() const {
        auto f = [](Polarization p) { return p == Polarization::H ? Polarization::V : Polarization::H; };
        return {f(j), f(k), f(l), f(m)};
    }

    friend constexpr bool operator==(const ElementIndex&, const ElementIndex&) = default;
};

/// All 16 elements in ordinal order HHHH, HHHV, HHVH, ..., VVVV.
const std::array<ElementIndex, 16>& all_elements();

struct ComplexMatrix2 {
    std::array<Complex, 4> a{};

    Complex& operator()(int r, int c) { return a[2 * r + c]; }
    const Complex& operator()(int r, int c) const { return a[2 * r + c]; }

    static ComplexMatrix2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

    ComplexMatrix2 adjoint() const;
    Complex trace() const { return a[0] + a[3]; }
    bool approx_equal(const ComplexMatrix2& other, double tol = 1e-9) const;

    friend ComplexMatrix2 operator*(const ComplexMatrix2& x, const ComplexMatrix2& y);
    friend ComplexMatrix2 operator*(Complex s, const ComplexMatrix2& x);
    friend ComplexMatrix2 operator+(const ComplexMatrix2& x, const ComplexMatrix2& y);
    friend ComplexMatrix2 operator-(const ComplexMatrix2& x, const ComplexMatrix2& y);
};

/// Normalized post-selected coherences g²_jklm at one detector separation nu.
class G2Matrix {
public:
    G2Matrix() = default;
    explicit G2Matrix(double nu) : nu_(nu) {}

    double nu() const { return nu_; }

    Complex& operator[](ElementIndex e) { return entries_[e.ordinal()]; }
    const Complex& operator[](ElementIndex e) const { return entries_[e.ordinal()]; }
    const Complex& at(int row, int col) const { return (*this)[ElementIndex::from_row_col(row, col)]; }

    bool approx_equal(const G2Matrix& other, double tol = 1e-9) const;
    double max_abs_diff(const G2Matrix& other) const;

private:
    double nu_ = 0.0;
    std::array<Complex, 16> entries_{};
};

struct Geometry {
    double L = 1.0;
    double lambda = 1.0;
    double z = 1.0;
    double deltaX = 0.0;
};

/// L·ΔX/(λz). Throws InvalidGeometry unless L, λ, z are positive and finite.
double nu_of(const Geometry& g);

/// sin(πν)/(πν), with sinc(0) = 1.
double sinc(double nu);

}  // namespace qvcz
