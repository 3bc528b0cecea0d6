#pragma once

/// @file spectral_core.hpp
/// @brief Periodic-box spectral discretization: grid, vector fields, transforms,
/// differentiation, dealiasing, Leray projection and norms.
///
/// Conventions
///   - Box [0, L)^3 sampled on n^3 points, x_j = j L / n.
///   - Spectral coefficients f_k = n^-3 sum_x f(x) e^{-i k.x}, so that
///     int |f|^2 dx = L^3 sum_k |f_k|^2 and F[d_j f] = i k_j F[f].
///   - Storage index i in [0, n) maps to the signed mode m = i for i < n/2 and
///     m = i - n otherwise; the Nyquist index i = n/2 carries m = -n/2.
///   - The Nyquist wavenumber has no sign partner on the lattice. Operators of
///     odd order in k (first derivatives, divergence, Leray projection) use the
///     symmetric wavenumber, which is zero on the Nyquist index, so that
///     Hermitian symmetry of real fields is preserved exactly.

#include <array>
#include <memory>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nsbound {

using Complex = std::complex<double>;

class SpectralGrid {
public:
    /// Validating factory (n even, n >= 8, box_length > 0).
    static SpectralGrid make(int n, double box_length);

    int n() const { return n_; }
    double box_length() const { return box_length_; }
    double volume() const { return box_length_ * box_length_ * box_length_; }
    double spacing() const { return box_length_ / n_; }
    double dk() const { return dk_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    int signed_mode(int i) const { return i < n_ / 2 ? i : i - n_; }
    bool is_nyquist(int i) const { return i == n_ / 2; }
    double wavenumber(int i) const { return dk_ * signed_mode(i); }
    double symmetric_wavenumber(int i) const { return is_nyquist(i) ? 0.0 : wavenumber(i); }
    double max_axis_wavenumber() const { return dk_ * (n_ / 2); }

    std::size_t flat(int i, int j, int l) const {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + l;
    }
    std::array<int, 3> unflat(std::size_t idx) const {
        const int l = static_cast<int>(idx % n_);
        const int j = static_cast<int>((idx / n_) % n_);
        const int i = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
        return {i, j, l};
    }
    std::array<double, 3> k_vector(std::size_t idx) const;
    std::array<double, 3> symmetric_k_vector(std::size_t idx) const;
    double k_squared(std::size_t idx) const { return (*k2_)[idx]; }
    double k_magnitude(std::size_t idx) const;
    /// Storage index of the mode -k.
    std::size_t mirror(std::size_t idx) const;

    bool operator==(const SpectralGrid& o) const {
        return n_ == o.n_ && box_length_ == o.box_length_;
    }

private:
    SpectralGrid(int n, double box_length);
    int n_;
    double box_length_;
    double dk_;
    std::shared_ptr<const std::vector<double>> k2_;  // |k|^2 per storage index
};

enum class Representation { physical, spectral };

/// Three-component field on a SpectralGrid. Physical samples are stored as
/// complex numbers with zero imaginary part.
class VectorField {
public:
    VectorField(const SpectralGrid& grid, Representation rep);

    const SpectralGrid& grid() const { return grid_; }
    Representation representation() const { return rep_; }
    bool is_spectral() const { return rep_ == Representation::spectral; }

    std::span<Complex> component(int c) { return data_[static_cast<std::size_t>(c)]; }
    std::span<const Complex> component(int c) const { return data_[static_cast<std::size_t>(c)]; }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);

private:
    SpectralGrid grid_;
    Representation rep_;
    std::array<std::vector<Complex>, 3> data_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Forward transform (physical -> spectral). Throws on representation mismatch.
VectorField to_spectral(const VectorField& field);
/// Inverse transform (spectral -> physical); imaginary residue is discarded.
VectorField to_physical(const VectorField& field);

/// Scalar transforms on a single component array of grid.size() entries.
std::vector<Complex> to_spectral(const SpectralGrid& grid, std::span<const Complex> physical);
std::vector<double> to_physical(const SpectralGrid& grid, std::span<const Complex> spectral);

/// Per-mode (I - k k^T / |k|^2) with the symmetric wavenumber; k = 0 untouched.
VectorField leray_project(const VectorField& field);

struct MultiIndex {
    int x = 0;
    int y = 0;
    int z = 0;
    int order() const { return x + y + z; }
};

/// D^beta = d_1^bx d_2^by d_3^bz applied in Fourier space, |beta| <= 3.
VectorField spectral_derivative(const VectorField& field, MultiIndex beta);
std::vector<Complex> spectral_derivative(const SpectralGrid& grid, std::span<const Complex> coef,
                                         MultiIndex beta);

/// Two-thirds rule: zero every mode with some axis index |m| > n/3.
VectorField dealias(const VectorField& field);
bool is_dealiased_mode(const SpectralGrid& grid, std::size_t idx);

/// Spectral divergence i k . f_k (symmetric wavenumber).
std::vector<Complex> divergence(const VectorField& field);
/// max_k |k . f_k| in coefficient units.
double max_divergence(const VectorField& field);

/// Plancherel inner product L^3 sum_k conj(a_k) . b_k of two spectral fields.
Complex inner_product(const VectorField& a, const VectorField& b);

struct NormSuite {
    double l2_sq = 0.0;   ///< int |f|^2
    double h1_sq = 0.0;   ///< int |grad f|^2
    double h2_sq = 0.0;   ///< int |Lap f|^2
    double h3_sq = 0.0;   ///< int |grad Lap f|^2
    double sup = 0.0;     ///< max over collocation points of |f|
    double l4 = 0.0;      ///< (int |f|^4)^{1/4} by collocation quadrature
};

/// L2/H1/H2/H3 via Plancherel, sup and L4 on the collocation grid.
NormSuite norms(const VectorField& field);

/// Grid quadrature (L/n)^3 sum_x |f(x)|^2 of a physical field.
double l2_sq_quadrature(const VectorField& physical);
/// L^3 sum_k |f_k|^2 of a spectral field.
double l2_sq_plancherel(const VectorField& spectral);
/// (int |f|^m)^{1/m} on the collocation grid, m >= 1.
double lm_norm(const VectorField& physical, int m);
/// max over collocation points of the Euclidean magnitude |f(x)|.
double sup_norm(const VectorField& physical);

/// Largest |f_k - conj(f_{-k})| over all modes and components.
double hermitian_defect(const VectorField& spectral);

/// Collocation values of u and of its gradient, grad[3 k + j] = d_j u_k.
struct VelocityGradient {
    std::array<std::vector<double>, 3> u;
    std::array<std::vector<double>, 9> grad;
};

VelocityGradient velocity_gradient(const VectorField& u_hat);

/// F[(u . grad) u] from collocation products, neither dealiased nor projected.
VectorField advective_product(const SpectralGrid& grid, const VelocityGradient& g);

}  // namespace nsbound
