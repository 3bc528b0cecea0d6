#include "nsbound/spectral_core.hpp"

#include "nsbound/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nsbound {

// ---------------------------------------------------------------------------
// SpectralGrid
// ---------------------------------------------------------------------------

SpectralGrid::SpectralGrid(int n, double box_length)
    : n_(n), box_length_(box_length), dk_(2.0 * std::numbers::pi / box_length) {
    auto k2 = std::make_shared<std::vector<double>>(size());
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const double ki = wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double kj = wavenumber(j);
            for (int l = 0; l < n; ++l) {
                const double kl = wavenumber(l);
                (*k2)[idx++] = ki * ki + kj * kj + kl * kl;
            }
        }
    }
    k2_ = std::move(k2);
}

SpectralGrid SpectralGrid::make(int n, double box_length) {
    if (n < 8 || n % 2 != 0) {
        throw std::invalid_argument("grid size must be an even integer >= 8, got " + std::to_string(n));
    }
    if (!(box_length > 0.0) || !std::isfinite(box_length)) {
        throw std::invalid_argument("box length must be positive and finite");
    }
    return SpectralGrid(n, box_length);
}

std::array<double, 3> SpectralGrid::k_vector(std::size_t idx) const {
    const auto [i, j, l] = unflat(idx);
    return {wavenumber(i), wavenumber(j), wavenumber(l)};
}

std::array<double, 3> SpectralGrid::symmetric_k_vector(std::size_t idx) const {
    const auto [i, j, l] = unflat(idx);
    return {symmetric_wavenumber(i), symmetric_wavenumber(j), symmetric_wavenumber(l)};
}

double SpectralGrid::k_magnitude(std::size_t idx) const { return std::sqrt(k_squared(idx)); }

std::size_t SpectralGrid::mirror(std::size_t idx) const {
    const auto [i, j, l] = unflat(idx);
    auto neg = [this](int a) { return (n_ - a) % n_; };
    return flat(neg(i), neg(j), neg(l));
}

// ---------------------------------------------------------------------------
// VectorField
// ---------------------------------------------------------------------------

VectorField::VectorField(const SpectralGrid& grid, Representation rep) : grid_(grid), rep_(rep) {
    for (auto& c : data_) {
        c.assign(grid.size(), Complex{0.0, 0.0});
    }
}

namespace {

void require_compatible(const VectorField& a, const VectorField& b) {
    if (!(a.grid() == b.grid()) || a.representation() != b.representation()) {
        throw std::invalid_argument("vector fields live on different grids or representations");
    }
}

void require_spectral(const VectorField& f, const char* op) {
    if (!f.is_spectral()) {
        throw std::invalid_argument(std::string(op) + " requires a spectral field");
    }
}

}  // namespace

VectorField& VectorField::operator+=(const VectorField& o) {
    require_compatible(*this, o);
    for (int c = 0; c < 3; ++c) {
        auto dst = component(c);
        auto src = o.component(c);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    require_compatible(*this, o);
    for (int c = 0; c < 3; ++c) {
        auto dst = component(c);
        auto src = o.component(c);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
    }
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (auto& c : data_) {
        for (auto& v : c) v *= s;
    }
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

std::vector<Complex> to_spectral(const SpectralGrid& grid, std::span<const Complex> physical) {
    std::vector<Complex> out(grid.size());
    Fft3d::get(grid.n()).forward(physical, out);
    const double norm = 1.0 / static_cast<double>(grid.size());
    for (auto& v : out) v *= norm;
    return out;
}

std::vector<double> to_physical(const SpectralGrid& grid, std::span<const Complex> spectral) {
    thread_local std::vector<Complex> tmp;
    tmp.resize(grid.size());
    Fft3d::get(grid.n()).backward(spectral, tmp);
    std::vector<double> out(grid.size());
    std::transform(tmp.begin(), tmp.end(), out.begin(), [](const Complex& z) { return z.real(); });
    return out;
}

VectorField to_spectral(const VectorField& field) {
    if (field.is_spectral()) {
        throw std::invalid_argument("forward transform expects a physical field");
    }
    VectorField out(field.grid(), Representation::spectral);
    const auto& fft = Fft3d::get(field.grid().n());
    const double norm = 1.0 / static_cast<double>(field.grid().size());
    for (int c = 0; c < 3; ++c) {
        fft.forward(field.component(c), out.component(c));
        for (auto& v : out.component(c)) v *= norm;
    }
    return out;
}

VectorField to_physical(const VectorField& field) {
    require_spectral(field, "inverse transform");
    VectorField out(field.grid(), Representation::physical);
    const auto& fft = Fft3d::get(field.grid().n());
    for (int c = 0; c < 3; ++c) {
        fft.backward(field.component(c), out.component(c));
        for (auto& v : out.component(c)) v = Complex{v.real(), 0.0};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fourier multipliers
// ---------------------------------------------------------------------------

VectorField leray_project(const VectorField& field) {
    require_spectral(field, "leray_project");
    const auto& grid = field.grid();
    const int n = grid.n();
    VectorField out = field;
    auto u = out.component(0);
    auto v = out.component(1);
    auto w = out.component(2);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const double k0 = grid.symmetric_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double k1 = grid.symmetric_wavenumber(j);
            for (int l = 0; l < n; ++l, ++idx) {
                if (idx == 0) continue;
                const double k2c = grid.symmetric_wavenumber(l);
                const double k2 = k0 * k0 + k1 * k1 + k2c * k2c;
                if (k2 == 0.0) {
                    // Pure Nyquist mode: no admissible direction, project to zero.
                    u[idx] = v[idx] = w[idx] = Complex{};
                    continue;
                }
                const Complex kdotf = (k0 * u[idx] + k1 * v[idx] + k2c * w[idx]) / k2;
                u[idx] -= k0 * kdotf;
                v[idx] -= k1 * kdotf;
                w[idx] -= k2c * kdotf;
            }
        }
    }
    return out;
}

namespace {

Complex power_of_ik(double k, int p) {
    // (i k)^p for p in [0, 3]
    switch (p) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, k};
        case 2: return {-k * k, 0.0};
        case 3: return {0.0, -k * k * k};
        default: throw std::invalid_argument("derivative order exceeds 3");
    }
}

// Per-axis factors of the symbol; the full symbol at (i, j, l) is ax[0][i] * ax[1][j] * ax[2][l].
std::array<std::vector<Complex>, 3> axis_symbols(const SpectralGrid& grid, MultiIndex beta) {
    const int order[3] = {beta.x, beta.y, beta.z};
    std::array<std::vector<Complex>, 3> ax;
    for (int a = 0; a < 3; ++a) {
        auto& t = ax[static_cast<std::size_t>(a)];
        t.resize(static_cast<std::size_t>(grid.n()));
        for (int i = 0; i < grid.n(); ++i) {
            // Odd powers use the signless Nyquist wavenumber.
            const double k = (order[a] % 2 == 1) ? grid.symmetric_wavenumber(i) : grid.wavenumber(i);
            t[static_cast<std::size_t>(i)] = power_of_ik(k, order[a]);
        }
    }
    return ax;
}

template <class F>
void for_each_symbol(const SpectralGrid& grid, MultiIndex beta, F&& f) {
    const auto ax = axis_symbols(grid, beta);
    const auto n = static_cast<std::size_t>(grid.n());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex sij = ax[0][i] * ax[1][j];
            for (std::size_t l = 0; l < n; ++l, ++idx) f(idx, sij * ax[2][l]);
        }
    }
}

void validate_multi_index(MultiIndex beta) {
    if (beta.x < 0 || beta.y < 0 || beta.z < 0) {
        throw std::invalid_argument("multi-index entries must be nonnegative");
    }
    if (beta.order() > 3) {
        throw std::invalid_argument("derivative order |beta| must not exceed 3");
    }
}

}  // namespace

std::vector<Complex> spectral_derivative(const SpectralGrid& grid, std::span<const Complex> coef,
                                         MultiIndex beta) {
    validate_multi_index(beta);
    std::vector<Complex> out(coef.begin(), coef.end());
    if (beta.order() == 0) return out;
    for_each_symbol(grid, beta, [&](std::size_t idx, Complex sym) { out[idx] *= sym; });
    return out;
}

VectorField spectral_derivative(const VectorField& field, MultiIndex beta) {
    require_spectral(field, "spectral_derivative");
    validate_multi_index(beta);
    VectorField out = field;
    if (beta.order() == 0) return out;
    const auto& grid = field.grid();
    for_each_symbol(grid, beta, [&](std::size_t idx, Complex sym) {
        for (int c = 0; c < 3; ++c) out.component(c)[idx] *= sym;
    });
    return out;
}

bool is_dealiased_mode(const SpectralGrid& grid, std::size_t idx) {
    const auto [i, j, l] = grid.unflat(idx);
    const int n = grid.n();
    auto keep = [n, &grid](int a) { return 3 * std::abs(grid.signed_mode(a)) <= n; };
    return keep(i) && keep(j) && keep(l);
}

VectorField dealias(const VectorField& field) {
    require_spectral(field, "dealias");
    VectorField out = field;
    const auto& grid = field.grid();
    const int n = grid.n();
    std::vector<char> keep(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) keep[static_cast<std::size_t>(a)] = 3 * std::abs(grid.signed_mode(a)) <= n;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l, ++idx) {
                if (keep[static_cast<std::size_t>(i)] && keep[static_cast<std::size_t>(j)] &&
                    keep[static_cast<std::size_t>(l)]) {
                    continue;
                }
                for (int c = 0; c < 3; ++c) out.component(c)[idx] = Complex{};
            }
        }
    }
    return out;
}

std::vector<Complex> divergence(const VectorField& field) {
    require_spectral(field, "divergence");
    const auto& grid = field.grid();
    std::vector<Complex> div(grid.size());
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const auto k = grid.symmetric_k_vector(idx);
        Complex s{};
        for (int c = 0; c < 3; ++c) s += k[static_cast<std::size_t>(c)] * field.component(c)[idx];
        div[idx] = Complex{0.0, 1.0} * s;
    }
    return div;
}

double max_divergence(const VectorField& field) {
    double m = 0.0;
    for (const auto& d : divergence(field)) m = std::max(m, std::abs(d));
    return m;
}

Complex inner_product(const VectorField& a, const VectorField& b) {
    require_compatible(a, b);
    require_spectral(a, "inner_product");
    Complex s{};
    for (int c = 0; c < 3; ++c) {
        auto x = a.component(c);
        auto y = b.component(c);
        for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    }
    return a.grid().volume() * s;
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

double l2_sq_plancherel(const VectorField& spectral) {
    require_spectral(spectral, "l2_sq_plancherel");
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (const auto& z : spectral.component(c)) s += std::norm(z);
    }
    return spectral.grid().volume() * s;
}

double l2_sq_quadrature(const VectorField& physical) {
    if (physical.is_spectral()) {
        throw std::invalid_argument("l2_sq_quadrature requires a physical field");
    }
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (const auto& z : physical.component(c)) s += z.real() * z.real();
    }
    const double h = physical.grid().spacing();
    return h * h * h * s;
}

double sup_norm(const VectorField& physical) {
    if (physical.is_spectral()) throw std::invalid_argument("sup_norm requires a physical field");
    double m = 0.0;
    for (std::size_t i = 0; i < physical.grid().size(); ++i) {
        double a = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double v = physical.component(c)[i].real();
            a += v * v;
        }
        m = std::max(m, a);
    }
    return std::sqrt(m);
}

double lm_norm(const VectorField& physical, int m) {
    if (physical.is_spectral()) throw std::invalid_argument("lm_norm requires a physical field");
    if (m < 1) throw std::invalid_argument("lm_norm requires m >= 1");
    double s = 0.0;
    for (std::size_t i = 0; i < physical.grid().size(); ++i) {
        double a = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double v = physical.component(c)[i].real();
            a += v * v;
        }
        s += (m == 4) ? a * a : std::pow(a, 0.5 * m);
    }
    const double h = physical.grid().spacing();
    return std::pow(h * h * h * s, 1.0 / m);
}

NormSuite norms(const VectorField& field) {
    const VectorField spectral = field.is_spectral() ? field : to_spectral(field);
    const VectorField physical = field.is_spectral() ? to_physical(field) : field;
    const auto& grid = spectral.grid();
    NormSuite out;
    double l2 = 0.0, h1 = 0.0, h2 = 0.0, h3 = 0.0;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        double a = 0.0;
        for (int c = 0; c < 3; ++c) a += std::norm(spectral.component(c)[idx]);
        const double k2 = grid.k_squared(idx);
        l2 += a;
        h1 += k2 * a;
        h2 += k2 * k2 * a;
        h3 += k2 * k2 * k2 * a;
    }
    const double vol = grid.volume();
    out.l2_sq = vol * l2;
    out.h1_sq = vol * h1;
    out.h2_sq = vol * h2;
    out.h3_sq = vol * h3;
    out.sup = sup_norm(physical);
    out.l4 = lm_norm(physical, 4);
    return out;
}

double hermitian_defect(const VectorField& spectral) {
    require_spectral(spectral, "hermitian_defect");
    const auto& grid = spectral.grid();
    double m = 0.0;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const std::size_t mir = grid.mirror(idx);
        for (int c = 0; c < 3; ++c) {
            m = std::max(m, std::abs(spectral.component(c)[idx] - std::conj(spectral.component(c)[mir])));
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Collocation products
// ---------------------------------------------------------------------------

VelocityGradient velocity_gradient(const VectorField& u_hat) {
    require_spectral(u_hat, "velocity_gradient");
    const auto& grid = u_hat.grid();
    VelocityGradient g;
    for (int k = 0; k < 3; ++k) {
        g.u[static_cast<std::size_t>(k)] = to_physical(grid, u_hat.component(k));
        for (int j = 0; j < 3; ++j) {
            MultiIndex beta;
            (j == 0 ? beta.x : j == 1 ? beta.y : beta.z) = 1;
            g.grad[static_cast<std::size_t>(3 * k + j)] =
                to_physical(grid, spectral_derivative(grid, u_hat.component(k), beta));
        }
    }
    return g;
}

VectorField advective_product(const SpectralGrid& grid, const VelocityGradient& g) {
    VectorField out(grid, Representation::spectral);
    std::vector<Complex> product(grid.size());
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double s = 0.0;
            for (int j = 0; j < 3; ++j) {
                s += g.u[static_cast<std::size_t>(j)][i] * g.grad[static_cast<std::size_t>(3 * k + j)][i];
            }
            product[i] = Complex{s, 0.0};
        }
        const auto coef = to_spectral(grid, product);
        std::copy(coef.begin(), coef.end(), out.component(k).begin());
    }
    return out;
}

}  // namespace nsbound
