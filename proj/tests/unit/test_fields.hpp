#pragma once

#include "nsbound/spectral_core.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace testing_fields {

using nsbound::Complex;
using nsbound::Representation;
using nsbound::SpectralGrid;
using nsbound::VectorField;

/// Gaussian samples at every collocation point, returned in spectral form.
inline VectorField random_field(const SpectralGrid& grid, std::uint64_t seed, bool zero_mean = true) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    VectorField f(grid, Representation::physical);
    for (int c = 0; c < 3; ++c) {
        for (auto& v : f.component(c)) v = Complex{g(rng), 0.0};
    }
    auto out = nsbound::to_spectral(f);
    if (zero_mean) {
        for (int c = 0; c < 3; ++c) out.component(c)[0] = Complex{};
    }
    return out;
}

/// Samples an analytic field at the collocation points.
inline VectorField sample(const SpectralGrid& grid, const std::function<std::array<double, 3>(double, double, double)>& f) {
    VectorField out(grid, Representation::physical);
    const int n = grid.n();
    const double h = grid.spacing();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                const auto v = f(i * h, j * h, l * h);
                const auto idx = grid.flat(i, j, l);
                for (int c = 0; c < 3; ++c) out.component(c)[idx] = Complex{v[static_cast<std::size_t>(c)], 0.0};
            }
        }
    }
    return out;
}

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < a.component(c).size(); ++i) {
            m = std::max(m, std::abs(a.component(c)[i] - b.component(c)[i]));
        }
    }
    return m;
}

inline double max_abs(const VectorField& a) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (const auto& v : a.component(c)) m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace testing_fields
