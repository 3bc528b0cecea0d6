#pragma once

#include <complex>
#include <span>

namespace nsbound {

/// Cached FFTW plans for n^3 complex transforms. Execution is thread-safe;
/// planning is serialized internally.
class Fft3d {
public:
    /// Shared instance for size n. In strict mode plans are built with
    /// FFTW_ESTIMATE, which makes the chosen algorithm (and therefore the
    /// rounding) independent of machine load.
    static const Fft3d& get(int n);

    /// Unnormalized e^{-i k.x} transform.
    void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;
    /// Unnormalized e^{+i k.x} transform.
    void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

    int n() const { return n_; }

    Fft3d(const Fft3d&) = delete;
    Fft3d& operator=(const Fft3d&) = delete;
    ~Fft3d();

private:
    explicit Fft3d(int n, bool measure);
    int n_;
    void* forward_plan_;
    void* backward_plan_;
};

/// Selects the planner rigor for plans created after the call.
void set_fft_strict(bool strict);
bool fft_strict();

}  // namespace nsbound
