#include "nsbound/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace nsbound {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::atomic<bool> g_strict{true};

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const std::complex<double>* p) {
    // FFTW never writes through the input pointer of an out-of-place plan.
    return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}

}  // namespace

void set_fft_strict(bool strict) { g_strict = strict; }
bool fft_strict() { return g_strict; }

Fft3d::Fft3d(int n, bool measure) : n_(n) {
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    fftw_complex* a = fftw_alloc_complex(total);
    fftw_complex* b = fftw_alloc_complex(total);
    const unsigned flags = (measure ? FFTW_MEASURE : FFTW_ESTIMATE) | FFTW_UNALIGNED;
    forward_plan_ = fftw_plan_dft_3d(n, n, n, a, b, FFTW_FORWARD, flags);
    backward_plan_ = fftw_plan_dft_3d(n, n, n, a, b, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
    if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
        throw std::runtime_error("FFTW planning failed");
    }
}

Fft3d::~Fft3d() {
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

const Fft3d& Fft3d::get(int n) {
    static std::map<std::pair<int, bool>, std::unique_ptr<Fft3d>> cache;
    const bool measure = !g_strict;
    std::lock_guard lock(planner_mutex());
    auto& slot = cache[{n, measure}];
    if (!slot) {
        slot.reset(new Fft3d(n, measure));
    }
    return *slot;
}

void Fft3d::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const {
    fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(in.data()), as_fftw(out.data()));
}

void Fft3d::backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const {
    fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(in.data()), as_fftw(out.data()));
}

}  // namespace nsbound
