#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace thetapr::detail {

namespace {
// FFTW planning is not thread-safe; execution of a ready plan is.
std::mutex plan_mutex;
} // namespace

void fft(std::vector<std::complex<double>>& v, int sign) {
    if (v.empty())
        throw std::invalid_argument("fft: empty input");
    auto* data = reinterpret_cast<fftw_complex*>(v.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(v.size()), data, data,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    if (!plan)
        throw std::runtime_error("fft: planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

} // namespace thetapr::detail
