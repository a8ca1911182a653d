#include "weldlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace weldlab {
namespace {

// FFTW planning is not thread-safe; execution through fftw_execute_dft is.
// Plans are cached per (size, sign) and created with FFTW_UNALIGNED so they
// can run on arbitrary caller buffers.
std::mutex plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> plan_cache;

fftw_plan get_plan(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw planning failed");
    plan_cache.emplace(key, plan);
    return plan;
}

} // namespace

void dft(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty()) return;
    if (sign != 1 && sign != -1) throw std::invalid_argument("dft: sign must be +-1");
    fftw_plan plan = get_plan(data.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

} // namespace weldlab
