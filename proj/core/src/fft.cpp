#include "phasevox/fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace phasevox::fft {

namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft on
// distinct arrays is. Plans are cached per (size, direction).
std::mutex g_plan_mutex;

fftw_plan plan_for(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard lock(g_plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> dummy(n);
    fftw_plan p = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(dummy.data()),
        reinterpret_cast<fftw_complex*>(dummy.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[key] = p;
    return p;
}

std::vector<std::complex<double>> run(std::span<const std::complex<double>> x, int sign) {
    std::vector<std::complex<double>> in(x.begin(), x.end());
    std::vector<std::complex<double>> out(x.size());
    fftw_plan p = plan_for(static_cast<int>(x.size()), sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> x) {
    return run(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> X) {
    auto out = run(X, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(X.size());
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<std::complex<double>> forward_real(std::span<const double> x, int n_fft) {
    std::vector<std::complex<double>> in(n_fft, {0.0, 0.0});
    for (size_t i = 0; i < x.size() && i < static_cast<size_t>(n_fft); ++i)
        in[i] = {x[i], 0.0};
    return forward(in);
}

}  // namespace phasevox::fft
