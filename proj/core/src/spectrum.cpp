#include "phasevox/spectrum.h"

#include <cmath>

#include "phasevox/errors.h"
#include "phasevox/fft.h"

namespace phasevox {

ComplexSpectrum dft(const Frame& frame, int n_fft, int sample_rate) {
    if (static_cast<int>(frame.samples.size()) > n_fft)
        throw DataError("frame longer than n_fft (" +
                        std::to_string(frame.samples.size()) + " > " +
                        std::to_string(n_fft) + ")");
    ComplexSpectrum s;
    s.n_fft = n_fft;
    s.bin_hz = static_cast<double>(sample_rate) / n_fft;
    s.values = fft::forward_real(frame.samples, n_fft);
    return s;
}

std::vector<double> idft_real(const ComplexSpectrum& spectrum) {
    auto x = fft::inverse(spectrum.values);
    std::vector<double> out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i].real();
    return out;
}

ComplexSpectrum chirp_dft(const std::vector<double>& x, double rho, int n_fft,
                          int sample_rate) {
    if (rho <= 0.0) throw UsageError("chirp radius must be positive");
    std::vector<double> weighted(x.size());
    double w = 1.0;
    const double inv_rho = 1.0 / rho;
    for (size_t n = 0; n < x.size(); ++n) {
        weighted[n] = x[n] * w;
        w *= inv_rho;
    }
    ComplexSpectrum s;
    s.n_fft = n_fft;
    s.bin_hz = static_cast<double>(sample_rate) / n_fft;
    s.values = fft::forward_real(weighted, n_fft);
    return s;
}

}  // namespace phasevox
