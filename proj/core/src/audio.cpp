#include "phasevox/audio.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "phasevox/errors.h"

namespace phasevox {

namespace {

uint32_t read_u32(std::istream& s) {
    unsigned char b[4];
    s.read(reinterpret_cast<char*>(b), 4);
    return b[0] | (b[1] << 8) | (b[2] << 16) | (uint32_t(b[3]) << 24);
}

uint16_t read_u16(std::istream& s) {
    unsigned char b[2];
    s.read(reinterpret_cast<char*>(b), 2);
    return b[0] | (b[1] << 8);
}

void write_u32(std::ostream& s, uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
                 char((v >> 24) & 0xff)};
    s.write(b, 4);
}

void write_u16(std::ostream& s, uint16_t v) {
    char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
    s.write(b, 2);
}

void write_wav_header(std::ostream& out, int sample_rate, uint16_t format,
                      uint16_t bits, uint32_t data_bytes) {
    out.write("RIFF", 4);
    write_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, format);
    write_u16(out, 1);  // mono
    write_u32(out, sample_rate);
    write_u32(out, sample_rate * bits / 8);
    write_u16(out, bits / 8);
    write_u16(out, bits);
    out.write("data", 4);
    write_u32(out, data_bytes);
}

}  // namespace

AudioSignal load_wav(const std::string& path, bool strict_rate) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("file not found: " + path);

    char tag[5] = {};
    in.read(tag, 4);
    if (std::strncmp(tag, "RIFF", 4) != 0) throw DataError("not a RIFF file: " + path);
    read_u32(in);
    in.read(tag, 4);
    if (std::strncmp(tag, "WAVE", 4) != 0) throw DataError("not a WAV file: " + path);

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t rate = 0;
    std::vector<char> data;
    while (in.read(tag, 4)) {
        uint32_t size = read_u32(in);
        if (std::strncmp(tag, "fmt ", 4) == 0) {
            format = read_u16(in);
            channels = read_u16(in);
            rate = read_u32(in);
            read_u32(in);  // byte rate
            read_u16(in);  // block align
            bits = read_u16(in);
            if (size > 16) in.seekg(size - 16, std::ios::cur);
        } else if (std::strncmp(tag, "data", 4) == 0) {
            data.resize(size);
            in.read(data.data(), size);
        } else {
            in.seekg(size + (size & 1), std::ios::cur);
        }
    }
    if (channels == 0 || rate == 0) throw DataError("missing fmt chunk: " + path);
    if (format != 1 && format != 3)
        throw DataError("unsupported encoding (not PCM): " + path);
    if (format == 1 && bits != 8 && bits != 16 && bits != 24)
        throw DataError("unsupported PCM bit depth: " + path);
    if (format == 3 && bits != 32)
        throw DataError("unsupported float bit depth: " + path);

    const int bytes_per = bits / 8;
    const size_t n_frames = data.size() / (bytes_per * channels);
    std::vector<double> mono(n_frames, 0.0);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data());
    for (size_t i = 0; i < n_frames; ++i) {
        double acc = 0.0;
        for (int c = 0; c < channels; ++c) {
            const unsigned char* s = p + (i * channels + c) * bytes_per;
            double v;
            if (format == 3) {
                float f;
                std::memcpy(&f, s, 4);
                v = f;
            } else if (bits == 8) {
                v = (int(s[0]) - 128) / 128.0;
            } else if (bits == 16) {
                int16_t x = int16_t(s[0] | (s[1] << 8));
                v = x / 32768.0;
            } else {  // 24-bit
                int32_t x = s[0] | (s[1] << 8) | (s[2] << 16);
                if (x & 0x800000) x |= ~0xffffff;
                v = x / 8388608.0;
            }
            acc += v;
        }
        mono[i] = acc / channels;
    }

    AudioSignal out;
    out.source_id = path;
    out.sample_rate = kTargetSampleRate;
    if (static_cast<int>(rate) == kTargetSampleRate) {
        out.samples = std::move(mono);
    } else if (strict_rate) {
        throw DataError("sample rate mismatch (" + std::to_string(rate) +
                        " Hz, want 16000) in strict mode: " + path);
    } else {
        out.samples = resample(mono, static_cast<int>(rate), kTargetSampleRate);
    }
    for (double v : out.samples)
        if (!std::isfinite(v)) throw DataError("non-finite sample in " + path);
    return out;
}

void write_wav(const std::string& path, const AudioSignal& signal) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write: " + path);
    write_wav_header(out, signal.sample_rate, 1, 16,
                     static_cast<uint32_t>(signal.samples.size() * 2));
    for (double v : signal.samples) {
        double c = std::clamp(v, -1.0, 32767.0 / 32768.0);
        int16_t s = static_cast<int16_t>(std::lrint(c * 32768.0));
        write_u16(out, static_cast<uint16_t>(s));
    }
}

void write_wav_float(const std::string& path, const AudioSignal& signal) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write: " + path);
    write_wav_header(out, signal.sample_rate, 3, 32,
                     static_cast<uint32_t>(signal.samples.size() * 4));
    for (double v : signal.samples) {
        float f = static_cast<float>(v);
        out.write(reinterpret_cast<const char*>(&f), 4);
    }
}

std::vector<double> resample(const std::vector<double>& x, int from_rate, int to_rate) {
    if (from_rate == to_rate) return x;
    const double ratio = static_cast<double>(from_rate) / to_rate;
    const size_t n_out = static_cast<size_t>(std::floor(x.size() / ratio));
    const int taps = 32;
    // Low-pass at the lower of the two Nyquist rates.
    const double fc = 0.5 * std::min(1.0, 1.0 / ratio);
    std::vector<double> y(n_out, 0.0);
    for (size_t i = 0; i < n_out; ++i) {
        const double t = i * ratio;  // position in input samples
        const long center = static_cast<long>(std::floor(t));
        double acc = 0.0, wsum = 0.0;
        for (long k = center - taps; k <= center + taps; ++k) {
            if (k < 0 || k >= static_cast<long>(x.size())) continue;
            const double d = t - k;
            double sinc = (d == 0.0) ? 1.0
                                     : std::sin(2.0 * std::numbers::pi * fc * d) /
                                           (std::numbers::pi * d);
            if (d == 0.0) sinc = 2.0 * fc;
            const double hann =
                0.5 + 0.5 * std::cos(std::numbers::pi * d / (taps + 1));
            acc += x[k] * sinc * hann;
            wsum += sinc * hann;
        }
        // Kernel-sum normalization keeps DC gain at 1 near the edges too.
        y[i] = (std::abs(wsum) > 1e-12) ? acc / wsum : 0.0;
    }
    return y;
}

}  // namespace phasevox
