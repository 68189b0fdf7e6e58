#include "phasevox/spectrogram.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "phasevox/errors.h"

namespace phasevox {

std::string to_string(SpectrogramKind kind) {
    switch (kind) {
        case SpectrogramKind::kFm: return "fm";
        case SpectrogramKind::kSmooth: return "smooth";
        case SpectrogramKind::kModGd: return "modgd";
        case SpectrogramKind::kPpgd: return "ppgd";
        case SpectrogramKind::kCgd: return "cgd";
    }
    return "?";
}

SpectrogramKind spectrogram_kind_from_string(const std::string& name) {
    if (name == "fm") return SpectrogramKind::kFm;
    if (name == "smooth") return SpectrogramKind::kSmooth;
    if (name == "modgd") return SpectrogramKind::kModGd;
    if (name == "ppgd") return SpectrogramKind::kPpgd;
    if (name == "cgd") return SpectrogramKind::kCgd;
    throw UsageError("unknown spectrogram kind: " + name);
}

void write_spectrogram_csv(const std::string& path, const Spectrogram& spec,
                           const std::string& config_hash) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write: " + path);
    out << "# config_hash=" << config_hash << " kind=" << to_string(spec.kind)
        << " hop_ms=" << spec.hop_ms << " bin_hz=" << spec.bin_hz << "\n";
    char buf[32];
    for (const auto& row : spec.data) {
        for (size_t k = 0; k < row.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.9g", row[k]);
            if (k) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

namespace {

// Min-max normalized 8-bit pixels, frequency top-down, time left-right.
std::vector<unsigned char> to_pixels(const Spectrogram& spec, size_t& w, size_t& h) {
    w = spec.n_frames();
    h = spec.n_bins();
    double lo = 1e300, hi = -1e300;
    for (const auto& row : spec.data)
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const double span = (hi > lo) ? hi - lo : 1.0;
    std::vector<unsigned char> px(w * h, 0);
    for (size_t t = 0; t < w; ++t)
        for (size_t k = 0; k < h; ++k) {
            const double v = (spec.data[t][k] - lo) / span;
            px[(h - 1 - k) * w + t] = static_cast<unsigned char>(std::lround(v * 255.0));
        }
    return px;
}

}  // namespace

void write_spectrogram_pgm(const std::string& path, const Spectrogram& spec,
                           const std::string& config_hash) {
    size_t w, h;
    auto px = to_pixels(spec, w, h);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write: " + path);
    out << "P5\n# config_hash=" << config_hash << "\n" << w << " " << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(px.data()), px.size());
}

void write_spectrogram_png(const std::string& path, const Spectrogram& spec,
                           const std::string& config_hash) {
    size_t w, h;
    auto px = to_pixels(spec, w, h);
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw DataError("cannot write: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw DataError("png write failed: " + path);
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h),
                 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_text text;
    text.compression = PNG_TEXT_COMPRESSION_NONE;
    char key[] = "config_hash";
    std::string hash_copy = config_hash;
    text.key = key;
    text.text = hash_copy.data();
    text.text_length = hash_copy.size();
    png_set_text(png, info, &text, 1);
    png_write_info(png, info);
    for (size_t y = 0; y < h; ++y)
        png_write_row(png, const_cast<png_bytep>(px.data() + y * w));
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

}  // namespace phasevox
