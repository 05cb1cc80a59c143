// io.cpp: text and image serialization of scan products

#include "photocorr/io.hpp"

#include <zlib.h>

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace photocorr::io {

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

std::string format_field_csv(const ScalarField& field) {
    validate_field(field);
    const int n = field.grid.n_points;
    std::string out = "alpha1,alpha2,value,masked\n";
    out.reserve(out.size() + static_cast<std::size_t>(n) * n * 48);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            append_double(out, field.grid.alpha(i));
            out += ',';
            append_double(out, field.grid.alpha(j));
            out += ',';
            append_double(out, field.values(i, j));
            out += ',';
            out += field.mask(i, j) ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

std::string format_contours(const ContourSet& set) {
    std::string out;
    bool first = true;
    for (const auto& poly : set.polylines) {
        if (!first) out += '\n';
        first = false;
        for (const ContourPoint& p : poly) {
            append_double(out, p.alpha1);
            out += ',';
            append_double(out, p.alpha2);
            out += '\n';
        }
    }
    return out;
}

std::string format_density_matrix(const Matrix& rho) {
    std::string out;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if (j) out += ',';
            append_double(out, rho(i, j).real());
            out += ',';
            append_double(out, rho(i, j).imag());
        }
        out += '\n';
    }
    return out;
}

std::string format_superoperator(const Superoperator& op) {
    std::string out;
    auto emit = [&out](Eigen::Index r, Eigen::Index c, const Complex& v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%lld,%lld,", static_cast<long long>(r),
                      static_cast<long long>(c));
        out += buf;
        append_double(out, v.real());
        out += ',';
        append_double(out, v.imag());
        out += '\n';
    };
    if (op.storage == Superoperator::Storage::Dense) {
        for (Eigen::Index j = 0; j < op.dense.cols(); ++j)
            for (Eigen::Index i = 0; i < op.dense.rows(); ++i)
                if (op.dense(i, j) != Complex(0.0, 0.0)) emit(i, j, op.dense(i, j));
    } else {
        for (int k = 0; k < op.sparse.outerSize(); ++k)
            for (SparseMatrixC::InnerIterator it(op.sparse, k); it; ++it)
                emit(it.row(), it.col(), it.value());
    }
    return out;
}

namespace {

// few-stop approximation of a perceptually ordered dark-to-bright map
constexpr std::array<std::array<double, 3>, 7> kColorStops{{{0.267, 0.005, 0.329},
                                                            {0.283, 0.141, 0.458},
                                                            {0.254, 0.265, 0.530},
                                                            {0.164, 0.471, 0.558},
                                                            {0.128, 0.567, 0.551},
                                                            {0.478, 0.821, 0.318},
                                                            {0.993, 0.906, 0.144}}};

std::array<std::uint8_t, 3> colorize(double t) {
    t = std::min(1.0, std::max(0.0, t));
    const double x = t * (kColorStops.size() - 1);
    const int k = std::min(static_cast<int>(x), static_cast<int>(kColorStops.size()) - 2);
    const double f = x - k;
    std::array<std::uint8_t, 3> rgb{};
    for (int c = 0; c < 3; ++c) {
        const double v = (1.0 - f) * kColorStops[k][c] + f * kColorStops[k + 1][c];
        rgb[c] = static_cast<std::uint8_t>(v * 255.0 + 0.5);
    }
    return rgb;
}

void push_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void push_chunk(std::vector<std::uint8_t>& out, const char type[4],
                const std::vector<std::uint8_t>& payload) {
    push_u32(out, static_cast<std::uint32_t>(payload.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    const auto crc = crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start));
    push_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::vector<std::uint8_t> encode_heatmap_png(const ScalarField& field) {
    validate_field(field);
    const int n = field.grid.n_points;

    double lo = 0.0, hi = 1.0;
    bool have = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!field.mask(i, j)) {
                const double v = field.values(i, j);
                lo = have ? std::min(lo, v) : v;
                hi = have ? std::max(hi, v) : v;
                have = true;
            }
    if (field.display_cap) hi = std::min(hi, *field.display_cap);
    if (!have || hi <= lo) hi = lo + 1.0;

    // filter byte 0 per scanline, rows from alpha2 = pi down to 0
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(n) * (1 + 3 * n));
    for (int row = 0; row < n; ++row) {
        const int j = n - 1 - row;
        raw.push_back(0);
        for (int i = 0; i < n; ++i) {
            std::array<std::uint8_t, 3> rgb{255, 255, 255};
            if (!field.mask(i, j)) {
                const double v = field.values(i, j);
                if (field.display_cap && v > *field.display_cap)
                    rgb = {211, 211, 211};
                else
                    rgb = colorize((v - lo) / (hi - lo));
            }
            raw.insert(raw.end(), rgb.begin(), rgb.end());
        }
    }

    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> compressed(bound);
    if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()),
                  Z_BEST_COMPRESSION) != Z_OK)
        throw std::runtime_error("png: deflate failed");
    compressed.resize(bound);

    std::vector<std::uint8_t> png{137, 80, 78, 71, 13, 10, 26, 10};
    std::vector<std::uint8_t> ihdr;
    push_u32(ihdr, static_cast<std::uint32_t>(n));
    push_u32(ihdr, static_cast<std::uint32_t>(n));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(2);  // truecolor
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    push_chunk(png, "IHDR", ihdr);
    push_chunk(png, "IDAT", compressed);
    push_chunk(png, "IEND", {});
    return png;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_binary_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace photocorr::io
