#include "sec/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <vector>

#include "sec/errors.hpp"

namespace sec {

namespace {

bool has_suffix(const std::string& s, const char* suffix) {
    const size_t n = std::strlen(suffix);
    return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

Image load_png(const std::string& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw DataError("image: cannot open: " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8))
        throw DataError("image: not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("image: libpng initialization failed");
    }

    std::vector<png_byte> raster;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("image: corrupt PNG: " + path);
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);

    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    if (depth == 16) png_set_swap(png);  // little-endian 16-bit samples below
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    const png_byte out_depth = png_get_bit_depth(png, info);
    if (channels != 1 && channels != 3)
        throw DataError("image: unsupported PNG channel count: " + path);

    const size_t stride = png_get_rowbytes(png, info);
    raster.resize(stride * height);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = raster.data() + y * stride;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image img = Image::zeros(channels, static_cast<int>(height), static_cast<int>(width));
    const size_t n_px = img.pixel_count();
    const double peak = out_depth == 16 ? 65535.0 : 255.0;
    for (png_uint_32 y = 0; y < height; ++y)
        for (png_uint_32 x = 0; x < width; ++x)
            for (int c = 0; c < channels; ++c) {
                const size_t sample = (static_cast<size_t>(x)) * channels + c;
                double v;
                if (out_depth == 16) {
                    const png_byte* p = raster.data() + y * stride + 2 * sample;
                    v = static_cast<double>(p[0] | (p[1] << 8));
                } else {
                    v = raster[y * stride + sample];
                }
                img.data[static_cast<size_t>(c) * n_px + y * width + x] = v / peak;
            }
    return img;
}

int read_pnm_value(std::istream& in) {
    // Skips whitespace and '#' comments between header tokens.
    for (;;) {
        const int ch = in.peek();
        if (ch == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(ch)) {
            in.get();
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) throw DataError("image: malformed PNM header");
    return value;
}

Image load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("image: cannot open: " + path);
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        throw DataError("image: not a binary PGM/PPM file: " + path);
    const int channels = magic[1] == '6' ? 3 : 1;
    const int width = read_pnm_value(in);
    const int height = read_pnm_value(in);
    const int maxval = read_pnm_value(in);
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535)
        throw DataError("image: invalid PNM dimensions: " + path);
    in.get();  // single whitespace byte after the header

    const int bytes = maxval > 255 ? 2 : 1;
    const size_t n_px = static_cast<size_t>(width) * height;
    std::vector<unsigned char> raw(n_px * channels * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<size_t>(in.gcount()) != raw.size())
        throw DataError("image: truncated PNM payload: " + path);

    Image img = Image::zeros(channels, height, width);
    for (size_t p = 0; p < n_px; ++p)
        for (int c = 0; c < channels; ++c) {
            const size_t i = (p * channels + c) * bytes;
            const int v = bytes == 2 ? (raw[i] << 8) | raw[i + 1] : raw[i];  // big-endian
            img.data[static_cast<size_t>(c) * n_px + p] = static_cast<double>(v) / maxval;
        }
    return img;
}

void save_png16(const Image& img, const std::string& path) {
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw DataError("image: cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw DataError("image: libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw DataError("image: PNG write failed: " + path);
    }

    png_init_io(png, file.get());
    const int color = img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, img.width, img.height, 16, color, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const size_t n_px = img.pixel_count();
    std::vector<png_byte> row(static_cast<size_t>(img.width) * img.channels * 2);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                const double v = img.data[static_cast<size_t>(c) * n_px +
                                          static_cast<size_t>(y) * img.width + x];
                const int q = static_cast<int>(std::lround(v * 65535.0));
                row[(static_cast<size_t>(x) * img.channels + c) * 2] =
                    static_cast<png_byte>(q >> 8);
                row[(static_cast<size_t>(x) * img.channels + c) * 2 + 1] =
                    static_cast<png_byte>(q & 0xff);
            }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void save_pnm16(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("image: cannot open for writing: " + path);
    out << (img.channels == 1 ? "P5" : "P6") << "\n"
        << img.width << " " << img.height << "\n65535\n";
    const size_t n_px = img.pixel_count();
    std::vector<unsigned char> raw(n_px * img.channels * 2);
    for (size_t p = 0; p < n_px; ++p)
        for (int c = 0; c < img.channels; ++c) {
            const int q =
                static_cast<int>(std::lround(img.data[static_cast<size_t>(c) * n_px + p] * 65535.0));
            raw[(p * img.channels + c) * 2] = static_cast<unsigned char>(q >> 8);
            raw[(p * img.channels + c) * 2 + 1] = static_cast<unsigned char>(q & 0xff);
        }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out.good()) throw DataError("image: write failed: " + path);
}

}  // namespace

Image load_image(const std::string& path) {
    Image img;
    if (has_suffix(path, ".png") || has_suffix(path, ".PNG"))
        img = load_png(path);
    else
        img = load_pnm(path);
    validate_image(img, "decoded image " + path);
    return img;
}

void save_image(const Image& img, const std::string& path) {
    validate_image(img, "image for " + path);
    if (has_suffix(path, ".png") || has_suffix(path, ".PNG"))
        save_png16(img, path);
    else
        save_pnm16(img, path);
}

}  // namespace sec
