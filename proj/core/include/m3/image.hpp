#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace m3 {

// Plain 8-bit RGB raster, row-major, 3 bytes per pixel.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb;

    Image() = default;
    Image(int w, int h, uint8_t fill = 0)
        : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("image dims must be positive");
    }

    uint8_t* pixel(int x, int y) { return &rgb[(static_cast<size_t>(y) * width + x) * 3]; }
    const uint8_t* pixel(int x, int y) const {
        return &rgb[(static_cast<size_t>(y) * width + x) * 3];
    }

    bool contains(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    void set(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
        uint8_t* p = pixel(x, y);
        p[0] = r;
        p[1] = g;
        p[2] = b;
    }

    // Copies src onto this image with its top-left corner at (x, y).
    void blit(const Image& src, int x, int y);

    // Extracts a w x h sub-image at (x, y); throws if out of bounds.
    Image crop(int x, int y, int w, int h) const;

    friend bool operator==(const Image&, const Image&) = default;
};

// RGB8 PNG file I/O (libpng underneath). Other color types are converted
// to RGB on read.
Image read_png(const std::string& path);
void write_png(const Image& image, const std::string& path);

}  // namespace m3
