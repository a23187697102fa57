#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "blocklock/errors.hpp"

namespace blocklock {

// A c x h x w image with values in [0, 1], stored (channel, row, col).
struct ImageTensor {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<float> data;

    ImageTensor() = default;
    ImageTensor(int c, int h, int w)
        : channels(c), height(h), width(w),
          data(static_cast<std::size_t>(c) * h * w, 0.0f) {}

    std::size_t index(int ch, int r, int q) const {
        return (static_cast<std::size_t>(ch) * height + r) * width + q;
    }
    float& at(int ch, int r, int q) { return data[index(ch, r, q)]; }
    float at(int ch, int r, int q) const { return data[index(ch, r, q)]; }

    std::size_t size() const { return data.size(); }

    bool operator==(const ImageTensor&) const = default;
};

// Block-segmented view of an image: block_rows x block_cols blocks,
// each flattened to block_pixels = M*M*c values, stored (i, j, k).
struct BlockTensor {
    int block_rows = 0;   // h / M
    int block_cols = 0;   // w / M
    int block_pixels = 0; // M * M * c
    std::vector<float> data;

    BlockTensor() = default;
    BlockTensor(int rows, int cols, int pixels)
        : block_rows(rows), block_cols(cols), block_pixels(pixels),
          data(static_cast<std::size_t>(rows) * cols * pixels, 0.0f) {}

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * block_cols + j) * block_pixels + k;
    }
    float& at(int i, int j, int k) { return data[index(i, j, k)]; }
    float at(int i, int j, int k) const { return data[index(i, j, k)]; }

    bool operator==(const BlockTensor&) const = default;
};

// Pixel quantization used by the value transforms: round half away from
// zero onto the 8-bit grid. The rounding rule is part of the key
// compatibility contract.
inline int quantize8(float v) {
    const long q = std::lround(static_cast<double>(v) * 255.0);
    return q < 0 ? 0 : (q > 255 ? 255 : static_cast<int>(q));
}

// Splits an image into M x M blocks and flattens each one. Within a block
// the flattening order is row-major over (row, col) with channels fastest:
// k = (r*M + q)*c + ch. Indices are 0-based everywhere.
inline BlockTensor segment(const ImageTensor& image, int block_size) {
    if (block_size < 1)
        throw DimensionError("segment: block size must be >= 1, got " +
                             std::to_string(block_size));
    if (image.height % block_size != 0 || image.width % block_size != 0)
        throw DimensionError(
            "segment: block size must divide image dimensions (h=" +
            std::to_string(image.height) + ", w=" + std::to_string(image.width) +
            ", M=" + std::to_string(block_size) + ")");

    const int M = block_size;
    const int c = image.channels;
    BlockTensor out(image.height / M, image.width / M, M * M * c);
    for (int i = 0; i < out.block_rows; ++i)
        for (int j = 0; j < out.block_cols; ++j)
            for (int r = 0; r < M; ++r)
                for (int q = 0; q < M; ++q)
                    for (int ch = 0; ch < c; ++ch)
                        out.at(i, j, (r * M + q) * c + ch) =
                            image.at(ch, i * M + r, j * M + q);
    return out;
}

// Inverse of segment: integrate(segment(x, M), M) == x element for element.
inline ImageTensor integrate(const BlockTensor& blocks, int block_size) {
    const int M = block_size;
    if (M < 1 || blocks.block_pixels % (M * M) != 0)
        throw DimensionError(
            "integrate: block_pixels=" + std::to_string(blocks.block_pixels) +
            " is not M*M*c for M=" + std::to_string(M));
    const int c = blocks.block_pixels / (M * M);

    ImageTensor out(c, blocks.block_rows * M, blocks.block_cols * M);
    for (int i = 0; i < blocks.block_rows; ++i)
        for (int j = 0; j < blocks.block_cols; ++j)
            for (int r = 0; r < M; ++r)
                for (int q = 0; q < M; ++q)
                    for (int ch = 0; ch < c; ++ch)
                        out.at(ch, i * M + r, j * M + q) =
                            blocks.at(i, j, (r * M + q) * c + ch);
    return out;
}

} // namespace blocklock
