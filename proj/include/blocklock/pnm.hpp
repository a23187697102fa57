#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "blocklock/errors.hpp"
#include "blocklock/tensor.hpp"

namespace blocklock {

namespace detail {

inline ParseError pnm_error(const std::filesystem::path& path,
                            std::streamoff offset, const std::string& what) {
    return ParseError(path.string() + ": " + what + " (byte offset " +
                      std::to_string(offset < 0 ? 0 : offset) + ")");
}

// Reads one header token, skipping whitespace and '#' comments.
inline std::string pnm_token(std::istream& in, const std::filesystem::path& path) {
    int ch = in.get();
    while (ch != EOF && (std::isspace(ch) || ch == '#')) {
        if (ch == '#')
            while (ch != EOF && ch != '\n') ch = in.get();
        ch = in.get();
    }
    if (ch == EOF) throw pnm_error(path, in.tellg(), "unexpected end of header");
    std::string token;
    while (ch != EOF && !std::isspace(ch)) {
        token.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    return token;
}

inline int pnm_int(std::istream& in, const std::filesystem::path& path,
                   const std::string& name) {
    const std::streamoff at = in.tellg();
    const std::string token = pnm_token(in, path);
    for (char c : token)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw pnm_error(path, at, "invalid " + name + " '" + token + "'");
    return std::stoi(token);
}

} // namespace detail

// Reads a binary PGM (P5, one channel) or PPM (P6, three channels) file
// with maxval 255; bytes map to [0, 1] by division by 255.
inline ImageTensor read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    const std::string magic = detail::pnm_token(in, path);
    int channels = 0;
    if (magic == "P5") channels = 1;
    else if (magic == "P6") channels = 3;
    else throw detail::pnm_error(path, 0, "not a binary PGM/PPM (magic '" + magic + "')");

    const int width = detail::pnm_int(in, path, "width");
    const int height = detail::pnm_int(in, path, "height");
    const std::streamoff maxval_at = in.tellg();
    const int maxval = detail::pnm_int(in, path, "maxval");
    if (width < 1 || height < 1)
        throw detail::pnm_error(path, 0, "bad dimensions " + std::to_string(width) +
                                             "x" + std::to_string(height));
    if (maxval != 255)
        throw detail::pnm_error(path, maxval_at,
                                "unsupported maxval " + std::to_string(maxval));
    // exactly one whitespace byte separates the header from the payload
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep))
        throw detail::pnm_error(path, in.tellg(), "missing payload separator");

    const std::size_t count =
        static_cast<std::size_t>(channels) * height * width;
    std::vector<std::uint8_t> bytes(count);
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count)
        throw detail::pnm_error(path, static_cast<std::streamoff>(in.gcount()),
                                "truncated payload, expected " +
                                    std::to_string(count) + " bytes, got " +
                                    std::to_string(in.gcount()));

    // payload is row-major with channels interleaved per pixel
    ImageTensor image(channels, height, width);
    std::size_t pos = 0;
    for (int r = 0; r < height; ++r)
        for (int q = 0; q < width; ++q)
            for (int ch = 0; ch < channels; ++ch)
                image.at(ch, r, q) = static_cast<float>(bytes[pos++]) / 255.0f;
    return image;
}

// Writes P5 (c=1) or P6 (c=3), maxval 255, rounding values to the nearest
// 8-bit level. Exact inverse of read_image for 8-bit-quantized tensors.
inline void write_image(const ImageTensor& image, const std::filesystem::path& path) {
    if (image.channels != 1 && image.channels != 3)
        throw DimensionError("write_image: only 1- or 3-channel images, got " +
                             std::to_string(image.channels));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create " + path.string());

    out << (image.channels == 1 ? "P5" : "P6") << "\n"
        << image.width << " " << image.height << "\n255\n";
    std::vector<std::uint8_t> bytes;
    bytes.reserve(image.size());
    for (int r = 0; r < image.height; ++r)
        for (int q = 0; q < image.width; ++q)
            for (int ch = 0; ch < image.channels; ++ch)
                bytes.push_back(static_cast<std::uint8_t>(quantize8(image.at(ch, r, q))));
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path.string());
}

} // namespace blocklock
