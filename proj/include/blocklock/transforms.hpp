#pragma once

#include <array>
#include <optional>
#include <vector>

#include "blocklock/errors.hpp"
#include "blocklock/fpe.hpp"
#include "blocklock/keyset.hpp"
#include "blocklock/tensor.hpp"

namespace blocklock {

// A key set bound to its cipher, with the FFX value table precomputed.
// Immutable after construction; transform() is pure and thread-safe.
struct TransformPipeline {
    KeySet keyset;
    std::optional<FeistelCipher> cipher;       // present iff FFX selected
    std::array<int, 256> encrypt_table{};      // v -> Enc(v), valid iff cipher

    static TransformPipeline from_keyset(KeySet k) {
        k.validate();
        TransformPipeline p;
        p.keyset = std::move(k);
        if (p.keyset.has(Transform::Ffx)) {
            p.cipher.emplace(p.keyset.password);
            for (int v = 0; v < 256; ++v)
                p.encrypt_table[v] = p.cipher->encrypt(v);
        }
        return p;
    }
};

// Pixel shuffling: scatters position k to position alpha[k] inside every
// block. Pure permutation on the stored values, no quantization.
inline BlockTensor apply_shf(const BlockTensor& blocks,
                             const std::vector<std::uint32_t>& alpha) {
    if (static_cast<int>(alpha.size()) != blocks.block_pixels)
        throw DimensionError("apply_shf: alpha length " + std::to_string(alpha.size()) +
                             " != block pixels " + std::to_string(blocks.block_pixels));
    BlockTensor out(blocks.block_rows, blocks.block_cols, blocks.block_pixels);
    for (int i = 0; i < blocks.block_rows; ++i)
        for (int j = 0; j < blocks.block_cols; ++j)
            for (int k = 0; k < blocks.block_pixels; ++k)
                out.at(i, j, static_cast<int>(alpha[k])) = blocks.at(i, j, k);
    return out;
}

// Negative/positive transformation: on the 8-bit scale, XOR with 255 where
// beta is set. Applying it twice with the same beta is the identity.
inline BlockTensor apply_np(const BlockTensor& blocks,
                            const std::vector<std::uint8_t>& beta) {
    if (static_cast<int>(beta.size()) != blocks.block_pixels)
        throw DimensionError("apply_np: beta length " + std::to_string(beta.size()) +
                             " != block pixels " + std::to_string(blocks.block_pixels));
    BlockTensor out(blocks.block_rows, blocks.block_cols, blocks.block_pixels);
    for (int i = 0; i < blocks.block_rows; ++i)
        for (int j = 0; j < blocks.block_cols; ++j)
            for (int k = 0; k < blocks.block_pixels; ++k) {
                int v = quantize8(blocks.at(i, j, k));
                if (beta[k]) v ^= 0xFF;
                out.at(i, j, k) = static_cast<float>(v) / 255.0f;
            }
    return out;
}

// FFX encryption: on the 8-bit scale, replace v by Enc(v) where gamma is
// set, then rescale every value by the cipher-domain maximum 999.
inline BlockTensor apply_ffx(const BlockTensor& blocks,
                             const std::vector<std::uint8_t>& gamma,
                             const FeistelCipher& cipher) {
    if (static_cast<int>(gamma.size()) != blocks.block_pixels)
        throw DimensionError("apply_ffx: gamma length " + std::to_string(gamma.size()) +
                             " != block pixels " + std::to_string(blocks.block_pixels));
    std::array<int, 256> table{};
    for (int v = 0; v < 256; ++v) table[v] = cipher.encrypt(v);

    constexpr float kMax = static_cast<float>(FeistelCipher::kDomain - 1);
    BlockTensor out(blocks.block_rows, blocks.block_cols, blocks.block_pixels);
    for (int i = 0; i < blocks.block_rows; ++i)
        for (int j = 0; j < blocks.block_cols; ++j)
            for (int k = 0; k < blocks.block_pixels; ++k) {
                int v = quantize8(blocks.at(i, j, k));
                if (gamma[k]) v = table[v];
                out.at(i, j, k) = static_cast<float>(v) / kMax;
            }
    return out;
}

// Full keyed transformation: segment, apply the selected transforms in
// SHF -> NP -> FFX order on a single 8-bit quantization of the block
// values, rescale once at the end, integrate. The final divisor is the
// cipher-domain maximum 999 when FFX is selected and 255 otherwise.
inline ImageTensor transform(const ImageTensor& image, const TransformPipeline& pipeline) {
    const KeySet& k = pipeline.keyset;
    if (image.channels != k.channels)
        throw DimensionError("transform: image has " + std::to_string(image.channels) +
                             " channels, key expects " + std::to_string(k.channels));
    const BlockTensor blocks = segment(image, k.block_size);
    const int pb = blocks.block_pixels;

    std::vector<int> values(static_cast<std::size_t>(pb));
    std::vector<int> shuffled(static_cast<std::size_t>(pb));
    const float divisor = k.has(Transform::Ffx)
                              ? static_cast<float>(FeistelCipher::kDomain - 1)
                              : 255.0f;

    BlockTensor out(blocks.block_rows, blocks.block_cols, pb);
    for (int i = 0; i < blocks.block_rows; ++i)
        for (int j = 0; j < blocks.block_cols; ++j) {
            for (int p = 0; p < pb; ++p) values[p] = quantize8(blocks.at(i, j, p));
            if (k.has(Transform::Shf)) {
                for (int p = 0; p < pb; ++p) shuffled[k.alpha[p]] = values[p];
                values.swap(shuffled);
            }
            if (k.has(Transform::Np))
                for (int p = 0; p < pb; ++p)
                    if (k.beta[p]) values[p] ^= 0xFF;
            if (k.has(Transform::Ffx))
                for (int p = 0; p < pb; ++p)
                    if (k.gamma[p]) values[p] = pipeline.encrypt_table[values[p]];
            for (int p = 0; p < pb; ++p)
                out.at(i, j, p) = static_cast<float>(values[p]) / divisor;
        }
    return integrate(out, k.block_size);
}

// Inverse of transform for SHF/NP pipelines; recovers the 8-bit
// quantization of the original image. FFX pipelines are rejected: the
// uniform division by 999 merges un-encrypted values under 8-bit
// re-quantization, so no exact inverse exists on the stored tensors.
inline ImageTensor invert(const ImageTensor& image, const TransformPipeline& pipeline) {
    const KeySet& k = pipeline.keyset;
    if (k.has(Transform::Ffx))
        throw UnsupportedError("invert: pipelines containing FFX are not invertible");
    if (image.channels != k.channels)
        throw DimensionError("invert: image has " + std::to_string(image.channels) +
                             " channels, key expects " + std::to_string(k.channels));
    const BlockTensor blocks = segment(image, k.block_size);
    const int pb = blocks.block_pixels;

    std::vector<int> values(static_cast<std::size_t>(pb));
    std::vector<int> gathered(static_cast<std::size_t>(pb));
    BlockTensor out(blocks.block_rows, blocks.block_cols, pb);
    for (int i = 0; i < blocks.block_rows; ++i)
        for (int j = 0; j < blocks.block_cols; ++j) {
            for (int p = 0; p < pb; ++p) values[p] = quantize8(blocks.at(i, j, p));
            if (k.has(Transform::Np))
                for (int p = 0; p < pb; ++p)
                    if (k.beta[p]) values[p] ^= 0xFF;
            if (k.has(Transform::Shf)) {
                for (int p = 0; p < pb; ++p) gathered[p] = values[k.alpha[p]];
                values.swap(gathered);
            }
            for (int p = 0; p < pb; ++p)
                out.at(i, j, p) = static_cast<float>(values[p]) / 255.0f;
        }
    return integrate(out, k.block_size);
}

} // namespace blocklock
