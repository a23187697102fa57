#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <openssl/evp.h>

#include <json.hpp>

#include "blocklock/errors.hpp"
#include "blocklock/rng.hpp"

namespace blocklock {

// The three keyed block transforms, in their fixed application order.
enum class Transform { Shf = 0, Np = 1, Ffx = 2 };

using TransformList = std::vector<Transform>;

inline const char* to_string(Transform t) {
    switch (t) {
        case Transform::Shf: return "SHF";
        case Transform::Np: return "NP";
        case Transform::Ffx: return "FFX";
    }
    return "?";
}

inline std::string to_string(const TransformList& ts) {
    std::string out;
    for (const Transform t : ts) {
        if (!out.empty()) out += "+";
        out += to_string(t);
    }
    return out;
}

inline Transform parse_transform(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (name == "SHF") return Transform::Shf;
    if (name == "NP") return Transform::Np;
    if (name == "FFX") return Transform::Ffx;
    throw ConfigError("unknown transform '" + name + "' (expected shf, np or ffx)");
}

// Parses "shf,np,ffx"-style lists; result is deduplicated and put in the
// canonical SHF -> NP -> FFX order.
inline TransformList parse_transforms(const std::string& csv) {
    TransformList out;
    std::string token;
    for (std::size_t i = 0; i <= csv.size(); ++i) {
        if (i == csv.size() || csv[i] == ',' || csv[i] == '+') {
            if (!token.empty()) out.push_back(parse_transform(token));
            token.clear();
        } else if (!std::isspace(static_cast<unsigned char>(csv[i]))) {
            token.push_back(csv[i]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw ConfigError("transform list is empty");
    return out;
}

// The secret key set: block size M, channel count, the selected transforms
// and their key material. alpha permutes the p_b = M*M*c intra-block
// positions; beta and gamma are selection bit vectors. Indices are 0-based.
struct KeySet {
    int block_size = 0; // M
    int channels = 0;   // c
    TransformList transforms;
    std::vector<std::uint32_t> alpha; // present iff SHF
    std::vector<std::uint8_t> beta;   // present iff NP
    std::vector<std::uint8_t> gamma;  // present iff FFX
    std::string password;             // present iff FFX
    std::uint64_t seed = 0;

    int block_pixels() const { return block_size * block_size * channels; }

    bool has(Transform t) const {
        return std::find(transforms.begin(), transforms.end(), t) != transforms.end();
    }

    void validate() const {
        if (block_size < 1) throw ValidationError("block_size: must be >= 1");
        if (channels < 1) throw ValidationError("channels: must be >= 1");
        if (transforms.empty()) throw ValidationError("transforms: empty");
        if (!std::is_sorted(transforms.begin(), transforms.end()) ||
            std::adjacent_find(transforms.begin(), transforms.end()) != transforms.end())
            throw ValidationError("transforms: not in canonical SHF,NP,FFX order");
        const std::size_t pb = static_cast<std::size_t>(block_pixels());
        if (has(Transform::Shf)) {
            if (alpha.size() != pb)
                throw ValidationError("alpha: length " + std::to_string(alpha.size()) +
                                      " != block pixels " + std::to_string(pb));
            std::vector<bool> seen(pb, false);
            for (const std::uint32_t a : alpha) {
                if (a >= pb || seen[a])
                    throw ValidationError("alpha not a permutation");
                seen[a] = true;
            }
        } else if (!alpha.empty()) {
            throw ValidationError("alpha: present without SHF");
        }
        if (has(Transform::Np)) {
            if (beta.size() != pb)
                throw ValidationError("beta: length " + std::to_string(beta.size()) +
                                      " != block pixels " + std::to_string(pb));
            for (const std::uint8_t b : beta)
                if (b > 1) throw ValidationError("beta: entries must be 0 or 1");
        } else if (!beta.empty()) {
            throw ValidationError("beta: present without NP");
        }
        if (has(Transform::Ffx)) {
            if (gamma.size() != pb)
                throw ValidationError("gamma: length " + std::to_string(gamma.size()) +
                                      " != block pixels " + std::to_string(pb));
            for (const std::uint8_t g : gamma)
                if (g > 1) throw ValidationError("gamma: entries must be 0 or 1");
            if (password.empty()) throw ValidationError("password: empty with FFX");
        } else if (!gamma.empty()) {
            throw ValidationError("gamma: present without FFX");
        }
    }

    bool operator==(const KeySet&) const = default;
};

// Deterministic key generation. Component streams are sub-seeded as
// seed+1 (alpha), seed+2 (beta), seed+3 (gamma) so that adding or removing
// a transform never perturbs the other components.
inline KeySet generate(int block_size, int channels, const TransformList& transforms,
                       std::uint64_t seed, std::string password = "password") {
    if (block_size < 1 || channels < 1)
        throw ConfigError("generate: block size and channels must be >= 1");
    if (transforms.empty()) throw ConfigError("generate: transform list is empty");

    KeySet k;
    k.block_size = block_size;
    k.channels = channels;
    k.transforms = transforms;
    std::sort(k.transforms.begin(), k.transforms.end());
    k.transforms.erase(std::unique(k.transforms.begin(), k.transforms.end()),
                       k.transforms.end());
    k.seed = seed;

    const std::size_t pb = static_cast<std::size_t>(k.block_pixels());
    if (k.has(Transform::Shf)) {
        SplitMix64 rng(seed + 1);
        k.alpha = random_permutation(pb, rng);
    }
    if (k.has(Transform::Np)) {
        SplitMix64 rng(seed + 2);
        k.beta = random_bits(pb, rng);
    }
    if (k.has(Transform::Ffx)) {
        SplitMix64 rng(seed + 3);
        k.gamma = random_bits(pb, rng);
        k.password = std::move(password);
    }
    k.validate();
    return k;
}

// A forged key set: same shape and password, fresh key material drawn from
// the given seed.
inline KeySet random_incorrect(const KeySet& keyset, std::uint64_t seed) {
    return generate(keyset.block_size, keyset.channels, keyset.transforms, seed,
                    keyset.password.empty() ? "password" : keyset.password);
}

// Exact key-space size: (c*M*M)! for SHF and 2^(c*M*M) for each of NP and
// FFX, multiplied over the selected transforms.
inline mpz_class key_space(int block_size, int channels, const TransformList& transforms) {
    if (block_size < 1 || channels < 1)
        throw ConfigError("key_space: block size and channels must be >= 1");
    if (transforms.empty()) throw ConfigError("key_space: transform list is empty");
    const unsigned long n =
        static_cast<unsigned long>(channels) * block_size * block_size;
    mpz_class total = 1;
    for (const Transform t : transforms) {
        mpz_class part;
        if (t == Transform::Shf) {
            mpz_fac_ui(part.get_mpz_t(), n);
        } else {
            mpz_ui_pow_ui(part.get_mpz_t(), 2ul, n);
        }
        total *= part;
    }
    return total;
}

// Number of unordered index pairs over the n = c*M*M key positions.
inline std::uint64_t pair_count(int block_size, int channels) {
    const std::uint64_t n =
        static_cast<std::uint64_t>(block_size) * block_size * channels;
    if (n < 2)
        throw DomainError("pair_count: need at least 2 positions, got " +
                          std::to_string(n));
    return n * (n - 1) / 2;
}

namespace detail {

inline std::string base64_encode(const std::string& raw) {
    std::string out(4 * ((raw.size() + 2) / 3) + 1, '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                  reinterpret_cast<const unsigned char*>(raw.data()),
                                  static_cast<int>(raw.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

inline std::string base64_decode(const std::string& encoded) {
    if (encoded.size() % 4 != 0)
        throw ValidationError("password: invalid base64 length");
    std::string out(3 * (encoded.size() / 4) + 1, '\0');
    const int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                  reinterpret_cast<const unsigned char*>(encoded.data()),
                                  static_cast<int>(encoded.size()));
    if (n < 0) throw ValidationError("password: invalid base64");
    std::size_t len = static_cast<std::size_t>(n);
    for (auto it = encoded.rbegin(); it != encoded.rend() && *it == '='; ++it)
        --len; // EVP_DecodeBlock counts padding bytes
    out.resize(len);
    return out;
}

} // namespace detail

inline constexpr int kKeyFileVersion = 1;

inline nlohmann::json keyset_to_json(const KeySet& k) {
    k.validate();
    nlohmann::json j;
    j["version"] = kKeyFileVersion;
    j["M"] = k.block_size;
    j["channels"] = k.channels;
    std::vector<std::string> names;
    for (const Transform t : k.transforms) names.emplace_back(to_string(t));
    j["transforms"] = names;
    if (k.has(Transform::Shf)) j["alpha"] = k.alpha;
    if (k.has(Transform::Np)) j["beta"] = k.beta;
    if (k.has(Transform::Ffx)) {
        j["gamma"] = k.gamma;
        j["password"] = detail::base64_encode(k.password);
    }
    j["seed"] = k.seed;
    return j;
}

inline KeySet keyset_from_json(const nlohmann::json& j) {
    try {
        const int version = j.at("version").get<int>();
        if (version != kKeyFileVersion)
            throw ValidationError("version: expected " +
                                  std::to_string(kKeyFileVersion) + ", got " +
                                  std::to_string(version));
        KeySet k;
        k.block_size = j.at("M").get<int>();
        k.channels = j.at("channels").get<int>();
        for (const auto& name : j.at("transforms"))
            k.transforms.push_back(parse_transform(name.get<std::string>()));
        if (j.contains("alpha")) k.alpha = j["alpha"].get<std::vector<std::uint32_t>>();
        if (j.contains("beta")) k.beta = j["beta"].get<std::vector<std::uint8_t>>();
        if (j.contains("gamma")) k.gamma = j["gamma"].get<std::vector<std::uint8_t>>();
        if (j.contains("password"))
            k.password = detail::base64_decode(j["password"].get<std::string>());
        if (j.contains("seed")) k.seed = j["seed"].get<std::uint64_t>();
        k.validate();
        return k;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("key file: ") + e.what());
    }
}

inline void save(const KeySet& keyset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot create " + path.string());
    out << keyset_to_json(keyset).dump(2) << "\n";
    if (!out) throw IoError("short write to " + path.string());
}

inline KeySet load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return keyset_from_json(j);
}

} // namespace blocklock
