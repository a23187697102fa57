#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <openssl/evp.h>

#include "blocklock/errors.hpp"

namespace blocklock {

// Format-preserving encryption on the integers 0..999: a keyed bijection
// built from a 10-round Feistel network over 3 decimal digits with an
// HMAC-SHA256 round function.
//
// Construction (bit-exact contract, identical on every platform):
//   - state: 3 decimal digits, most significant first
//   - round t in 0..9: left width L = 1 if t is even, 2 if t is odd
//   - F = HMAC-SHA256(key = password,
//         msg = byte [t] || ASCII digits of the right part, zero padded)
//     interpreted as a big-endian integer, reduced mod 10^L
//   - new left = (left + F) mod 10^L, then state := right || new left
// Decryption walks the rounds in reverse and subtracts F.
class FeistelCipher {
public:
    static constexpr int kDomain = 1000;
    static constexpr int kRounds = 10;

    explicit FeistelCipher(std::string password) : password_(std::move(password)) {}

    const std::string& password() const { return password_; }

    int encrypt(int n) const {
        check_domain(n, "encrypt");
        std::array<int, 3> d = digits(n);
        for (int t = 0; t < kRounds; ++t) {
            const int lw = (t % 2 == 0) ? 1 : 2;
            const int rw = 3 - lw;
            const int mod = (lw == 1) ? 10 : 100;
            int left = 0;
            for (int i = 0; i < lw; ++i) left = left * 10 + d[i];
            const int f = round_value(t, d.data() + lw, rw, mod);
            const int new_left = (left + f) % mod;
            std::array<int, 3> next{};
            for (int i = 0; i < rw; ++i) next[i] = d[lw + i];
            if (lw == 1) {
                next[2] = new_left;
            } else {
                next[1] = new_left / 10;
                next[2] = new_left % 10;
            }
            d = next;
        }
        return d[0] * 100 + d[1] * 10 + d[2];
    }

    int decrypt(int n) const {
        check_domain(n, "decrypt");
        std::array<int, 3> d = digits(n);
        for (int t = kRounds - 1; t >= 0; --t) {
            const int lw = (t % 2 == 0) ? 1 : 2;
            const int rw = 3 - lw;
            const int mod = (lw == 1) ? 10 : 100;
            int new_left = 0;
            for (int i = 0; i < lw; ++i) new_left = new_left * 10 + d[rw + i];
            const int f = round_value(t, d.data(), rw, mod);
            const int left = ((new_left - f) % mod + mod) % mod;
            std::array<int, 3> prev{};
            if (lw == 1) {
                prev[0] = left;
            } else {
                prev[0] = left / 10;
                prev[1] = left % 10;
            }
            for (int i = 0; i < rw; ++i) prev[lw + i] = d[i];
            d = prev;
        }
        return d[0] * 100 + d[1] * 10 + d[2];
    }

private:
    static void check_domain(int n, const char* op) {
        if (n < 0 || n >= kDomain)
            throw DomainError(std::string(op) + ": input " + std::to_string(n) +
                              " outside cipher domain 0.." +
                              std::to_string(kDomain - 1));
    }

    static std::array<int, 3> digits(int n) {
        return {n / 100, (n / 10) % 10, n % 10};
    }

    // HMAC-SHA256 over [t] || right digits as ASCII, big-endian mod `mod`.
    int round_value(int t, const int* right, int right_len, int mod) const {
        unsigned char msg[4];
        msg[0] = static_cast<unsigned char>(t);
        for (int i = 0; i < right_len; ++i)
            msg[1 + i] = static_cast<unsigned char>('0' + right[i]);

        unsigned char digest[EVP_MAX_MD_SIZE];
        std::size_t digest_len = 0;
        if (EVP_Q_mac(nullptr, "HMAC", nullptr, "SHA256", nullptr,
                      password_.data(), password_.size(), msg,
                      static_cast<std::size_t>(1 + right_len), digest,
                      sizeof(digest), &digest_len) == nullptr)
            throw Error("HMAC-SHA256 failed");

        unsigned rem = 0;
        for (std::size_t i = 0; i < digest_len; ++i)
            rem = (rem * 256u + digest[i]) % static_cast<unsigned>(mod);
        return static_cast<int>(rem);
    }

    std::string password_;
};

} // namespace blocklock
