#!/usr/bin/env python3
"""Straight-line generator for the 3-digit Feistel cipher test vectors.

Independent of the C++ library: computes the same construction directly
with hmac/hashlib so the committed vectors can be cross-checked.

Construction (10 rounds, alternating split, HMAC-SHA256 round function):
  - state: 3 decimal digits, most significant first
  - round t in 0..9: left width L = 1 if t is even else 2
  - round value F = HMAC-SHA256(key=password,
        msg=bytes([t]) + ASCII digits of the right part, zero padded)
    taken as a big-endian integer mod 10^L
  - new left = (left + F) mod 10^L, then state := right || new left
"""

import hmac
import hashlib


def round_value(password: bytes, t: int, right_digits: str, width: int) -> int:
    digest = hmac.new(password, bytes([t]) + right_digits.encode("ascii"),
                      hashlib.sha256).digest()
    return int.from_bytes(digest, "big") % (10 ** width)


def encrypt(password: bytes, n: int) -> int:
    assert 0 <= n <= 999
    state = f"{n:03d}"
    for t in range(10):
        lw = 1 if t % 2 == 0 else 2
        left = int(state[:lw])
        right = state[lw:]
        f = round_value(password, t, right, lw)
        new_left = (left + f) % (10 ** lw)
        state = right + f"{new_left:0{lw}d}"
    return int(state)


def decrypt(password: bytes, n: int) -> int:
    assert 0 <= n <= 999
    state = f"{n:03d}"
    for t in reversed(range(10)):
        lw = 1 if t % 2 == 0 else 2
        right = state[: 3 - lw]
        new_left = int(state[3 - lw:])
        f = round_value(password, t, right, lw)
        left = (new_left - f) % (10 ** lw)
        state = f"{left:0{lw}d}" + right
    return int(state)


if __name__ == "__main__":
    pw = b"password"
    table = sorted({0, 1, 7, 42, 100, 255, 256, 500, 998, 999})
    print("// password \"password\"")
    for n in table:
        e = encrypt(pw, n)
        assert decrypt(pw, e) == n
        print(f"{{{n}, {e}}},")
    perm = [encrypt(pw, n) for n in range(1000)]
    assert sorted(perm) == list(range(1000)), "not a bijection"
    other = [encrypt(b"hunter2", n) for n in range(1000)]
    assert sorted(other) == list(range(1000))
    assert perm != other
    print("// bijection over 0..999 verified for both passwords")
