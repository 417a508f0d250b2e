"""Pure-Python ChaCha20 stream keyed by SplitMix64, mirroring RngStream.
Run with `python3 rng_reference.py <out.csv>`; writes the first uniform and
normal draws for seed 42, stream 0 (two separate fresh streams)."""
import math
import struct
import sys

MASK = (1 << 64) - 1


def splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return state, z ^ (z >> 31)


def rotl(v, c):
    return ((v << c) & 0xFFFFFFFF) | (v >> (32 - c))


def quarter(s, a, b, c, d):
    s[a] = (s[a] + s[b]) & 0xFFFFFFFF; s[d] = rotl(s[d] ^ s[a], 16)
    s[c] = (s[c] + s[d]) & 0xFFFFFFFF; s[b] = rotl(s[b] ^ s[c], 12)
    s[a] = (s[a] + s[b]) & 0xFFFFFFFF; s[d] = rotl(s[d] ^ s[a], 8)
    s[c] = (s[c] + s[d]) & 0xFFFFFFFF; s[b] = rotl(s[b] ^ s[c], 7)


def block(key_words, counter, stream):
    init = [0x61707865, 0x3320646E, 0x79622D32, 0x6B206574] + key_words + [
        counter & 0xFFFFFFFF, counter >> 32, stream & 0xFFFFFFFF, stream >> 32]
    s = list(init)
    for _ in range(10):
        quarter(s, 0, 4, 8, 12); quarter(s, 1, 5, 9, 13)
        quarter(s, 2, 6, 10, 14); quarter(s, 3, 7, 11, 15)
        quarter(s, 0, 5, 10, 15); quarter(s, 1, 6, 11, 12)
        quarter(s, 2, 7, 8, 13); quarter(s, 3, 4, 9, 14)
    return [(x + y) & 0xFFFFFFFF for x, y in zip(s, init)]


class Stream:
    def __init__(self, seed, stream_id):
        state = seed
        key = b""
        for _ in range(4):
            state, out = splitmix64(state)
            key += struct.pack("<Q", out)
        self.key = list(struct.unpack("<8I", key))
        self.stream = stream_id
        self.counter = 0
        self.words = []
        self.spare = None

    def next_u64(self):
        if len(self.words) < 2:
            self.words += block(self.key, self.counter, self.stream)
            self.counter += 1
        lo, hi = self.words[0], self.words[1]
        del self.words[:2]
        return lo | (hi << 32)

    def uniform01(self):
        return (self.next_u64() >> 11) * 2.0 ** -53

    def normal(self):
        if self.spare is not None:
            v, self.spare = self.spare, None
            return v
        while True:
            u = 2 * self.uniform01() - 1
            v = 2 * self.uniform01() - 1
            s = u * u + v * v
            if 0 < s < 1:
                m = math.sqrt(-2 * math.log(s) / s)
                self.spare = v * m
                return u * m


def main(path):
    uni = Stream(42, 0)
    nor = Stream(42, 0)
    with open(path, "w") as f:
        f.write("kind,index,value\n")
        for i in range(10):
            f.write(f"uniform,{i},{uni.uniform01():.17g}\n")
        for i in range(10):
            f.write(f"normal,{i},{nor.normal():.17g}\n")


if __name__ == "__main__":
    main(sys.argv[1])
