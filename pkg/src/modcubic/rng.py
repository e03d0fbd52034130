"""Counter-based SplitMix64 streams keyed by (seed, p, index).

Algorithm (all arithmetic mod 2**64):

    GOLDEN = 0x9E3779B97F4A7C15
    mix64(z):
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        return z ^ (z >> 31)
    splitmix64(x) = mix64(x + GOLDEN)

    key(seed, p, index) = splitmix64(splitmix64(splitmix64(seed) ^ p) ^ index)
    output k (k = 0, 1, ...) = mix64(key + (k + 1) * GOLDEN)

So output k of a stream is the k-th value of a standard SplitMix64 generator
seeded with `key`. With key = 0 the first output is 0xE220A8397B1DCDAF.

randint(lo, hi) draws outputs until one is below the largest multiple of
n = hi - lo + 1 not exceeding 2**64, then returns lo + output % n.

Curve i of prime p uses stream (seed, p, i) and draws a = randint(1, p-1),
then c = randint(0, p-1). Random spaced families use stream
(seed, p, FAMILY_STREAM).
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
FAMILY_STREAM = 1 << 63


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(x: int) -> int:
    return mix64(x + GOLDEN)


def stream_key(seed: int, p: int, index: int) -> int:
    k = splitmix64(seed & MASK64)
    k = splitmix64(k ^ (p & MASK64))
    return splitmix64(k ^ (index & MASK64))


class Stream:
    def __init__(self, seed: int, p: int, index: int):
        self.key = stream_key(seed, p, index)
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GOLDEN)

    def randint(self, lo: int, hi: int) -> int:
        n = hi - lo + 1
        if n <= 0:
            raise ValueError(f"empty range [{lo}, {hi}]")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            z = self.next_u64()
            if z < limit:
                return lo + z % n


def sample_curve(seed: int, p: int, index: int):
    """(a, c) for curve `index` of prime p."""
    s = Stream(seed, p, index)
    a = s.randint(1, p - 1)
    c = s.randint(0, p - 1)
    return a, c
