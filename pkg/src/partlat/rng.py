"""Seeded 64-bit xorshift* generator.

Every random choice in partlat goes through :class:`XorShift64Star` so that a
seed fully determines terms, secrets and experiment draws, independently of
the Python version or platform.

Algorithm (Vigna's xorshift64*)::

    x ^= x >> 12
    x ^= x << 25   (mod 2**64)
    x ^= x >> 27
    return (x * 0x2545F4914F6CDD1D) mod 2**64

The initial state is ``splitmix64(seed)``; a zero state is replaced by the
golden-ratio constant ``0x9E3779B97F4A7C15``.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MULTIPLIER = 0x2545F4914F6CDD1D


def splitmix64(x):
    """One round of splitmix64, used for seeding and substream derivation."""
    x = (x + GOLDEN) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def substream_seed(seed, index):
    """Seed for the ``index``-th independent substream of ``seed``."""
    return splitmix64((splitmix64(seed & MASK64) ^ splitmix64(index + 1)) & MASK64)


class XorShift64Star:
    __slots__ = ("state",)

    def __init__(self, seed=0):
        state = splitmix64(int(seed) & MASK64)
        self.state = state or GOLDEN

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * MULTIPLIER) & MASK64

    def below(self, n):
        """Uniform integer in ``[0, n)``; exact for arbitrarily large ``n``.

        Draws ``ceil(bits/64)`` words, concatenates them big-endian, keeps the
        top ``bits`` bits and rejects values ``>= n``.
        """
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        if n == 1:
            return 0
        bits = (n - 1).bit_length()
        words = (bits + 63) // 64
        shift = 64 * words - bits
        while True:
            x = 0
            for _ in range(words):
                x = (x << 64) | self.next_u64()
            x >>= shift
            if x < n:
                return x

    def random(self):
        """Float in ``[0, 1)`` with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items):
        """Fisher-Yates shuffle in place (descending index order)."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def permutation(self, n):
        return self.shuffle(list(range(n)))

    def sample_indices(self, population, k):
        """``k`` distinct indices from ``range(population)``, in draw order."""
        if k > population:
            raise ValueError("sample larger than population")
        chosen = {}
        out = []
        # sparse partial Fisher-Yates
        for i in range(k):
            j = i + self.below(population - i)
            vi = chosen.get(i, i)
            vj = chosen.get(j, j)
            chosen[j] = vi
            chosen[i] = vj
            out.append(vj)
        return out

    def fork(self, index):
        """Independent generator derived from the current state and ``index``."""
        return XorShift64Star(substream_seed(self.state, index))
