"""Session PRNG: splitmix64, tiny serializable state, stable across platforms."""

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed=0):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def next_float(self):
        """Uniform in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def get_state(self):
        return self.state

    def set_state(self, state):
        self.state = int(state) & _MASK
