"""Counter-based random streams with a pinned draw contract.

Every stochastic quantity in this package is derived from a Philox-4x64
counter-based bit generator keyed by ``(master_seed, substream)``, where the
substream index is the trial number.  Keyed streams are independent by
construction, so trial results do not depend on scheduling or worker count.

The draw contract, fixed so that runs are reproducible bit-for-bit:

* raw draws are the Philox 64-bit output words, consumed in sequence;
* ``uniform01`` maps one word w to ``(w >> 11) * 2**-53``;
* ``index(m)`` maps one word w to ``w % m`` (modulo bias is < m/2**64 and
  irrelevant at the candidate-set sizes used here);
* ``permutation(n)`` is a backward Fisher-Yates shuffle of ``[1..n]``
  consuming exactly ``n - 1`` words via ``index``;
* inside a trial, the arrival permutation is drawn first, then per-step
  algorithm randomness in arrival order.

Uniform picks from a candidate set always index into the candidates sorted
ascending by vertex id and consume exactly one word.
"""

from __future__ import annotations

import numpy as np

_BUFFER = 4096
_INV53 = 1.0 / (1 << 53)


class RandomStream:
    """Buffered view of one keyed Philox word sequence."""

    def __init__(self, master_seed: int, substream: int = 0):
        if not 0 <= master_seed < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit value")
        if not 0 <= substream < 2**64:
            raise ValueError("substream must be an unsigned 64-bit value")
        self.master_seed = master_seed
        self.substream = substream
        key = np.array([master_seed, substream], dtype=np.uint64)
        self._bitgen = np.random.Philox(key=key)
        self._buf = np.empty(0, dtype=np.uint64)
        self._pos = 0

    def take(self, k: int) -> np.ndarray:
        """Return the next k raw 64-bit words as an array."""
        out = np.empty(k, dtype=np.uint64)
        filled = 0
        while filled < k:
            if self._pos >= len(self._buf):
                self._buf = self._bitgen.random_raw(max(_BUFFER, k - filled))
                self._pos = 0
            chunk = min(k - filled, len(self._buf) - self._pos)
            out[filled:filled + chunk] = self._buf[self._pos:self._pos + chunk]
            self._pos += chunk
            filled += chunk
        return out

    def next_word(self) -> int:
        return int(self.take(1)[0])

    def uniform01(self) -> float:
        return (self.next_word() >> 11) * _INV53

    def index(self, m: int) -> int:
        """Uniform index in [0, m) from one raw word."""
        if m <= 0:
            raise ValueError("index() needs a nonempty candidate set")
        return self.next_word() % m

    def permutation(self, n: int) -> np.ndarray:
        """Uniform permutation of 1..n (backward Fisher-Yates, n-1 words)."""
        order = np.arange(1, n + 1, dtype=np.int64)
        for i in range(n - 1, 0, -1):
            j = self.index(i + 1)
            order[i], order[j] = order[j], order[i]
        return order


def trial_stream(master_seed: int, trial: int) -> RandomStream:
    """Stream for one Monte Carlo trial: substream = trial index."""
    return RandomStream(master_seed, trial)
