"""Portable seeded randomness.

Every draw in this package goes through ``random.Random.random()`` (MT19937,
53-bit floats).  Python guarantees that method's output sequence for a given
seed across versions; the integer helpers of ``random`` (``randrange``,
``shuffle``, ``choice``) carry no such guarantee, so the ones needed here are
derived from ``random()`` directly.  String seeds go through the version-2
seeder (SHA-512 of the string), which is also stable.
"""

import random


def make_rng(*key) -> random.Random:
    """Generator seeded from a tuple of ints/strings, e.g. ``make_rng(seed, "FR", 17)``."""
    return random.Random("/".join(str(k) for k in key))


def randbelow(rng: random.Random, n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    return min(int(rng.random() * n), n - 1)


def shuffle(rng: random.Random, items: list) -> None:
    """In-place Fisher-Yates shuffle."""
    for i in range(len(items) - 1, 0, -1):
        j = randbelow(rng, i + 1)
        items[i], items[j] = items[j], items[i]


def weighted_choice(rng: random.Random, choices, weights):
    u = rng.random() * sum(weights)
    acc = 0.0
    for c, w in zip(choices, weights):
        acc += w
        if u < acc:
            return c
    # float round-off at the top of the range
    return next(c for c, w in zip(reversed(choices), reversed(weights)) if w > 0)
