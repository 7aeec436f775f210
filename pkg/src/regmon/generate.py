"""Seeded random monitor generation for fuzzing and cross-validation.

The generator is uniform over available constructors with geometric depth
decay: at each node it keeps descending with probability ``descend`` (split
evenly between prefix and sum) until the depth budget runs out, then draws a
leaf uniformly.  The variable pool defaults to ``x`` and ``y``.  Results are
deterministic functions of the ``random.Random`` state passed in.
"""

from __future__ import annotations

import random

from .terms import END, NO, YES, Alphabet, Monitor, Prefix, Sum, Var

DEFAULT_VARS = ("x", "y")


def random_monitor(
    rng: random.Random,
    alphabet: Alphabet,
    max_depth: int,
    var_pool: tuple[str, ...] = (),
    descend: float = 0.7,
) -> Monitor:
    leaves: list[Monitor] = [END, YES, NO, *(Var(v) for v in var_pool)]
    if max_depth <= 0 or rng.random() >= descend:
        return rng.choice(leaves)
    if rng.random() < 0.5:
        action = rng.choice(alphabet.sorted_actions())
        return Prefix(action, random_monitor(rng, alphabet, max_depth - 1, var_pool, descend))
    return Sum(
        random_monitor(rng, alphabet, max_depth - 1, var_pool, descend),
        random_monitor(rng, alphabet, max_depth - 1, var_pool, descend),
    )


def random_closed_monitor(
    rng: random.Random, alphabet: Alphabet, max_depth: int, descend: float = 0.7
) -> Monitor:
    return random_monitor(rng, alphabet, max_depth, (), descend)


def random_open_monitor(
    rng: random.Random,
    alphabet: Alphabet,
    max_depth: int,
    var_pool: tuple[str, ...] = DEFAULT_VARS,
    descend: float = 0.7,
) -> Monitor:
    return random_monitor(rng, alphabet, max_depth, var_pool, descend)
