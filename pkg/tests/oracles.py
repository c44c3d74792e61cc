"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written from the definitions, not from
the production code: the index evaluator runs in 50-digit arithmetic
term by term, and the rule miner enumerates every candidate episode
and every subsequence occurrence by brute force.  Slow is fine; these
only run in tests.
"""

from __future__ import annotations

import itertools
from datetime import datetime, timedelta

import mpmath

mpmath.mp.dps = 50

_EPOCH = datetime(1970, 1, 1)


def at(seconds: float) -> datetime:
    """Timestamp helper: seconds after the epoch."""
    return _EPOCH + timedelta(seconds=seconds)


# --- high-precision index ----------------------------------------------------


def index_reference(temperature: float, salinity: float, pressure: float) -> mpmath.mpf:
    """Evaluate the oscillation index in extended precision.

    Inputs are taken as exact binary doubles; constants as exact
    decimals.  Summation via fsum, one term per physical effect.
    """
    t = mpmath.mpf(temperature)
    s = mpmath.mpf(salinity)
    p = mpmath.mpf(pressure)
    terms = [
        mpmath.mpf("1.3247"),
        -(mpmath.mpf("2.5e-6") * t * t),
        s * (mpmath.mpf("2e-4") - mpmath.mpf("8e-7") * t),
        mpmath.mpf(3300) / (p * p),
        -(mpmath.mpf("3.2e7") / (p * p * p * p)),
    ]
    return mpmath.fsum(terms)


def gradient_reference_fd(
    temperature: float, salinity: float, pressure: float, h: str = "1e-4"
) -> mpmath.mpf:
    """Central finite difference of the index in T, in extended precision."""
    t = mpmath.mpf(temperature)
    hh = mpmath.mpf(h)
    # evaluate at t +/- h without round-tripping through float
    s = mpmath.mpf(salinity)
    p = mpmath.mpf(pressure)

    def f(tt: mpmath.mpf) -> mpmath.mpf:
        return mpmath.fsum(
            [
                mpmath.mpf("1.3247"),
                -(mpmath.mpf("2.5e-6") * tt * tt),
                s * (mpmath.mpf("2e-4") - mpmath.mpf("8e-7") * tt),
                mpmath.mpf(3300) / (p * p),
                -(mpmath.mpf("3.2e7") / (p * p * p * p)),
            ]
        )

    return (f(t + hh) - f(t - hh)) / (2 * hh)


# --- brute-force episode mining ----------------------------------------------


def occurrences(
    items: tuple[tuple[datetime, int], ...],
    episode: tuple[int, ...],
    window: timedelta,
) -> list[tuple[datetime, datetime]]:
    """Every (start, end) of episode as a subsequence with span <= window.

    Full enumeration over index combinations; no greedy shortcuts.
    """
    n = len(items)
    m = len(episode)
    found = []
    for combo in itertools.combinations(range(n), m):
        if all(items[i][1] == episode[j] for j, i in enumerate(combo)):
            t0 = items[combo[0]][0]
            t1 = items[combo[-1]][0]
            if t1 - t0 <= window:
                found.append((t0, t1))
    return found


def event_contains_brute(items, episode, window) -> bool:
    return bool(occurrences(items, episode, window))


def rule_holds_brute(items, antecedent, consequent, win_a, win_c, lag) -> bool:
    for _, a_end in occurrences(items, antecedent, win_a):
        for c_start, _ in occurrences(items, consequent, win_c):
            if a_end < c_start <= a_end + lag:
                return True
    return False


def support_brute(events, antecedent, consequent, win_a, win_c, lag) -> int:
    return sum(
        1
        for ev in events
        if rule_holds_brute(ev.items, antecedent, consequent, win_a, win_c, lag)
    )


def episode_count_brute(events, episode, window) -> int:
    return sum(1 for ev in events if event_contains_brute(ev.items, episode, window))


def mine_rules_brute(events, min_support, max_len, win_a, win_c, lag):
    """All rules with support >= min_support, by exhaustive enumeration.

    Returns (antecedent, consequent, support, confidence) tuples in the
    same deterministic order the production miner uses.
    """
    alphabet = sorted({sym for ev in events for _, sym in ev.items})
    episodes = []
    for length in range(1, max_len + 1):
        episodes.extend(itertools.product(alphabet, repeat=length))
    rules = []
    for ant in episodes:
        denom = episode_count_brute(events, ant, win_a)
        for cons in episodes:
            sup = support_brute(events, ant, cons, win_a, win_c, lag)
            if sup >= min_support:
                rules.append((ant, cons, sup, sup / denom))
    rules.sort(key=lambda r: (-r[3], -r[2], r[0], r[1]))
    return rules


def confidence_brute(events, antecedent, consequent, win_a, win_c, lag) -> float:
    denom = episode_count_brute(events, antecedent, win_a)
    if denom == 0:
        return 0.0
    return support_brute(events, antecedent, consequent, win_a, win_c, lag) / denom


# --- random mining instances ---------------------------------------------------


def random_instance(rng):
    """One random mining problem: events plus parameters.

    Sample counts stay at or below 20 and alphabets at or below 3, with
    timestamp ties and varied gaps to stress the occurrence logic.
    """
    from oceanmine.episodes import segment_events

    n = rng.randint(1, 20)
    k = rng.randint(1, 3)
    t = 0
    samples = []
    for _ in range(n):
        t += rng.choice([0, 1, 1, 2, 3, 7])
        samples.append((at(t), rng.randrange(k)))
    delta = timedelta(seconds=rng.choice([1, 2, 4, 10, 10 ** 6]))
    events = segment_events(samples, delta)
    params = dict(
        min_support=rng.randint(1, 3),
        max_len=rng.randint(1, 3),
        win_a=timedelta(seconds=rng.choice([0, 1, 2, 5])),
        win_c=timedelta(seconds=rng.choice([0, 1, 2, 5])),
        lag=timedelta(seconds=rng.choice([1, 2, 5, 10])),
    )
    return events, params
