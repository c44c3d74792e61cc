"""Time-lagged episode rule mining over discretized index series.

The series is cut into events (maximal runs whose inter-sample gaps
stay within delta), values are discretized into k quantile classes,
and serial episodes (ordered symbol sequences) are mined level-wise.
A rule

    antecedent [win_a]  =>  consequent [win_c]   after lag

holds in an event when the antecedent occurs as a time-ordered
subsequence spanning at most win_a, and the consequent occurs as a
subsequence spanning at most win_c whose first sample falls strictly
after the antecedent's last sample but no later than lag after it.
Support counts events (binary per event), confidence divides support
by the number of events containing the antecedent at all.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, SeriesTooShort
from .oscillation import IndexSample

Episode = tuple[int, ...]

_EPOCH = datetime(1970, 1, 1)

DEFAULT_K = 3
DEFAULT_MAX_LEN = 2
DEFAULT_MIN_SUPPORT = 2

# Class labels for the default three-way split; other alphabets fall
# back to numbered classes.
_K3_LABELS = ("LOW", "MID", "HIGH")


@dataclass(frozen=True)
class Event:
    """A maximal run of samples with bounded inter-sample gaps."""

    items: tuple[tuple[datetime, int], ...]

    @property
    def start(self) -> datetime:
        return self.items[0][0]

    @property
    def end(self) -> datetime:
        return self.items[-1][0]


@dataclass(frozen=True)
class EpisodeRule:
    antecedent: Episode
    consequent: Episode
    win_a: timedelta
    win_c: timedelta
    lag: timedelta
    support: int
    confidence: float
    antecedent_events: int


def symbol_label(class_id: int, k: int = DEFAULT_K) -> str:
    if k == 3 and 0 <= class_id < 3:
        return _K3_LABELS[class_id]
    return f"C{class_id}"


def episode_label(episode: Episode, k: int = DEFAULT_K) -> str:
    return "+".join(symbol_label(s, k) for s in episode)


def rule_id(rule: EpisodeRule, k: int = DEFAULT_K) -> str:
    return f"{episode_label(rule.antecedent, k)}=>{episode_label(rule.consequent, k)}"


# --- discretization and event segmentation -------------------------------


def discretize(series: Sequence[IndexSample], k: int = DEFAULT_K) -> list[tuple[datetime, int]]:
    """Map each sample to a quantile class in [0, k).

    Class boundaries are the k-quantiles of this series' values; a
    value lands in class c when it lies strictly above c boundaries,
    so intervals are half-open with the top class closed above.  A
    constant series maps everything to class 0.
    """
    if k < 1:
        raise ConfigError(f"class count must be >= 1, got {k}")
    if not series:
        return []
    values = [s.n_value for s in series]
    if min(values) == max(values) or k == 1:
        return [(s.observed_at, 0) for s in series]
    bounds = [float(np.quantile(values, i / k)) for i in range(1, k)]
    out = []
    for s in series:
        cls = sum(1 for b in bounds if s.n_value > b)
        out.append((s.observed_at, cls))
    return out


def segment_events(
    samples: Iterable[tuple[datetime, int]], delta: timedelta
) -> list[Event]:
    """Split time-ordered (timestamp, class) pairs on gaps above delta."""
    if delta < timedelta(0):
        raise ConfigError(f"delta must be non-negative, got {delta}")
    events: list[Event] = []
    run: list[tuple[datetime, int]] = []
    prev: datetime | None = None
    for ts, sym in samples:
        if prev is not None and ts - prev > delta:
            events.append(Event(items=tuple(run)))
            run = []
        run.append((ts, sym))
        prev = ts
    if run:
        events.append(Event(items=tuple(run)))
    return events


def build_events(
    series: Sequence[IndexSample], delta: timedelta, k: int = DEFAULT_K
) -> list[Event]:
    """Discretize a series and segment it into events."""
    return segment_events(discretize(series, k), delta)


# --- occurrence tests ------------------------------------------------------


def _feasible_starts(event: Event, episode: Episode, window: timedelta) -> list[datetime]:
    """Times at which an occurrence of episode can begin, span <= window.

    For a fixed start, matching each later symbol as early as possible
    minimises the span, so a start is feasible iff the greedy match
    fits the window.
    """
    items = event.items
    n = len(items)
    m = len(episode)
    out = []
    for i in range(n - m + 1):
        if items[i][1] != episode[0]:
            continue
        j = i
        ok = True
        for sym in episode[1:]:
            j += 1
            while j < n and items[j][1] != sym:
                j += 1
            if j >= n:
                ok = False
                break
        if ok and items[j][0] - items[i][0] <= window:
            out.append(items[i][0])
    return out


def _feasible_ends(event: Event, episode: Episode, window: timedelta) -> list[datetime]:
    """Times at which an occurrence of episode can end, span <= window.

    Mirror image of _feasible_starts: matching backwards as late as
    possible maximises the start time for a fixed end.
    """
    items = event.items
    n = len(items)
    m = len(episode)
    out = []
    for j in range(m - 1, n):
        if items[j][1] != episode[-1]:
            continue
        i = j
        ok = True
        for sym in reversed(episode[:-1]):
            i -= 1
            while i >= 0 and items[i][1] != sym:
                i -= 1
            if i < 0:
                ok = False
                break
        if ok and items[j][0] - items[i][0] <= window:
            out.append(items[j][0])
    return out


def event_contains(event: Event, episode: Episode, window: timedelta) -> bool:
    return bool(_feasible_starts(event, episode, window))


def episode_event_count(
    episode: Episode, events: Sequence[Event], window: timedelta
) -> int:
    """Number of events containing the episode within the window."""
    return sum(1 for ev in events if event_contains(ev, episode, window))


def _pair_in_event(
    event: Event,
    antecedent: Episode,
    consequent: Episode,
    win_a: timedelta,
    win_c: timedelta,
    lag: timedelta,
) -> bool:
    ends = _feasible_ends(event, antecedent, win_a)
    if not ends:
        return False
    starts = _feasible_starts(event, consequent, win_c)
    if not starts:
        return False
    ends = sorted(set(ends))
    for s in starts:
        # any antecedent end e with e < s <= e + lag
        lo = bisect_left(ends, s - lag)
        if lo < len(ends) and ends[lo] < s:
            return True
    return False


# --- support, confidence, mining -------------------------------------------


def support_of(
    antecedent: Episode,
    consequent: Episode,
    events: Sequence[Event],
    win_a: timedelta,
    win_c: timedelta,
    lag: timedelta,
) -> int:
    """Events in which the rule's occurrence pairing exists (binary)."""
    if lag < timedelta(0):
        raise ConfigError(f"lag must be non-negative, got {lag}")
    return sum(
        1
        for ev in events
        if _pair_in_event(ev, antecedent, consequent, win_a, win_c, lag)
    )


def confidence_of(
    antecedent: Episode,
    consequent: Episode,
    events: Sequence[Event],
    win_a: timedelta,
    win_c: timedelta,
    lag: timedelta,
) -> float:
    """support / events-containing-antecedent; 0.0 when inapplicable."""
    denom = episode_event_count(antecedent, events, win_a)
    if denom == 0:
        return 0.0
    return support_of(antecedent, consequent, events, win_a, win_c, lag) / denom


def frequent_episodes(
    events: Sequence[Event],
    min_support: int,
    max_len: int,
    window: timedelta,
) -> dict[Episode, int]:
    """Level-wise enumeration of episodes with event count >= min_support.

    Length-n candidates extend frequent length-(n-1) episodes by one
    alphabet symbol; event-count support is anti-monotone over
    prefixes, so nothing frequent is missed.
    """
    if min_support < 1:
        raise ConfigError(f"min support must be >= 1, got {min_support}")
    if max_len < 1:
        raise ConfigError(f"max episode length must be >= 1, got {max_len}")
    alphabet = sorted({sym for ev in events for _, sym in ev.items})
    freq: dict[Episode, int] = {}
    level: list[Episode] = []
    for s in alphabet:
        count = episode_event_count((s,), events, window)
        if count >= min_support:
            freq[(s,)] = count
            level.append((s,))
    for _ in range(max_len - 1):
        nxt: list[Episode] = []
        for ep in level:
            for s in alphabet:
                cand = ep + (s,)
                count = episode_event_count(cand, events, window)
                if count >= min_support:
                    freq[cand] = count
                    nxt.append(cand)
        level = nxt
        if not level:
            break
    return freq


def mine_rules(
    events: Sequence[Event],
    min_support: int = DEFAULT_MIN_SUPPORT,
    max_len: int = DEFAULT_MAX_LEN,
    win_a: timedelta = timedelta(0),
    win_c: timedelta = timedelta(0),
    lag: timedelta = timedelta(0),
) -> list[EpisodeRule]:
    """Mine every rule with support >= min_support, deterministically.

    A rule's support never exceeds the event count of either side, so
    candidate pairs come from the frequent episode sets.  Output is
    sorted by confidence desc, support desc, then lexicographically.
    """
    freq_a = frequent_episodes(events, min_support, max_len, win_a)
    if win_c == win_a:
        freq_c = freq_a
    else:
        freq_c = frequent_episodes(events, min_support, max_len, win_c)
    rules: list[EpisodeRule] = []
    for antecedent in freq_a:
        n_ant = freq_a[antecedent]
        for consequent in freq_c:
            sup = support_of(antecedent, consequent, events, win_a, win_c, lag)
            if sup < min_support:
                continue
            rules.append(
                EpisodeRule(
                    antecedent=antecedent,
                    consequent=consequent,
                    win_a=win_a,
                    win_c=win_c,
                    lag=lag,
                    support=sup,
                    confidence=sup / n_ant,
                    antecedent_events=n_ant,
                )
            )
    rules.sort(
        key=lambda r: (-r.confidence, -r.support, r.antecedent, r.consequent)
    )
    return rules


# --- cumulative confidence -------------------------------------------------


def _to_epoch(ts: datetime) -> float:
    return (ts - _EPOCH).total_seconds()


def _from_epoch(seconds: float) -> datetime:
    return _EPOCH + timedelta(seconds=seconds)


def confidence_series(
    events: Sequence[Event],
    rule: EpisodeRule,
    step: timedelta,
) -> list[tuple[datetime, float]]:
    """Cumulative-prefix confidence of a rule on a step-aligned grid.

    Grid points are whole multiples of step covering the events' span;
    at each point the rule's confidence is recomputed over only the
    events that have started by then.  Points before the first event
    carry confidence 0.
    """
    if step <= timedelta(0):
        raise ConfigError(f"step must be positive, got {step}")
    if not events:
        raise SeriesTooShort("no events to trace confidence over")
    span_lo = min(ev.start for ev in events)
    span_hi = max(ev.end for ev in events)
    step_s = step.total_seconds()
    n0 = math.floor(_to_epoch(span_lo) / step_s)
    n1 = math.ceil(_to_epoch(span_hi) / step_s)
    curve = []
    for n in range(n0, n1 + 1):
        t = _from_epoch(n * step_s)
        prefix = [ev for ev in events if ev.start <= t]
        conf = confidence_of(
            rule.antecedent, rule.consequent, prefix, rule.win_a, rule.win_c, rule.lag
        )
        curve.append((t, conf))
    return curve
