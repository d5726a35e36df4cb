"""
Bounded decision procedures. Every probe is exact up to its horizon or guard and says
which of the two limited it: the verdict is Holds, Fails (with a witness) or Unknown.

Windows are enumerated in lexicographic order of their symbol tuples, cells of a window
in lexicographic order, in numpy chunks of config.CHUNK_SIZE. The first failing window
in that order is the witness.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from math import lcm, prod
from typing import Optional

import numpy as np
import pandas as pd

import config
from automaton import EvolvedConfig, advance, evolve_window, require_quiescent_zero, step, trace
from configurations import (
    FiniteConfig,
    OverlayConfig,
    TorusConfig,
    TubeConfig,
    disjoint_sum,
    is_empty,
    periodize,
    shift,
    support,
)
from errors import (
    AlphabetMismatchError,
    DimensionMismatchError,
    GuardExceededError,
    ToolkitError,
    UnsupportedConfigurationError,
)
from geometry import TowerDescriptor, ball, bounding_box, check_dimension, format_vector, neg, sub, zero
from subshifts import format_word, language_1d

logger = logging.getLogger(__name__)


class Verdict(Enum):
    HOLDS = 'Holds'
    FAILS = 'Fails'
    UNKNOWN = 'Unknown'

    def __str__(self):
        return self.value


def _format(value):
    if value is None:
        return '-'
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, dict):
        return ';'.join(f"{_format_key(k)}={_format(v)}" for k, v in value.items())
    if isinstance(value, np.ndarray):
        return _format(value.tolist())
    if isinstance(value, (tuple, list)):
        if all(isinstance(a, (int, np.integer)) and not isinstance(a, bool) for a in value):
            return format_vector(value)
        return '[' + ','.join(_format(a) for a in value) + ']'
    return str(value)


def _format_key(key):
    if isinstance(key, tuple):
        return format_vector(key)
    return str(key)


@dataclass(frozen=True)
class ProbeReport:
    verdict: Verdict
    horizon: int
    witness: object = None
    certificate: object = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Verdict.FAILS and self.witness is None:
            raise ToolkitError("a failing report needs a witness")

    @property
    def holds(self):
        return self.verdict is Verdict.HOLDS

    @property
    def fails(self):
        return self.verdict is Verdict.FAILS

    def to_text(self):
        """Line-oriented `key=value` form with a fixed key order"""
        lines = [
            f"verdict={self.verdict}",
            f"horizon={self.horizon}",
            f"witness={_format(self.witness)}",
            f"certificate={_format(self.certificate)}",
        ]
        for key in sorted(self.stats):
            lines.append(f"stats.{key}={_format(self.stats[key])}")
        return '\n'.join(lines)


@dataclass(frozen=True)
class Layer:
    """One layer of a witness: `pattern` translated so that cell u lands on u + offset"""
    pattern: FiniteConfig
    offset: tuple
    period: Optional[tuple] = None

    def configuration(self):
        z = shift(self.pattern, neg(tuple(self.offset)))
        if self.period is not None:
            axis, p = self.period
            z = periodize(z, axis, p)
        return z


@dataclass(frozen=True)
class LayerSpec:
    layers: tuple

    def __post_init__(self):
        layers = tuple(self.layers)
        if not layers:
            raise ToolkitError("a layer specification needs at least one layer")
        first = layers[0].pattern
        for layer in layers:
            check_dimension(layer.offset, first.dim)
            if layer.pattern.dim != first.dim:
                raise DimensionMismatchError("all layers must share one dimension")
            if layer.pattern.alphabet != first.alphabet:
                raise AlphabetMismatchError("all layers must share one alphabet")
        object.__setattr__(self, 'layers', layers)


def _windows(alphabet, cells, start, stop):
    """Rows start..stop-1 of the lexicographic enumeration of symbol tuples of length `cells`"""
    index = np.arange(start, stop, dtype=np.int64)
    weights = alphabet ** np.arange(cells - 1, -1, -1, dtype=np.int64)
    return (index[:, None] // weights) % alphabet


def _window_count(c, side, guard, what):
    cells = side ** c.dim
    count = c.alphabet ** cells
    limit = config.resolve_guard(guard, config.WINDOW_GUARD)
    if count > limit:
        raise GuardExceededError(
            f"{what} needs {c.alphabet}^{cells} = {count} windows, above the guard {limit}; "
            f"use a smaller n or sampled mode")
    logger.info(f"Enumerating {count} windows of side {side}")
    return cells, count


def _chunks(count):
    size = max(1, config.CHUNK_SIZE)
    for start in range(0, count, size):
        yield start, min(count, start + size)


def _window_dict(row, radius, dim):
    return {cell: int(s) for cell, s in zip(ball(radius, dim), row)}


def nilpotency_within(c, n, guard=None):
    """
    Decide whether c^n maps every configuration to 0

    c^n(x)_0 depends only on x over B_{rn}(0), so the answer is exact once every such
    window has been checked.

    Args:
        c: CellularAutomaton
        n: number of steps, n >= 1
        guard: maximum number of windows, None for config.WINDOW_GUARD

    Returns:
        ProbeReport, Holds with certificate n or Fails with the first window c^n maps to a nonzero symbol
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    r, d = c.radius, c.dim
    side = 2 * r * n + 1
    cells, count = _window_count(c, side, guard, "nilpotency check")
    for start, stop in _chunks(count):
        rows = _windows(c.alphabet, cells, start, stop)
        out = advance(c, rows.reshape((len(rows),) + (side,) * d), n).reshape(-1)
        bad = np.flatnonzero(out)
        if bad.size:
            i = int(bad[0])
            witness = _window_dict(rows[i], r * n, d)
            return ProbeReport(Verdict.FAILS, n, witness, None,
                               {'windows': start + i + 1, 'image': int(out[i])})
    return ProbeReport(Verdict.HOLDS, n, None, n, {'windows': count})


def _local_table(c):
    width = 2 * c.radius + 1
    rows = _windows(c.alphabet, width, 0, c.alphabet ** width)
    return advance(c, rows, 1).reshape(-1)


def _preimages(table, alphabet, radius, level):
    """Every word mapping onto some row of `level`, one row per preimage, deduplicated"""
    n, length = level.shape
    span = 2 * radius
    prefixes = _windows(alphabet, span, 0, alphabet ** span).astype(level.dtype)
    rows = np.repeat(np.arange(n), len(prefixes))
    words = np.tile(prefixes, (n, 1))
    weights = alphabet ** np.arange(span, -1, -1, dtype=np.int64)
    symbols = np.arange(alphabet, dtype=level.dtype)
    for i in range(length):
        k = len(words)
        if k == 0:
            break
        words = np.column_stack([np.repeat(words, alphabet, axis=0), np.tile(symbols, k)])
        rows = np.repeat(rows, alphabet)
        keep = table[words[:, -(span + 1):] @ weights] == level[rows, i]
        words, rows = words[keep], rows[keep]
    return np.unique(words, axis=0)


def deep_preimage(c, w, depth, guard=None):
    """
    Search for a chain of `depth` preimages above the word w (1-D only)

    Levels are explored breadth first. Level t holds every word of length
    |w| + 2rt that c^t maps onto w.

    Args:
        c: CellularAutomaton with dim 1
        w: word, a sequence of symbols
        depth: chain length, depth >= 0
        guard: maximum words per level, None for config.PREIMAGE_GUARD

    Returns:
        ProbeReport, Holds with the lexicographically first top word, or Fails with the
        level at which the chain breaks
    """
    if c.dim != 1:
        raise DimensionMismatchError("preimage search is only implemented in dimension 1")
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    w = tuple(int(s) for s in w)
    if any(not 0 <= s < c.alphabet for s in w):
        raise AlphabetMismatchError(f"word {format_word(w)} uses symbols outside 0..{c.alphabet - 1}")
    limit = config.resolve_guard(guard, config.PREIMAGE_GUARD)
    table = _local_table(c)
    dtype = np.int8 if c.alphabet <= 127 else np.int64
    level = np.array([w], dtype=dtype).reshape(1, len(w))
    sizes = [1]
    for t in range(1, depth + 1):
        upper = _preimages(table, c.alphabet, c.radius, level)
        if len(upper) > limit:
            raise GuardExceededError(f"preimage level {t} has {len(upper)} words, above the guard {limit}")
        if len(upper) == 0:
            logger.info(f"Word {format_word(w)} has no preimage chain beyond depth {t - 1}")
            witness = {'depth': t - 1, 'word': format_word(tuple(int(s) for s in level[0]))}
            return ProbeReport(Verdict.FAILS, depth, witness, None, {'levels': tuple(sizes)})
        level = upper
        sizes.append(len(level))
    top = tuple(int(s) for s in level[0])
    return ProbeReport(Verdict.HOLDS, depth, format_word(top), depth, {'levels': tuple(sizes)})


def uniform_visit_bound(c, k, n, mode='exhaustive', seed=0, trials=1000, guard=None):
    """
    Check that every configuration is 0 on all of B_k(0) at some time j <= n

    Args:
        c: CellularAutomaton
        k: radius of the observed box
        n: time bound
        mode: 'exhaustive' enumerates every window of B_{k+rn}(0); 'sampled' draws
            `trials` uniform windows from numpy.random.default_rng(seed)
        guard: maximum windows in exhaustive mode

    Returns:
        ProbeReport; a sampled run without counterexample is Unknown
    """
    if k < 0 or n < 0:
        raise ValueError(f"k and n must be non-negative, got k={k}, n={n}")
    r, d, s = c.radius, c.dim, c.alphabet
    outer = k + r * n
    side = 2 * outer + 1
    if mode == 'exhaustive':
        cells, count = _window_count(c, side, guard, "visit bound check")
        batches = (_windows(s, cells, start, stop) for start, stop in _chunks(count))
    elif mode == 'sampled':
        cells, count = side ** d, int(trials)
        rng = np.random.default_rng(seed)
        batches = (rng.integers(0, s, size=(stop - start, cells)) for start, stop in _chunks(count))
    else:
        raise ToolkitError(f"unknown mode {mode!r}; use exhaustive or sampled")

    seen = 0
    for rows in batches:
        arr = rows.reshape((len(rows),) + (side,) * d)
        visited = np.zeros(len(rows), dtype=bool)
        for j in range(n + 1):
            if j:
                arr = advance(c, arr)
            margin = r * (n - j)
            centre = arr[(Ellipsis,) + (slice(margin, margin + 2 * k + 1),) * d]
            visited |= ~np.any(centre.reshape(len(rows), -1), axis=1)
        missed = np.flatnonzero(~visited)
        if missed.size:
            i = int(missed[0])
            witness = _window_dict(rows[i], outer, d)
            return ProbeReport(Verdict.FAILS, n, witness, None, {'windows': seen + i + 1, 'mode': mode})
        seen += len(rows)
    if mode == 'sampled':
        return ProbeReport(Verdict.UNKNOWN, n, None, None,
                           {'windows': seen, 'mode': mode, 'seed': seed, 'note': 'no counterexample found'})
    return ProbeReport(Verdict.HOLDS, n, None, n, {'windows': seen, 'mode': mode})


def _orbit(c, x, horizon):
    current = x
    for t in range(horizon + 1):
        yield t, current
        if t < horizon:
            current = step(c, current)


def _trajectory_row(t, x):
    cells = support(x)
    row = {'step': t, 'support_size': len(cells)}
    if cells:
        lo, hi = bounding_box(cells)
    else:
        lo = hi = (None,) * x.dim
    for i in range(x.dim):
        row[f'min_{i}'] = lo[i]
        row[f'max_{i}'] = hi[i]
    return row


def trajectory_frame(c, x, horizon):
    """
    Support statistics of c^t(x) for t = 0..horizon

    Returns:
        pandas DataFrame with columns step, support_size, min_i and max_i per axis
        (the fundamental slab for tubes)
    """
    rows = [_trajectory_row(t, current) for t, current in _orbit(c, x, horizon)]
    return pd.DataFrame(rows)


def _shape_key(x):
    """A key equal for two configurations iff one is a translate of the other, plus the translation origin"""
    cells = x.cells
    lo, _ = bounding_box(cells)
    if isinstance(x, TubeConfig):
        j, p = x.axis, x.period
        best = None
        for rot in range(p):
            origin = tuple(rot if i == j else a for i, a in enumerate(lo))
            items = tuple(sorted(
                (tuple(a % p if i == j else a for i, a in enumerate(sub(u, origin))), s)
                for u, s in cells.items()))
            if best is None or items < best[0]:
                best = (items, origin)
        return best
    return tuple((sub(u, lo), s) for u, s in cells.items()), lo


def mortality_probe(c, x, horizon):
    """
    Simulate x until its support empties, repeats up to translation, or the horizon ends

    Args:
        c: CellularAutomaton with 0 quiescent
        x: FiniteConfig or TubeConfig
        horizon: number of steps, horizon >= 1

    Returns:
        ProbeReport: Holds with the death time, Fails when c^t(x) is a translate of an
        earlier nonempty c^s(x) (never dies), otherwise Unknown
    """
    if not isinstance(x, (FiniteConfig, TubeConfig)):
        raise UnsupportedConfigurationError("mortality is probed on finite and tube configurations")
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    require_quiescent_zero(c)
    seen = {}
    rows = []
    for t, current in _orbit(c, x, horizon):
        rows.append(_trajectory_row(t, current))
        if is_empty(current):
            logger.info(f"Configuration died at step {t}")
            return ProbeReport(Verdict.HOLDS, horizon, None, t, {'steps': t})
        key, origin = _shape_key(current)
        if key in seen:
            first, first_origin = seen[key]
            displacement = sub(origin, first_origin)
            if isinstance(current, TubeConfig):
                j = current.axis
                displacement = tuple(a % current.period if i == j else a for i, a in enumerate(displacement))
            certificate = {'preperiod': first, 'period': t - first, 'displacement': displacement}
            logger.info(f"Configuration repeats with period {t - first} after {first} steps")
            return ProbeReport(Verdict.FAILS, horizon, {'step': t, 'repeats': first}, certificate, {'steps': t})
        seen[key] = (t, origin)
    frame = pd.DataFrame(rows)
    stats = {
        'steps': horizon,
        'support_size.final': int(frame['support_size'].iloc[-1]),
        'support_size.max': int(frame['support_size'].max()),
    }
    return ProbeReport(Verdict.UNKNOWN, horizon, None, None, stats)


def _escapes(tower, cells):
    """Cells of the array `cells` (N, d) outside the tower"""
    base = np.array(tower.base, dtype=np.int64)
    others = [i for i in range(tower.dim) if i != tower.axis]
    if not others:
        return np.zeros(len(cells), dtype=bool)
    gap = np.abs(cells[:, None, others] - base[None, :, others])
    inside = np.all(gap <= tower.k, axis=2).any(axis=1)
    return ~inside


def tower_confinement(c, x, j, k, horizon):
    """
    Check that the supports of c^i(x), i <= horizon, stay inside tower(j, k, supp(x))

    Confinement can only be observed up to the horizon, so it is reported as
    Unknown with certificate 'confined'.

    Returns:
        ProbeReport, Fails with the first escaping (cell, time)
    """
    if not isinstance(x, FiniteConfig):
        raise UnsupportedConfigurationError("tower confinement is probed on finite configurations")
    require_quiescent_zero(c)
    if not x.cells:
        return ProbeReport(Verdict.UNKNOWN, horizon, None, 'confined', {'steps': 0})
    tower = TowerDescriptor(j, k, tuple(x.cells))
    last = 0
    for t, current in _orbit(c, x, horizon):
        last = t
        if not current.cells:
            break
        cells = np.array(list(current.cells), dtype=np.int64)
        out = np.flatnonzero(_escapes(tower, cells))
        if out.size:
            cell = tuple(int(a) for a in cells[out[0]])
            return ProbeReport(Verdict.FAILS, horizon, {'cell': cell, 'time': t}, None, {'steps': t})
    return ProbeReport(Verdict.UNKNOWN, horizon, None, 'confined', {'steps': last})


def cycle_analysis(c, x, guard=None):
    """
    Preperiod and period of the orbit of a torus configuration (Brent's algorithm)

    Args:
        c: CellularAutomaton
        x: TorusConfig
        guard: maximum torus cells, None for config.TORUS_GUARD

    Returns:
        ProbeReport, Holds when the orbit ends in the all-0 fixed point, Fails with a
        nonzero cycle cell otherwise; the certificate always holds preperiod and period
    """
    if not isinstance(x, TorusConfig):
        raise UnsupportedConfigurationError("cycle analysis needs a torus configuration")
    limit = config.resolve_guard(guard, config.TORUS_GUARD)
    size = prod(x.periods)
    if size > limit:
        raise GuardExceededError(f"torus has {size} cells, above the guard {limit}")
    orbit_limit = config.ORBIT_GUARD

    def same(a, b):
        return np.array_equal(a.cells, b.cells)

    power = lam = 1
    tortoise, hare = x, step(c, x)
    steps = 1
    while not same(tortoise, hare):
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(c, hare)
        lam += 1
        steps += 1
        if steps > orbit_limit:
            raise GuardExceededError(f"orbit longer than the guard {orbit_limit}")

    tortoise = hare = x
    for _ in range(lam):
        hare = step(c, hare)
    mu = 0
    while not same(tortoise, hare):
        tortoise = step(c, tortoise)
        hare = step(c, hare)
        mu += 1

    cycle = [tortoise]
    for _ in range(lam - 1):
        cycle.append(step(c, cycle[-1]))
    all_zero = lam == 1 and not np.any(tortoise.cells)
    origin = zero(x.dim)
    nonzero_at_origin = any(z.get(origin) != 0 for z in cycle)
    certificate = {
        'preperiod': mu,
        'period': lam,
        'cycle_all_zero': all_zero,
        'cycle_nonzero_at_origin': nonzero_at_origin,
    }
    stats = {'cells': size, 'steps': steps}
    logger.info(f"Orbit has preperiod {mu} and period {lam}")
    if all_zero:
        return ProbeReport(Verdict.HOLDS, mu + lam, None, certificate, stats)
    for i, z in enumerate(cycle):
        cells = support(z)
        if cells:
            return ProbeReport(Verdict.FAILS, mu + lam, {'step': mu + i, 'cell': cells[0]}, certificate, stats)


def _envelope(z):
    """
    Per-axis description of a region containing supp(z)

    Each entry is an inclusive (lo, hi) pair, an int period p when z is unbounded
    and p-periodic along that axis, or None when it is unbounded without a known period.
    """
    if isinstance(z, FiniteConfig):
        lo, hi = bounding_box(list(z.cells))
        return list(zip(lo, hi))
    if isinstance(z, TubeConfig):
        lo, hi = bounding_box(list(z.cells))
        return [z.period if i == z.axis else (a, b) for i, (a, b) in enumerate(zip(lo, hi))]
    if isinstance(z, TorusConfig):
        return list(z.periods)
    if isinstance(z, EvolvedConfig):
        reach = z.automaton.radius * z.steps
        return [e if not isinstance(e, tuple) else (e[0] - reach, e[1] + reach) for e in _envelope(z.base)]
    if isinstance(z, OverlayConfig):
        parts = [_envelope(part) for part in z.parts if not is_empty(part)]
        merged = []
        for entries in zip(*parts):
            if all(isinstance(e, tuple) for e in entries):
                merged.append((min(e[0] for e in entries), max(e[1] for e in entries)))
            elif all(isinstance(e, int) for e in entries):
                merged.append(lcm(*entries))
            else:
                merged.append(None)
        return merged
    raise UnsupportedConfigurationError(f"no support envelope for {z.kind} configurations")


def _comparison_box(a, b, reach):
    """
    A box outside of which c^j(a + b) = c^j(a) + c^j(b) holds trivially for j <= horizon,
    or None when the two supports stay out of each other's reach
    """
    lo, hi = [], []
    for i, (e, f) in enumerate(zip(_envelope(a), _envelope(b))):
        if isinstance(e, tuple) and isinstance(f, tuple):
            low, high = max(e[0], f[0]) - reach, min(e[1], f[1]) + reach
            if low > high:
                return None
        elif isinstance(e, tuple) or isinstance(f, tuple):
            low, high = e if isinstance(e, tuple) else f
            low, high = low - reach, high + reach
        elif e is not None and f is not None:
            low, high = 0, lcm(e, f) - 1
        else:
            raise UnsupportedConfigurationError(
                f"cannot compare the evolution of {a.kind} and {b.kind} configurations along axis {i}")
        lo.append(low)
        hi.append(high)
    return tuple(lo), tuple(hi)


def check_disjoint_evolution(c, a, b, horizon):
    """
    Verify c^j(a +0 b) = c^j(a) +0 c^j(b) for every j <= horizon

    Args:
        c: CellularAutomaton
        a: configuration
        b: configuration with support disjoint from a
        horizon: last time step checked

    Returns:
        ProbeReport, Fails at the first j where the evolved supports collide or the sum
        differs from the joint evolution
    """
    if is_empty(a) or is_empty(b):
        return ProbeReport(Verdict.HOLDS, horizon, None, horizon, {'cells': 0})
    box = _comparison_box(a, b, c.radius * horizon)
    joint = disjoint_sum(a, b)
    if box is None:
        return ProbeReport(Verdict.HOLDS, horizon, None, horizon, {'cells': 0})
    lo, hi = box
    frames = zip(evolve_window(c, joint, lo, hi, horizon),
                 evolve_window(c, a, lo, hi, horizon),
                 evolve_window(c, b, lo, hi, horizon))
    compared = 0
    for (j, both), (_, left), (_, right) in frames:
        compared += both.size
        collision = (left != 0) & (right != 0)
        mismatch = both != left + right
        for kind, mask in (('collision', collision), ('mismatch', mismatch)):
            if np.any(mask):
                where = tuple(int(v) for v in np.argwhere(mask)[0])
                cell = tuple(l + w for l, w in zip(lo, where))
                logger.info(f"Evolutions interact at step {j}: {kind} at {format_vector(cell)}")
                witness = {'time': j, 'cell': cell, 'kind': kind}
                return ProbeReport(Verdict.FAILS, horizon, witness, None, {'cells': compared})
    return ProbeReport(Verdict.HOLDS, horizon, None, horizon, {'cells': compared})


def separation_bound(r, m):
    """
    Offset size k = (r+1)m + 2r + 1 that keeps a new layer away from a layer dying in
    at most m + 1 steps inside a tower of width parameter m
    """
    return (r + 1) * m + 2 * r + 1


def _suggested_separation(c, z, horizon):
    """separation_bound for a layer that dies within the horizon, else None"""
    if not isinstance(z, (FiniteConfig, TubeConfig)):
        return None
    axis = z.axis if isinstance(z, TubeConfig) else z.dim - 1
    m = 0
    for t, current in _orbit(c, z, horizon):
        if not current.cells:
            return separation_bound(c.radius, max(m, t - 1))
        m = max([m] + [abs(a) for u in current.cells for i, a in enumerate(u) if i != axis])
    return None


def assemble_witness(c, layers, horizon, cell=None):
    """
    Sum the layers into one configuration and check that they evolve independently

    Args:
        c: CellularAutomaton
        layers: LayerSpec
        horizon: last time step
        cell: trace cell, the origin by default

    Returns:
        (configuration, ProbeReport) with the trace support of the sum at `cell` and the
        support contributed by each layer in the certificate
    """
    configs = [layer.configuration() for layer in layers.layers]
    total = configs[0]
    for z in configs[1:]:
        total = disjoint_sum(total, z)
    cell = zero(total.dim) if cell is None else tuple(cell)

    for i in range(len(configs)):
        for j in range(i + 1, len(configs)):
            report = check_disjoint_evolution(c, configs[i], configs[j], horizon)
            if report.fails:
                witness = dict(report.witness, layers=(i, j))
                return total, ProbeReport(Verdict.FAILS, horizon, witness, None, report.stats)

    overall = trace(c, total, cell, horizon + 1)
    per_layer = tuple(trace(c, z, cell, horizon + 1).support for z in configs)
    certificate = {
        'trace_support': overall.support,
        'layer_supports': per_layer,
    }
    stats = {'layers': len(configs)}
    suggestion = _suggested_separation(c, configs[0], horizon)
    if suggestion is not None:
        stats['separation_bound'] = suggestion
    return total, ProbeReport(Verdict.HOLDS, horizon, None, certificate, stats)


def nilpotency_on_sft_1d(c, X, n, guard=None):
    """
    Decide whether c^n sends every configuration of a 1-D SFT to 0

    Every word of length 2rn+1 of the language of X is pushed through c^n. When each
    transitive component dies within n steps the whole subshift dies within 2n, which
    is reported as `doubled_bound`.

    Returns:
        ProbeReport, Holds with certificate n or Fails with the first surviving word
    """
    if c.dim != 1 or X.dim != 1:
        raise DimensionMismatchError("nilpotency on a subshift is only implemented in dimension 1")
    if c.alphabet != X.alphabet:
        raise AlphabetMismatchError(f"automaton alphabet {c.alphabet} differs from subshift alphabet {X.alphabet}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    length = 2 * c.radius * n + 1
    words = sorted(language_1d(X, length))
    limit = config.resolve_guard(guard, config.WINDOW_GUARD)
    if len(words) > limit:
        raise GuardExceededError(f"{len(words)} words of length {length}, above the guard {limit}")
    stats = {'words': len(words), 'doubled_bound': 2 * n}
    if not words:
        return ProbeReport(Verdict.HOLDS, n, None, n, stats)
    out = advance(c, np.array(words, dtype=np.int64), n).reshape(-1)
    bad = np.flatnonzero(out)
    if bad.size:
        return ProbeReport(Verdict.FAILS, n, format_word(words[int(bad[0])]), None, stats)
    return ProbeReport(Verdict.HOLDS, n, None, n, stats)
