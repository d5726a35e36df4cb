"""
Configurations: pointwise-queryable assignments Z^d -> {0..alphabet-1}.

Four kinds are supported, all immutable:

* FiniteConfig  - finitely many nonzero cells on a 0 background
* TubeConfig    - periodic along one axis, finitely many nonzero cells per period
* TorusConfig   - periodic along every axis, stored as a numpy array
* OverlayConfig - disjoint sum of configurations of any kind

Configurations have no global equality; compare them on a finite domain with
`same_on` or `window`.
"""
import logging
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from errors import (
    AlphabetMismatchError,
    DimensionMismatchError,
    DisjointnessError,
    PeriodTooSmallError,
    ToolkitError,
    UnsupportedConfigurationError,
)
from geometry import add, bounding_box, check_dimension, format_vector, sub

logger = logging.getLogger(__name__)


def _check_alphabet(alphabet):
    if int(alphabet) < 1:
        raise ToolkitError(f"alphabet size must be at least 1, got {alphabet}")


def _check_symbol(symbol, alphabet, cell):
    if not 0 <= symbol < alphabet:
        raise ToolkitError(f"symbol {symbol} at {format_vector(cell)} outside alphabet 0..{alphabet - 1}")


def _freeze_cells(cells, dim, alphabet):
    frozen = {}
    for cell, symbol in dict(cells).items():
        cell = tuple(int(a) for a in cell)
        symbol = int(symbol)
        check_dimension(cell, dim)
        _check_symbol(symbol, alphabet, cell)
        if symbol != 0:
            frozen[cell] = symbol
    return MappingProxyType(dict(sorted(frozen.items())))


class Configuration:
    """Common interface. Subclasses define `dim`, `alphabet`, `get`, `shift` and `to_dense`."""
    kind = None

    def get(self, v):
        raise NotImplementedError

    def shift(self, v):
        raise NotImplementedError

    def to_dense(self, lo, hi):
        """Values over the inclusive box [lo, hi] as an int64 numpy array"""
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class FiniteConfig(Configuration):
    dim: int
    alphabet: int
    cells: MappingProxyType

    kind = 'finite'

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        if self.dim < 1:
            raise DimensionMismatchError(f"dimension must be at least 1, got {self.dim}")
        object.__setattr__(self, 'cells', _freeze_cells(self.cells, self.dim, self.alphabet))

    def get(self, v):
        check_dimension(v, self.dim)
        return self.cells.get(tuple(v), 0)

    def shift(self, v):
        check_dimension(v, self.dim)
        return FiniteConfig(self.dim, self.alphabet, {sub(u, v): s for u, s in self.cells.items()})

    def to_dense(self, lo, hi):
        shape = tuple(b - a + 1 for a, b in zip(lo, hi))
        arr = np.zeros(shape, dtype=np.int64)
        for cell, symbol in self.cells.items():
            if all(a <= c <= b for c, a, b in zip(cell, lo, hi)):
                arr[tuple(c - a for c, a in zip(cell, lo))] = symbol
        return arr


@dataclass(frozen=True, eq=False)
class TubeConfig(Configuration):
    """
    Configuration periodic with `period` along `axis`. `cells` holds one fundamental
    slab: every key has its axis coordinate in 0..period-1.
    """
    dim: int
    alphabet: int
    axis: int
    period: int
    cells: MappingProxyType

    kind = 'tube'

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        if not 0 <= self.axis < self.dim:
            raise DimensionMismatchError(f"tube axis {self.axis} outside dimension {self.dim}")
        if self.period < 1:
            raise PeriodTooSmallError(f"period must be at least 1, got {self.period}")
        reduced = {}
        for cell, symbol in dict(self.cells).items():
            check_dimension(cell, self.dim)
            key = self._reduce(cell)
            if key in reduced and symbol != 0 and reduced[key] != 0:
                raise DisjointnessError(f"two tube cells reduce to {format_vector(key)}", key)
            if symbol != 0:
                reduced[key] = symbol
        object.__setattr__(self, 'cells', _freeze_cells(reduced, self.dim, self.alphabet))

    def _reduce(self, v):
        j = self.axis
        return tuple(a % self.period if i == j else a for i, a in enumerate(v))

    def get(self, v):
        check_dimension(v, self.dim)
        return self.cells.get(self._reduce(tuple(v)), 0)

    def shift(self, v):
        check_dimension(v, self.dim)
        return TubeConfig(self.dim, self.alphabet, self.axis, self.period,
                          {sub(u, v): s for u, s in self.cells.items()})

    def quotient_dense(self, lo, hi):
        """Dense slab over [lo, hi] on the other axes and 0..period-1 along the tube axis"""
        lo = tuple(0 if i == self.axis else a for i, a in enumerate(lo))
        hi = tuple(self.period - 1 if i == self.axis else b for i, b in enumerate(hi))
        return FiniteConfig(self.dim, self.alphabet, self.cells).to_dense(lo, hi)

    def to_dense(self, lo, hi):
        slab = self.quotient_dense(lo, hi)
        rows = np.arange(lo[self.axis], hi[self.axis] + 1) % self.period
        return np.take(slab, rows, axis=self.axis)


@dataclass(frozen=True, eq=False)
class TorusConfig(Configuration):
    """Configuration periodic along every axis; `cells` has shape `periods`."""
    dim: int
    alphabet: int
    periods: tuple
    cells: np.ndarray

    kind = 'torus'

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        periods = tuple(int(p) for p in self.periods)
        if len(periods) != self.dim:
            raise DimensionMismatchError(f"torus needs {self.dim} periods, got {len(periods)}")
        if any(p < 1 for p in periods):
            raise PeriodTooSmallError(f"torus periods must be at least 1, got {periods}")
        arr = np.array(self.cells, dtype=np.int64).reshape(periods)
        if arr.size and (arr.min() < 0 or arr.max() >= self.alphabet):
            raise ToolkitError(f"torus symbols outside alphabet 0..{self.alphabet - 1}")
        arr.flags.writeable = False
        object.__setattr__(self, 'periods', periods)
        object.__setattr__(self, 'cells', arr)

    def get(self, v):
        check_dimension(v, self.dim)
        return int(self.cells[tuple(a % p for a, p in zip(v, self.periods))])

    def shift(self, v):
        check_dimension(v, self.dim)
        rolled = np.roll(self.cells, shift=tuple(-a for a in v), axis=tuple(range(self.dim)))
        return TorusConfig(self.dim, self.alphabet, self.periods, rolled)

    def to_dense(self, lo, hi):
        index = [np.arange(a, b + 1) % p for a, b, p in zip(lo, hi, self.periods)]
        return self.cells[np.ix_(*index)].copy()


@dataclass(frozen=True, eq=False)
class OverlayConfig(Configuration):
    """
    Disjoint sum of `parts`. Disjointness is checked eagerly where a part has an
    enumerable support and otherwise at query time.
    """
    parts: tuple

    kind = 'overlay'

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ToolkitError("overlay needs at least one part")
        for part in parts[1:]:
            _check_compatible(parts[0], part)
        object.__setattr__(self, 'parts', parts)

    @property
    def dim(self):
        return self.parts[0].dim

    @property
    def alphabet(self):
        return self.parts[0].alphabet

    def get(self, v):
        found = 0
        for part in self.parts:
            symbol = part.get(v)
            if symbol != 0:
                if found != 0:
                    raise DisjointnessError(f"overlay parts overlap at {format_vector(v)}", tuple(v))
                found = symbol
        return found

    def shift(self, v):
        return OverlayConfig(tuple(part.shift(v) for part in self.parts))

    def to_dense(self, lo, hi):
        stack = np.stack([part.to_dense(lo, hi) for part in self.parts])
        nonzero = np.count_nonzero(stack, axis=0)
        if np.any(nonzero > 1):
            where = tuple(int(a) for a in np.argwhere(nonzero > 1)[0])
            cell = add(tuple(lo), where)
            raise DisjointnessError(f"overlay parts overlap at {format_vector(cell)}", cell)
        return stack.sum(axis=0)


def _check_compatible(x, y):
    if x.dim != y.dim:
        raise DimensionMismatchError(f"dimensions differ: {x.dim} and {y.dim}")
    if x.alphabet != y.alphabet:
        raise AlphabetMismatchError(f"alphabets differ: {x.alphabet} and {y.alphabet}")


def empty(dim, alphabet):
    """The all-0 configuration as a FiniteConfig"""
    return FiniteConfig(dim, alphabet, {})


def get(x, v):
    return x.get(tuple(v))


def shift(x, v):
    """sigma^v(x), with sigma^v(x)_u = x_{u+v}; the result has the kind of x"""
    return x.shift(tuple(v))


def support(x):
    """
    Nonzero cells of x, sorted

    Args:
        x: FiniteConfig, TubeConfig or TorusConfig

    Returns:
        Tuple of cells; for tubes and tori, the cells of the fundamental domain
    """
    if isinstance(x, (FiniteConfig, TubeConfig)):
        return tuple(x.cells.keys())
    if isinstance(x, TorusConfig):
        return tuple(tuple(int(a) for a in cell) for cell in np.argwhere(x.cells != 0))
    if isinstance(x, OverlayConfig):
        flat = flatten(x)
        if not isinstance(flat, OverlayConfig):
            return support(flat)
    raise UnsupportedConfigurationError(f"support of a {x.kind} configuration is not enumerable")


def is_empty(x):
    if isinstance(x, (FiniteConfig, TubeConfig)):
        return not x.cells
    if isinstance(x, TorusConfig):
        return not np.any(x.cells)
    if isinstance(x, OverlayConfig):
        return all(is_empty(part) for part in x.parts)
    return False


def _merge_cells(a, b):
    merged = dict(a)
    for cell, symbol in b.items():
        if cell in merged:
            raise DisjointnessError(f"supports overlap at {format_vector(cell)}", cell)
        merged[cell] = symbol
    return merged


def _overlap_with_finite(finite, other):
    for cell in finite.cells:
        if other.get(cell) != 0:
            raise DisjointnessError(f"supports overlap at {format_vector(cell)}", cell)


def disjoint_sum(x, y):
    """
    The sum x +0 y of two configurations with disjoint supports

    Args:
        x: configuration
        y: configuration of the same dimension and alphabet

    Returns:
        A FiniteConfig, TubeConfig or TorusConfig when both operands share that
        representation, otherwise an OverlayConfig
    """
    _check_compatible(x, y)
    if isinstance(x, FiniteConfig) and not x.cells:
        return y
    if isinstance(y, FiniteConfig) and not y.cells:
        return x
    if isinstance(x, FiniteConfig) and isinstance(y, FiniteConfig):
        return FiniteConfig(x.dim, x.alphabet, _merge_cells(x.cells, y.cells))
    if isinstance(x, TubeConfig) and isinstance(y, TubeConfig) and \
            (x.axis, x.period) == (y.axis, y.period):
        return TubeConfig(x.dim, x.alphabet, x.axis, x.period, _merge_cells(x.cells, y.cells))
    if isinstance(x, TorusConfig) and isinstance(y, TorusConfig) and x.periods == y.periods:
        both = (x.cells != 0) & (y.cells != 0)
        if np.any(both):
            cell = tuple(int(a) for a in np.argwhere(both)[0])
            raise DisjointnessError(f"supports overlap at {format_vector(cell)}", cell)
        return TorusConfig(x.dim, x.alphabet, x.periods, x.cells + y.cells)

    parts = []
    for z in (x, y):
        parts.extend(z.parts if isinstance(z, OverlayConfig) else [z])
    for i, a in enumerate(parts):
        for b in parts[i + 1:]:
            if isinstance(a, FiniteConfig):
                _overlap_with_finite(a, b)
            elif isinstance(b, FiniteConfig):
                _overlap_with_finite(b, a)
    return OverlayConfig(tuple(parts))


def flatten(x):
    """
    Collapse an overlay whose parts share one representation into that representation.
    Anything else is returned unchanged.
    """
    if not isinstance(x, OverlayConfig):
        return x
    parts = [flatten(part) for part in x.parts]
    result = parts[0]
    for part in parts[1:]:
        result = disjoint_sum(result, part)
    return result


def periodize(x, axis, period):
    """
    Sum of the translates sigma^{i * period * e_axis}(x) over all integers i

    Args:
        x: FiniteConfig
        axis: the axis to repeat along
        period: repetition period, at least the axis extent of the support

    Returns:
        TubeConfig
    """
    if period < 1:
        raise PeriodTooSmallError(f"period must be at least 1, got {period}")
    if not 0 <= axis < x.dim:
        raise DimensionMismatchError(f"axis {axis} outside dimension {x.dim}")
    if x.cells:
        lo, hi = bounding_box(x.cells)
        extent = hi[axis] - lo[axis] + 1
        if extent > period:
            raise PeriodTooSmallError(
                f"support extends over {extent} cells along axis {axis}; period {period} would overlap copies")
    logger.debug(f"Periodizing {len(x.cells)} cells along axis {axis} with period {period}")
    return TubeConfig(x.dim, x.alphabet, axis, period, x.cells)


def window(x, domain):
    """
    Restrict x to a finite domain

    Args:
        x: configuration
        domain: iterable of cells

    Returns:
        dict cell -> symbol, in the iteration order of `domain`
    """
    return {tuple(v): x.get(tuple(v)) for v in domain}


def same_on(x, y, domain):
    """True iff x and y agree at every cell of `domain`"""
    return all(x.get(tuple(v)) == y.get(tuple(v)) for v in domain)

