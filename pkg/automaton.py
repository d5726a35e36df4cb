"""
Cellular automata given by a local rule over a finite neighborhood.

Rules evaluate whole numpy stacks at once: `evaluate_array(stack)` takes an array
whose first axis runs over the neighborhood (in neighborhood order) and returns the
next symbol for every remaining index. Every stepping routine works on dense boxes
and shrinks them by the radius on each side ("valid" evaluation), so results are
exact inside the box without any boundary assumption.
"""
import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from configurations import (
    Configuration,
    FiniteConfig,
    OverlayConfig,
    TorusConfig,
    TubeConfig,
    flatten,
)
from errors import (
    AlphabetMismatchError,
    BackgroundInstabilityError,
    DimensionMismatchError,
    ToolkitError,
    UnsupportedConfigurationError,
)
from geometry import add, ball, bounding_box, check_dimension, format_vector, norm

logger = logging.getLogger(__name__)

# lr-annihilation particles
LEFT_MOVER = 1
RIGHT_MOVER = 2


@dataclass(frozen=True)
class Neighborhood:
    offsets: tuple

    def __post_init__(self):
        offsets = tuple(tuple(int(a) for a in o) for o in self.offsets)
        if not offsets:
            raise ToolkitError("neighborhood must contain at least one offset")
        dim = len(offsets[0])
        for o in offsets:
            check_dimension(o, dim)
        if len(set(offsets)) != len(offsets):
            raise ToolkitError("neighborhood offsets must be distinct")
        object.__setattr__(self, 'offsets', offsets)

    @property
    def dim(self):
        return len(self.offsets[0])

    @property
    def radius(self):
        return max(norm(o) for o in self.offsets)

    def __len__(self):
        return len(self.offsets)


class LocalRule:
    kind = None

    def evaluate_array(self, stack):
        raise NotImplementedError

    def evaluate(self, values):
        """Next symbol for one neighborhood tuple"""
        return int(self.evaluate_array(np.asarray(values, dtype=np.int64)))


class TableRule(LocalRule):
    """Total lookup table; the first neighbor is the most significant digit of the index."""
    kind = 'table'

    def __init__(self, alphabet, arity, table):
        table = np.asarray(table, dtype=np.int64).reshape(-1)
        if table.size != alphabet ** arity:
            raise ToolkitError(f"table has {table.size} entries, expected {alphabet ** arity}")
        if table.size and (table.min() < 0 or table.max() >= alphabet):
            raise ToolkitError(f"table outputs outside alphabet 0..{alphabet - 1}")
        table.flags.writeable = False
        self.alphabet = alphabet
        self.arity = arity
        self.table = table
        self._weights = np.array([alphabet ** (arity - 1 - i) for i in range(arity)], dtype=np.int64)

    def evaluate(self, values):
        index = 0
        for value in values:
            index = index * self.alphabet + int(value)
        return int(self.table[index])

    def evaluate_array(self, stack):
        index = np.tensordot(self._weights, stack, axes=1)
        return self.table[index]

    def mapping(self):
        """Yield (neighborhood tuple, output) pairs in lexicographic order"""
        tuples = itertools.product(range(self.alphabet), repeat=self.arity)
        for values, output in zip(tuples, self.table):
            yield values, int(output)


class BuiltinRule(LocalRule):
    kind = 'builtin'

    def __init__(self, name, fn, params=None):
        self.name = name
        self.params = dict(params or {})
        self._fn = fn

    def evaluate(self, values):
        return int(self._fn(tuple(int(v) for v in values)))

    def evaluate_array(self, stack):
        return np.asarray(self._fn(stack), dtype=np.int64)


class PowerRule(LocalRule):
    """c^n as a rule on B_{rn}(0): the window is stepped n times in valid mode"""
    kind = 'power'

    def __init__(self, base, n):
        self.base = base
        self.n = n

    def evaluate_array(self, stack):
        d = self.base.dim
        size = 2 * self.base.radius * self.n + 1
        batch = stack.shape[1:]
        boxes = np.moveaxis(stack, 0, -1).reshape(batch + (size,) * d)
        out = advance(self.base, boxes, self.n)
        return out.reshape(batch)


class FoldedRule(LocalRule):
    """
    The rule induced on (d-1)-dimensional configurations over S^p by folding tubes of
    period p along `axis`. Symbols are little-endian column codes.
    """
    kind = 'folded'

    def __init__(self, base, axis, period):
        self.base = base
        self.axis = axis
        self.period = period

    def evaluate_array(self, stack):
        base, j, p = self.base, self.axis, self.period
        s, r, d = base.alphabet, base.radius, base.dim
        batch = stack.shape[1:]
        nb = len(batch)
        codes = np.moveaxis(stack, 0, -1).reshape(batch + (2 * r + 1,) * (d - 1))
        powers = s ** np.arange(p, dtype=np.int64)
        digits = (codes[..., None] // powers) % s
        columns = np.moveaxis(digits, -1, nb + j)
        columns = np.take(columns, np.arange(-r, p + r) % p, axis=nb + j)
        out = advance(base, columns, 1)
        out = np.moveaxis(out, nb + j, -1).reshape(batch + (p,))
        return np.tensordot(out, powers, axes=([-1], [0]))


@dataclass(frozen=True, eq=False)
class CellularAutomaton:
    dim: int
    alphabet: int
    neighborhood: Neighborhood
    rule: LocalRule
    name: str = field(default='anonymous')

    def __post_init__(self):
        if self.neighborhood.dim != self.dim:
            raise DimensionMismatchError(
                f"neighborhood has dimension {self.neighborhood.dim}, automaton has {self.dim}")
        if self.alphabet < 1:
            raise ToolkitError(f"alphabet size must be at least 1, got {self.alphabet}")
        if isinstance(self.rule, TableRule) and \
                (self.rule.arity, self.rule.alphabet) != (len(self.neighborhood), self.alphabet):
            raise ToolkitError("rule table does not match neighborhood size and alphabet")

    @property
    def radius(self):
        return self.neighborhood.radius

    @property
    def offsets(self):
        return self.neighborhood.offsets


def table_automaton(dim, alphabet, offsets, table, name='table'):
    neighborhood = Neighborhood(offsets)
    return CellularAutomaton(dim, alphabet, neighborhood, TableRule(alphabet, len(neighborhood), table), name)


def random_table_automaton(rng, dim, alphabet, radius=1, quiescent_zero=True, name='random'):
    """
    A rule with a uniformly random table on B_radius(0)

    Args:
        rng: numpy Generator
        dim: dimension
        alphabet: number of symbols
        radius: neighborhood radius
        quiescent_zero: force the all-0 neighborhood to map to 0

    Returns:
        CellularAutomaton
    """
    offsets = ball(radius, dim)
    table = rng.integers(0, alphabet, size=alphabet ** len(offsets))
    if quiescent_zero:
        table[0] = 0
    return table_automaton(dim, alphabet, offsets, table, name)


def _life(v):
    total = sum(v[i] for i in range(9)) - v[4]
    return np.where((total == 3) | ((v[4] == 1) & (total == 2)), 1, 0)


def _lr_annihilation(v):
    left, centre, right = v[0], v[1], v[2]
    to_left = (right == LEFT_MOVER) & (centre != RIGHT_MOVER) & (left != RIGHT_MOVER)
    to_right = (left == RIGHT_MOVER) & (centre != LEFT_MOVER) & (right != LEFT_MOVER)
    return np.where(to_left, LEFT_MOVER, np.where(to_right, RIGHT_MOVER, 0))


def _centre(dim):
    return ((0,) * dim,)


BUILTIN_RULES = {
    # name: (default dim, default alphabet, offsets(dim, axis), local function)
    'identity': (1, 2, lambda dim, axis: _centre(dim), lambda v: v[0]),
    'constant-zero': (1, 2, lambda dim, axis: _centre(dim), lambda v: v[0] * 0),
    'shift-left': (1, 2, lambda dim, axis: (tuple(1 if i == axis else 0 for i in range(dim)),), lambda v: v[0]),
    'xor-pair': (1, 2, lambda dim, axis: ((0,), (1,)), lambda v: v[0] ^ v[1]),
    'countdown': (1, 3, lambda dim, axis: _centre(dim), lambda v: np.maximum(v[0] - 1, 0)),
    'game-of-life': (2, 2, lambda dim, axis: ball(1, 2), _life),
    'lr-annihilation': (1, 3, lambda dim, axis: ((-1,), (0,), (1,)), _lr_annihilation),
}

# Builtins whose neighborhood is tied to one dimension
_FIXED_DIM = {'xor-pair': 1, 'game-of-life': 2, 'lr-annihilation': 1}
_FIXED_ALPHABET = {'xor-pair': 2, 'game-of-life': 2, 'lr-annihilation': 3}


def builtin_automaton(name, dim=None, alphabet=None, axis=0):
    """
    Build one of the named rules

    Args:
        name: a key of BUILTIN_RULES
        dim: dimension, where the rule allows a choice
        alphabet: alphabet size, where the rule allows a choice
        axis: motion axis for shift-left

    Returns:
        CellularAutomaton
    """
    if name not in BUILTIN_RULES:
        raise ToolkitError(f"unknown builtin rule {name!r}; choose from {', '.join(sorted(BUILTIN_RULES))}")
    default_dim, default_alphabet, offsets, fn = BUILTIN_RULES[name]
    dim = default_dim if dim is None else int(dim)
    alphabet = default_alphabet if alphabet is None else int(alphabet)
    if name in _FIXED_DIM and dim != _FIXED_DIM[name]:
        raise DimensionMismatchError(f"{name} is only defined in dimension {_FIXED_DIM[name]}")
    if name in _FIXED_ALPHABET and alphabet != _FIXED_ALPHABET[name]:
        raise AlphabetMismatchError(f"{name} is only defined over {_FIXED_ALPHABET[name]} symbols")
    if not 0 <= axis < dim:
        raise DimensionMismatchError(f"axis {axis} outside dimension {dim}")
    params = {'dim': dim, 'alphabet': alphabet}
    if name == 'shift-left':
        params['axis'] = axis
    rule = BuiltinRule(name, fn, params)
    return CellularAutomaton(dim, alphabet, Neighborhood(offsets(dim, axis)), rule, name)


def quiescent_symbols(c):
    """Symbols s with c(s^Z^d) = s^Z^d"""
    k = len(c.neighborhood)
    return frozenset(s for s in range(c.alphabet) if c.rule.evaluate((s,) * k) == s)


def advance(c, arr, steps=1):
    """
    Apply c `steps` times to dense boxes in valid mode

    Args:
        c: CellularAutomaton
        arr: array whose last c.dim axes are spatial; leading axes are a batch
        steps: number of applications

    Returns:
        Array with every spatial axis shorter by 2 * radius * steps
    """
    r, d = c.radius, c.dim
    for _ in range(steps):
        space = arr.shape[-d:]
        if any(n <= 2 * r for n in space):
            raise ToolkitError(f"box {space} too small for radius {r}")
        views = []
        for o in c.offsets:
            index = (Ellipsis,) + tuple(slice(r + a, n - r + a) for a, n in zip(o, space))
            views.append(arr[index])
        arr = np.asarray(c.rule.evaluate_array(np.stack(views)), dtype=np.int64)
    return arr


def _check_pair(c, x):
    if c.dim != x.dim:
        raise DimensionMismatchError(f"automaton has dimension {c.dim}, configuration has {x.dim}")
    if c.alphabet != x.alphabet:
        raise AlphabetMismatchError(f"automaton alphabet {c.alphabet} differs from configuration alphabet {x.alphabet}")


def require_quiescent_zero(c):
    """Raise unless the all-0 neighborhood maps to 0"""
    if c.rule.evaluate((0,) * len(c.neighborhood)) != 0:
        raise BackgroundInstabilityError(f"symbol 0 is not quiescent for {c.name}; finite configurations are not preserved")


def _cells_from_dense(out, origin):
    return {add(origin, tuple(int(a) for a in idx)): int(out[tuple(idx)]) for idx in np.argwhere(out != 0)}


def step(c, x):
    """
    One application of c

    Args:
        c: CellularAutomaton
        x: configuration

    Returns:
        Configuration of the same kind for finite, tube and torus inputs
    """
    _check_pair(c, x)
    r = c.radius
    if isinstance(x, FiniteConfig):
        require_quiescent_zero(c)
        if not x.cells:
            return x
        lo, hi = bounding_box(x.cells)
        dense = x.to_dense(tuple(a - 2 * r for a in lo), tuple(b + 2 * r for b in hi))
        out = advance(c, dense)
        return FiniteConfig(x.dim, x.alphabet, _cells_from_dense(out, tuple(a - r for a in lo)))

    if isinstance(x, TubeConfig):
        j, p = x.axis, x.period
        if x.dim > 1:
            require_quiescent_zero(c)
            if not x.cells:
                return x
            lo, hi = bounding_box(x.cells)
        else:
            lo, hi = (0,), (p - 1,)
        lo = tuple(-r if i == j else a - 2 * r for i, a in enumerate(lo))
        hi = tuple(p - 1 + r if i == j else b + 2 * r for i, b in enumerate(hi))
        out = advance(c, x.to_dense(lo, hi))
        origin = tuple(0 if i == j else a + r for i, a in enumerate(lo))
        return TubeConfig(x.dim, x.alphabet, j, p, _cells_from_dense(out, origin))

    if isinstance(x, TorusConfig):
        lo = tuple(-r for _ in x.periods)
        hi = tuple(p - 1 + r for p in x.periods)
        return TorusConfig(x.dim, x.alphabet, x.periods, advance(c, x.to_dense(lo, hi)))

    if isinstance(x, OverlayConfig):
        flat = flatten(x)
        if not isinstance(flat, OverlayConfig):
            return step(c, flat)
        return EvolvedConfig(c, x, 1)

    if isinstance(x, EvolvedConfig) and x.automaton is c:
        return EvolvedConfig(c, x.base, x.steps + 1)
    return EvolvedConfig(c, x, 1)


def iterate(c, x, n):
    for _ in range(n):
        x = step(c, x)
    return x


@dataclass(frozen=True, eq=False)
class EvolvedConfig(Configuration):
    """c^steps(base), evaluated lazily through the dependence cone"""
    automaton: CellularAutomaton
    base: Configuration
    steps: int

    kind = 'evolved'

    @property
    def dim(self):
        return self.base.dim

    @property
    def alphabet(self):
        return self.base.alphabet

    def get(self, v):
        return cone_eval(self.automaton, self.base, tuple(v), self.steps)

    def shift(self, v):
        return EvolvedConfig(self.automaton, self.base.shift(tuple(v)), self.steps)

    def to_dense(self, lo, hi):
        frame = None
        for _, frame in evolve_window(self.automaton, self.base, lo, hi, self.steps):
            pass
        return frame


def evolve_window(c, x, lo, hi, steps):
    """
    Dense values of c^t(x) over the box [lo, hi] for t = 0..steps

    Only x on the box widened by radius * steps is read, which is the whole
    dependence cone, so every frame is exact.

    Yields:
        (t, array over [lo, hi])
    """
    _check_pair(c, x)
    r = c.radius
    lo, hi = tuple(lo), tuple(hi)
    reach = r * steps
    arr = x.to_dense(tuple(a - reach for a in lo), tuple(b + reach for b in hi))
    for t in range(steps + 1):
        margin = r * (steps - t)
        crop = tuple(slice(margin, n - margin) for n in arr.shape)
        yield t, arr[crop]
        if t < steps:
            arr = advance(c, arr)


def snapshot_plane(c, x, lo, hi, time=0, axes=(0, 1)):
    """
    c^time(x) on a 2-D slice of the box [lo, hi]

    The slice spans axes (j, k) over [lo, hi]; every other coordinate is fixed at lo.

    Returns:
        array indexed [axis j, axis k]
    """
    j, k = (int(a) for a in axes)
    if j == k or not (0 <= j < c.dim and 0 <= k < c.dim):
        raise DimensionMismatchError(f"axes {j},{k} are not two distinct axes of dimension {c.dim}")
    lo = tuple(lo)
    hi = tuple(b if i in (j, k) else a for i, (a, b) in enumerate(zip(lo, hi)))
    frame = None
    for _, frame in evolve_window(c, x, lo, hi, time):
        pass
    plane = frame[tuple(slice(None) if i in (j, k) else 0 for i in range(c.dim))]
    return plane.T if j > k else plane


def cone_eval(c, x, v, n):
    """
    c^n(x)_v computed from the cells of x in the dependence cone of v only

    Evaluated bottom up: level t is a dense box over B_{r(n-t)}(v) computed from
    level t-1.

    Args:
        c: CellularAutomaton
        x: configuration
        v: cell
        n: number of steps, n >= 0

    Returns:
        Symbol
    """
    _check_pair(c, x)
    check_dimension(v, c.dim)
    if n < 0:
        raise ValueError(f"number of steps must be non-negative, got {n}")
    v = tuple(v)
    reach = c.radius * n
    level = x.to_dense(tuple(a - reach for a in v), tuple(a + reach for a in v))
    return int(advance(c, level, n).reshape(-1)[0])


@dataclass(frozen=True)
class TraceReport:
    cell: tuple
    horizon: int
    word: tuple
    support: tuple
    truncated: bool

    def to_text(self):
        lines = [
            f"cell={format_vector(self.cell)}",
            f"horizon={self.horizon}",
            f"word={''.join(str(s) for s in self.word) if max(self.word, default=0) < 10 else ','.join(str(s) for s in self.word)}",
            f"support={{{','.join(str(n) for n in self.support)}}}",
            f"truncated={str(self.truncated).lower()}",
        ]
        return '\n'.join(lines)


def trace(c, x, v, horizon):
    """
    The first `horizon` symbols of the trace of x at cell v

    Args:
        c: CellularAutomaton
        x: configuration
        v: cell
        horizon: number of time steps N >= 1

    Returns:
        TraceReport
    """
    if horizon < 1:
        raise ValueError(f"trace horizon must be at least 1, got {horizon}")
    _check_pair(c, x)
    v = tuple(v)
    check_dimension(v, c.dim)
    if isinstance(x, (FiniteConfig, TubeConfig, TorusConfig)):
        word = []
        current = x
        for t in range(horizon):
            word.append(current.get(v))
            if t < horizon - 1:
                current = step(c, current)
    else:
        word = [int(frame.reshape(-1)[0]) for _, frame in evolve_window(c, x, v, v, horizon - 1)]
    support = tuple(n for n, s in enumerate(word) if s != 0)
    last_quarter = horizon - horizon // 4
    truncated = word[-1] != 0 or any(n >= last_quarter for n in support)
    return TraceReport(v, horizon, tuple(word), support, truncated)


def power(c, n):
    """
    c^n as an automaton on the neighborhood B_{rn}(0)

    The rule is a closure over c, no table is built.
    """
    if n < 1:
        raise ValueError(f"power must be at least 1, got {n}")
    neighborhood = Neighborhood(ball(c.radius * n, c.dim))
    return CellularAutomaton(c.dim, c.alphabet, neighborhood, PowerRule(c, n), f"{c.name}^{n}")


def reduce_dimension(c, axis, period):
    """
    The (d-1)-dimensional automaton conjugate to c on tubes of `period` along `axis`

    Args:
        c: CellularAutomaton with dim >= 2
        axis: the folded axis
        period: tube period p >= 1

    Returns:
        CellularAutomaton over alphabet S^p on the projection of B_r(0)
    """
    if c.dim < 2:
        raise DimensionMismatchError("dimension reduction needs an automaton of dimension at least 2")
    if not 0 <= axis < c.dim:
        raise DimensionMismatchError(f"axis {axis} outside dimension {c.dim}")
    if period < 1:
        raise ValueError(f"period must be at least 1, got {period}")
    neighborhood = Neighborhood(ball(c.radius, c.dim - 1))
    logger.info(f"Folding {c.name} along axis {axis} with period {period}: {c.alphabet ** period} symbols")
    return CellularAutomaton(c.dim - 1, c.alphabet ** period, neighborhood,
                             FoldedRule(c, axis, period), f"{c.name}[axis={axis},p={period}]")


def fold(x):
    """
    phi_{j,p}: a tube of period p along axis j as a (d-1)-dimensional finite
    configuration over S^p, column cell i contributing symbol * S^i
    """
    if not isinstance(x, TubeConfig):
        raise UnsupportedConfigurationError("only tube configurations can be folded")
    if x.dim < 2:
        raise DimensionMismatchError("folding needs dimension at least 2")
    j, s = x.axis, x.alphabet
    codes = {}
    for cell, symbol in x.cells.items():
        key = cell[:j] + cell[j + 1:]
        codes[key] = codes.get(key, 0) + symbol * s ** cell[j]
    return FiniteConfig(x.dim - 1, s ** x.period, codes)


def unfold(y, axis, period, alphabet):
    """Inverse of fold: rebuild the tube from column codes"""
    if y.alphabet != alphabet ** period:
        raise AlphabetMismatchError(f"alphabet {y.alphabet} is not {alphabet}^{period}")
    cells = {}
    for key, code in y.cells.items():
        for i in range(period):
            symbol = (code // alphabet ** i) % alphabet
            if symbol:
                cells[key[:axis] + (i,) + key[axis:]] = symbol
    return TubeConfig(y.dim + 1, alphabet, axis, period, cells)
