"""
Integer-lattice geometry on Z^d: the max-norm, balls around finite vector sets and
towers (infinite axis-aligned slabs, represented only by a membership test).

Vectors are plain tuples of ints. Finite vector sets are returned as sorted tuples
so enumeration order is deterministic.
"""
import itertools
import re
from dataclasses import dataclass

from errors import DimensionMismatchError, EmptyBaseError, ParseError

_VECTOR_RE = re.compile(r'^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*,?\s*\)$')


def check_dimension(v, dim):
    """Raise DimensionMismatchError unless `v` has exactly `dim` coordinates"""
    if len(v) != dim:
        raise DimensionMismatchError(f"vector {format_vector(v)} has dimension {len(v)}, expected {dim}")


def zero(dim):
    return (0,) * dim


def unit(dim, axis, length=1):
    """The vector length * e_axis"""
    if not 0 <= axis < dim:
        raise DimensionMismatchError(f"axis {axis} outside dimension {dim}")
    return tuple(length if i == axis else 0 for i in range(dim))


def add(u, v):
    if len(u) != len(v):
        raise DimensionMismatchError(f"cannot add {format_vector(u)} and {format_vector(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    if len(u) != len(v):
        raise DimensionMismatchError(f"cannot subtract {format_vector(v)} from {format_vector(u)}")
    return tuple(a - b for a, b in zip(u, v))


def neg(v):
    return tuple(-a for a in v)


def norm(v):
    """
    Max-norm of a lattice vector

    Args:
        v: tuple of ints

    Returns:
        max_i |v_i| (0 for the zero vector)
    """
    return max((abs(a) for a in v), default=0)


def ball_enumerate(k, vectors):
    """
    Enumerate B_k(V), the cells within max-norm distance k of some vector of V

    Args:
        k: non-negative radius
        vectors: non-empty iterable of equal-dimension vectors

    Returns:
        Sorted tuple of cells
    """
    vectors = list(vectors)
    if not vectors:
        raise EmptyBaseError("ball around an empty vector set is undefined")
    if k < 0:
        raise ValueError(f"ball radius must be non-negative, got {k}")
    dim = len(vectors[0])
    for v in vectors:
        check_dimension(v, dim)

    offsets = list(itertools.product(range(-k, k + 1), repeat=dim))
    cells = {add(v, o) for v in vectors for o in offsets}
    return tuple(sorted(cells))


def ball(k, dim):
    """B_k(0) in dimension `dim`, sorted"""
    return tuple(itertools.product(range(-k, k + 1), repeat=dim))


def bounding_box(cells):
    """
    Componentwise minimum and maximum of a non-empty cell collection

    Returns:
        (lo, hi) tuples, both inclusive
    """
    cells = list(cells)
    if not cells:
        raise EmptyBaseError("bounding box of an empty set is undefined")
    dim = len(cells[0])
    lo = tuple(min(c[i] for c in cells) for i in range(dim))
    hi = tuple(max(c[i] for c in cells) for i in range(dim))
    return lo, hi


def box_cells(lo, hi):
    """All cells of the inclusive box [lo, hi], in lexicographic order"""
    return tuple(itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))))


@dataclass(frozen=True)
class TowerDescriptor:
    """
    tower(axis, k, base): the B_k-widening of every axis-parallel line through a base vector.

    The set is infinite along `axis`, so it is only ever used through `contains`.
    """
    axis: int
    k: int
    base: tuple

    def __post_init__(self):
        base = tuple(sorted(set(self.base)))
        if not base:
            raise EmptyBaseError("tower needs at least one base vector")
        dim = len(base[0])
        for v in base:
            check_dimension(v, dim)
        if not 0 <= self.axis < dim:
            raise DimensionMismatchError(f"tower axis {self.axis} outside dimension {dim}")
        if self.k < 0:
            raise ValueError(f"tower width parameter must be non-negative, got {self.k}")
        object.__setattr__(self, 'base', base)

    @property
    def dim(self):
        return len(self.base[0])

    def contains(self, u):
        return tower_contains(self, u)


def tower_contains(tower, u):
    """
    Membership in tower(j, k, V)

    Args:
        tower: TowerDescriptor
        u: cell of the same dimension

    Returns:
        True iff some base vector v has |u_i - v_i| <= k on every axis i != j
    """
    check_dimension(u, tower.dim)
    j, k = tower.axis, tower.k
    for v in tower.base:
        if all(abs(a - b) <= k for i, (a, b) in enumerate(zip(u, v)) if i != j):
            return True
    return False


def format_vector(v):
    """Serialise a vector as `(3,-4)`"""
    return '(' + ','.join(str(a) for a in v) + ')'


def parse_vector(text, dim=None, line=None):
    """
    Parse a parenthesised comma-separated integer vector such as `(3,-4)` or `(7)`

    Args:
        text: the vector text
        dim: expected dimension, or None to accept any
        line: source line number used in error messages

    Returns:
        tuple of ints
    """
    match = _VECTOR_RE.match(text.strip())
    if not match:
        raise ParseError(f"malformed vector {text.strip()!r}", line)
    v = tuple(int(part) for part in match.group(1).split(','))
    if dim is not None and len(v) != dim:
        raise ParseError(f"vector {text.strip()} has dimension {len(v)}, expected {dim}", line)
    return v
