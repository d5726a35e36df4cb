"""
Subshifts of finite type given by forbidden patterns, the 1-D structure theory built
on the edge presentation of an SFT, and labelled-graph (sofic) presentations.

Patterns are read-only mappings cell -> symbol over a finite domain. One-dimensional
words are tuples of symbols.
"""
import itertools
import logging
from dataclasses import dataclass, field
from math import gcd
from types import MappingProxyType

import networkx as nx
import numpy as np

from configurations import FiniteConfig, TorusConfig, TubeConfig
from errors import AlphabetMismatchError, DimensionMismatchError, ToolkitError, UnsupportedConfigurationError
from geometry import add, bounding_box, check_dimension, format_vector, sub

logger = logging.getLogger(__name__)


def _freeze_pattern(pattern, dim, alphabet):
    frozen = {}
    for cell, symbol in dict(pattern).items():
        cell = tuple(int(a) for a in cell)
        check_dimension(cell, dim)
        if not 0 <= int(symbol) < alphabet:
            raise ToolkitError(f"pattern symbol {symbol} at {format_vector(cell)} outside alphabet 0..{alphabet - 1}")
        frozen[cell] = int(symbol)
    if not frozen:
        raise ToolkitError("forbidden patterns must be nonempty")
    return MappingProxyType(dict(sorted(frozen.items())))


@dataclass(frozen=True, eq=False)
class Sft:
    """The subshift of configurations in which no translate of a forbidden pattern occurs"""
    dim: int
    alphabet: int
    forbidden: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatchError(f"dimension must be at least 1, got {self.dim}")
        if self.alphabet < 1:
            raise ToolkitError(f"alphabet size must be at least 1, got {self.alphabet}")
        patterns = tuple(_freeze_pattern(p, self.dim, self.alphabet) for p in self.forbidden)
        object.__setattr__(self, 'forbidden', patterns)

    @property
    def diameter(self):
        """Largest max-norm extent of a forbidden pattern domain"""
        extent = 0
        for pattern in self.forbidden:
            lo, hi = bounding_box(pattern.keys())
            extent = max(extent, max(b - a for a, b in zip(lo, hi)))
        return extent


def sft_from_words(alphabet, words):
    """
    A 1-D SFT forbidding the given words

    Args:
        alphabet: number of symbols
        words: iterable of symbol sequences, e.g. [(1, 1)] or ['11']

    Returns:
        Sft of dimension 1
    """
    patterns = []
    for word in words:
        word = _word(word)
        patterns.append({(i,): s for i, s in enumerate(word)})
    return Sft(1, alphabet, tuple(patterns))


def _word(word):
    return tuple(int(s) for s in word)


def format_word(word):
    """Symbols concatenated when they are single digits, comma separated otherwise"""
    if all(s < 10 for s in word):
        return ''.join(str(s) for s in word)
    return ','.join(str(s) for s in word)


def forbidden_words(X):
    """
    The forbidden patterns of a 1-D SFT as words over contiguous intervals

    A pattern with gaps in its domain is replaced by every word that fills the gaps,
    which forbids exactly the same configurations.
    """
    if X.dim != 1:
        raise DimensionMismatchError("forbidden words are only defined in dimension 1")
    words = set()
    for pattern in X.forbidden:
        lo, hi = bounding_box(pattern.keys())
        gaps = [i for i in range(lo[0], hi[0] + 1) if (i,) not in pattern]
        for filling in itertools.product(range(X.alphabet), repeat=len(gaps)):
            values = dict(zip(gaps, filling))
            words.add(tuple(pattern.get((i,), values.get(i)) for i in range(lo[0], hi[0] + 1)))
    return frozenset(words)


def _matches(x, pattern, t):
    return all(x.get(add(t, d)) == s for d, s in pattern.items())


def _check_pair(X, x):
    if X.dim != x.dim:
        raise DimensionMismatchError(f"subshift has dimension {X.dim}, configuration has {x.dim}")
    if X.alphabet != x.alphabet:
        raise AlphabetMismatchError(f"subshift alphabet {X.alphabet} differs from configuration alphabet {x.alphabet}")


def _background_position(x, pattern):
    """A translate of the pattern domain lying entirely outside the support of x"""
    lo_p, hi_p = bounding_box(pattern.keys())
    if not x.cells:
        return sub((0,) * x.dim, lo_p)
    lo, hi = bounding_box(x.cells.keys())
    axis = 0
    if isinstance(x, TubeConfig):
        axis = next(i for i in range(x.dim) if i != x.axis)
    return tuple(hi[i] + 1 - lo_p[i] if i == axis else 0 for i in range(x.dim))


def _torus_contains(X, x):
    axes = tuple(range(x.dim))
    for pattern in X.forbidden:
        hit = np.ones(x.periods, dtype=bool)
        for d, s in pattern.items():
            hit &= np.roll(x.cells, tuple(-a for a in d), axis=axes) == s
        if np.any(hit):
            return False
    return True


def sft_contains(X, x):
    """
    Membership of a configuration in X

    Args:
        X: Sft
        x: FiniteConfig, TubeConfig or TorusConfig

    Returns:
        True iff no translate of a forbidden pattern matches x
    """
    _check_pair(X, x)
    if isinstance(x, TorusConfig):
        return _torus_contains(X, x)
    if not isinstance(x, (FiniteConfig, TubeConfig)):
        raise UnsupportedConfigurationError(f"membership of a {x.kind} configuration is not supported")

    for pattern in X.forbidden:
        if isinstance(x, TubeConfig) and x.dim == 1:
            positions = [(t,) for t in range(x.period)]
        else:
            positions = {sub(s, d) for s in x.cells for d in pattern}
            positions.add(_background_position(x, pattern))
        for t in sorted(positions):
            if _matches(x, pattern, t):
                logger.debug(f"Forbidden pattern matches at {format_vector(t)}")
                return False
    return True


def pattern_admissible(X, pattern):
    """
    True iff no forbidden pattern occurs entirely inside the finite pattern's domain

    Args:
        X: Sft
        pattern: dict cell -> symbol
    """
    pattern = {tuple(cell): int(s) for cell, s in dict(pattern).items()}
    for forbidden in X.forbidden:
        anchor = next(iter(forbidden))
        for cell in pattern:
            t = sub(cell, anchor)
            if all(pattern.get(add(t, d)) == s for d, s in forbidden.items()):
                return False
    return True


@dataclass(frozen=True)
class Component:
    vertices: tuple
    edges: tuple
    period: int

    transitive = True

    @property
    def mixing(self):
        return self.period == 1


@dataclass(frozen=True, eq=False)
class ComponentDecomposition:
    """
    The edge presentation of a 1-D SFT and its transitive components.

    `window` is the edge word length; vertices are allowed words one shorter.
    Components are listed in topological order of the condensation.
    """
    window: int
    vertices: tuple
    edges: tuple
    components: tuple
    graph: nx.DiGraph = field(repr=False)

    @property
    def trimmed(self):
        """Vertices on some bi-infinite path"""
        return tuple(sorted(self.graph.nodes))


def _allowed(word, forbidden):
    n = len(word)
    return not any(word[i:i + len(f)] == f for f in forbidden for i in range(n - len(f) + 1))


def edge_graph(X):
    """
    The presentation of a 1-D SFT: vertices are allowed (m-1)-words, edges the allowed
    m-words, each edge attribute `word` holding its m-word

    Returns:
        (window m, nx.DiGraph)
    """
    words = forbidden_words(X)
    m = max((len(w) for w in words), default=1)
    m = max(m, 2)
    graph = nx.DiGraph()
    count = 0
    for word in itertools.product(range(X.alphabet), repeat=m):
        if _allowed(word, words):
            graph.add_edge(word[:-1], word[1:], word=word)
            count += 1
    for vertex in itertools.product(range(X.alphabet), repeat=m - 1):
        if _allowed(vertex, words):
            graph.add_node(vertex)
    logger.info(f"Built edge graph with {graph.number_of_nodes()} vertices and {count} edges")
    return m, graph


def _cyclic_nodes(graph):
    nodes = set()
    for scc in nx.strongly_connected_components(graph):
        if len(scc) > 1 or any(graph.has_edge(v, v) for v in scc):
            nodes |= scc
    return nodes


def trim(graph):
    """Subgraph on the vertices that lie on a bi-infinite path"""
    cyclic = _cyclic_nodes(graph)
    forward, backward = set(cyclic), set(cyclic)
    for v in cyclic:
        forward |= nx.descendants(graph, v)
        backward |= nx.ancestors(graph, v)
    return graph.subgraph(forward & backward).copy()


def graph_period(graph):
    """gcd of the cycle lengths of a strongly connected graph with at least one edge"""
    root = next(iter(graph.nodes))
    level = {root: 0}
    queue = [root]
    for u in queue:
        for v in graph.successors(u):
            if v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    period = 0
    for u, v in graph.edges():
        period = gcd(period, level[u] + 1 - level[v])
    return abs(period)


def components_1d(X):
    """
    Transitive components of a 1-D SFT

    Args:
        X: Sft with dim 1

    Returns:
        ComponentDecomposition; empty when X is empty
    """
    if X.dim != 1:
        raise DimensionMismatchError("component decomposition is only defined in dimension 1")
    m, full = edge_graph(X)
    graph = trim(full)
    condensed = nx.condensation(graph)
    components = []
    for node in nx.topological_sort(condensed):
        members = condensed.nodes[node]['members']
        sub_graph = graph.subgraph(members)
        if sub_graph.number_of_edges() == 0:
            continue
        edges = tuple(sorted(data['word'] for _, _, data in sub_graph.edges(data=True)))
        components.append(Component(tuple(sorted(members)), edges, graph_period(sub_graph)))
    logger.info(f"Found {len(components)} transitive components")
    vertices = tuple(sorted(full.nodes))
    edges = tuple(sorted(data['word'] for _, _, data in full.edges(data=True)))
    return ComponentDecomposition(m, vertices, edges, tuple(components), graph)


def language_1d(X, n):
    """
    Words of length n occurring in configurations of a 1-D SFT

    Args:
        X: Sft with dim 1
        n: word length, n >= 0

    Returns:
        set of tuples
    """
    if n < 0:
        raise ValueError(f"word length must be non-negative, got {n}")
    decomposition = components_1d(X)
    graph = decomposition.graph
    if graph.number_of_nodes() == 0:
        return set()
    if n == 0:
        return {()}
    width = decomposition.window - 1
    if n <= width:
        return {v[:n] for v in graph.nodes}

    ending = {v: {v} for v in graph.nodes}
    for _ in range(n - width):
        extended = {v: set() for v in graph.nodes}
        for u, words in ending.items():
            for v in graph.successors(u):
                extended[v] |= {w + (v[-1],) for w in words}
        ending = extended
    return set().union(*ending.values())


class SoficPresentation:
    """
    A labelled directed graph; the subshift is the set of labels of bi-infinite paths.
    Stored as a networkx MultiDiGraph with edge attribute `label`, trimmed on construction.
    """

    def __init__(self, alphabet, edges, name='sofic'):
        self.alphabet = alphabet
        self.name = name
        graph = nx.MultiDiGraph()
        for source, target, label in edges:
            if not 0 <= label < alphabet:
                raise ToolkitError(f"edge label {label} outside alphabet 0..{alphabet - 1}")
            graph.add_edge(source, target, label=label)
        self.graph = make_essential(graph)

    @property
    def dim(self):
        return 1

    @property
    def states(self):
        return tuple(sorted(self.graph.nodes, key=str))

    def edges(self):
        return sorted(((u, v, label) for u, v, label in self.graph.edges(data='label')), key=str)


def make_essential(graph):
    """Repeatedly remove states with no incoming or no outgoing edge"""
    graph = graph.copy()
    while True:
        stranded = [v for v in graph.nodes if graph.in_degree(v) == 0 or graph.out_degree(v) == 0]
        if not stranded:
            return graph
        graph.remove_nodes_from(stranded)


def _zero_ends(graph):
    zero = nx.DiGraph()
    zero.add_nodes_from(graph.nodes)
    zero.add_edges_from((u, v) for u, v, label in graph.edges(data='label') if label == 0)
    cyclic = _cyclic_nodes(zero)
    left, right = set(cyclic), set(cyclic)
    for v in cyclic:
        left |= nx.descendants(zero, v)
        right |= nx.ancestors(zero, v)
    return left, right


def sofic_contains(P, x):
    """
    Membership of a finite 1-D configuration in the sofic shift presented by P

    The support interval of x is read through P starting from states reachable by a
    left-infinite 0 path; x is a member iff some final state starts a right-infinite 0 path.
    """
    if not isinstance(x, FiniteConfig):
        raise UnsupportedConfigurationError("sofic membership is only implemented for finite configurations")
    if x.dim != 1:
        raise DimensionMismatchError("sofic presentations are one-dimensional")
    if x.alphabet != P.alphabet:
        raise AlphabetMismatchError(f"presentation alphabet {P.alphabet} differs from configuration alphabet {x.alphabet}")
    left, right = _zero_ends(P.graph)
    states = set(left)
    if x.cells:
        (lo,), (hi,) = bounding_box(x.cells.keys())
        for i in range(lo, hi + 1):
            symbol = x.get((i,))
            states = {v for u in states for _, v, label in P.graph.out_edges(u, data='label') if label == symbol}
            if not states:
                return False
    return bool(states & right)
