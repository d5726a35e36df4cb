"""
Named automata with their habitats and seed configurations, and the Alexandroff
system (n -> n-1 on the naturals, fixed point at infinity).
"""
import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from automaton import LEFT_MOVER, RIGHT_MOVER, builtin_automaton
from configurations import FiniteConfig, TorusConfig
from data_store import load_config
from errors import ToolkitError, UnknownFixtureError
from subshifts import SoficPresentation, sft_contains, sofic_contains

logger = logging.getLogger(__name__)

PATTERN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'patterns')


@dataclass(frozen=True, eq=False)
class FixtureEntry:
    name: str
    automaton: object
    habitat: Optional[object] = None
    seeds: dict = field(default_factory=dict)
    behaviour: str = ''

    def in_habitat(self, x):
        """True when x belongs to the habitat, or when there is no habitat (full shift)"""
        if self.habitat is None:
            return True
        if isinstance(self.habitat, SoficPresentation):
            return sofic_contains(self.habitat, x)
        return sft_contains(self.habitat, x)


def single_one_habitat():
    """Presentation of the configurations with at most one 1"""
    return SoficPresentation(2, [('A', 'A', 0), ('A', 'B', 1), ('B', 'B', 0)], name='0*10*')


def lr_habitat():
    """Presentation of the configurations whose particles alternate l, r, l, r, ..."""
    return SoficPresentation(3, [
        ('A', 'A', 0),
        ('A', 'B', LEFT_MOVER),
        ('B', 'B', 0),
        ('B', 'A', RIGHT_MOVER),
    ], name='(0*l0*r)*')


def load_pattern(filename):
    return load_config(os.path.join(PATTERN_DIR, filename))


def _line(alphabet, cells):
    return FiniteConfig(1, alphabet, {(v,): s for v, s in cells.items()})


def _shift_single_one():
    return FixtureEntry(
        'shift-single-one',
        builtin_automaton('shift-left'),
        single_one_habitat(),
        {'one-at-7': _line(2, {7: 1})},
        "asymptotically nilpotent but not nilpotent on its habitat: a 1 at n visits the origin at time n",
    )


def _lr_annihilation():
    return FixtureEntry(
        'lr-annihilation',
        builtin_automaton('lr-annihilation'),
        lr_habitat(),
        {
            'approaching-pair': _line(3, {-3: RIGHT_MOVER, 3: LEFT_MOVER}),
            'adjacent-pair': _line(3, {0: RIGHT_MOVER, 1: LEFT_MOVER}),
            'separating-pair': _line(3, {-3: LEFT_MOVER, 3: RIGHT_MOVER}),
        },
        "an r at a and an l at a+g annihilate at step ceil(g/2)",
    )


def _game_of_life():
    return FixtureEntry(
        'game-of-life',
        builtin_automaton('game-of-life'),
        None,
        {
            'P1': load_pattern('glider_p1.cfg'),
            'P2': load_pattern('gosper_gun_p2.cfg'),
            'P3': load_pattern('lwss_p3.cfg'),
        },
        "glider P1 moves one cell diagonally every 4 steps; gun P2 emits gliders; P3 is a spaceship",
    )


def _xor_pair():
    return FixtureEntry(
        'xor-pair',
        builtin_automaton('xor-pair'),
        None,
        {
            'single-one': _line(2, {0: 1}),
            'torus-100': TorusConfig(1, 2, (3,), np.array([1, 0, 0])),
        },
        "a single 1 never dies; on the 3-torus (1,0,0) has preperiod 1 and period 3",
    )


def _countdown():
    return FixtureEntry(
        'countdown',
        builtin_automaton('countdown'),
        None,
        {'two-and-one': _line(3, {0: 2, 5: 1})},
        "every cell reaches 0 within 2 steps",
    )


_BUILDERS = {
    'shift-single-one': _shift_single_one,
    'lr-annihilation': _lr_annihilation,
    'game-of-life': _game_of_life,
    'xor-pair': _xor_pair,
    'countdown': _countdown,
}

FIXTURE_NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def fixture(name):
    """
    Look up a fixture by name

    Args:
        name: one of FIXTURE_NAMES

    Returns:
        FixtureEntry
    """
    if name not in _BUILDERS:
        raise UnknownFixtureError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    logger.debug(f"Building fixture {name}")
    return _BUILDERS[name]()


@dataclass(frozen=True)
class AlexandroffState:
    """A natural number, or infinity when `value` is None"""
    value: Optional[int] = None

    def __post_init__(self):
        if self.value is not None and self.value < 0:
            raise ToolkitError(f"Alexandroff states are naturals or infinity, got {self.value}")

    @property
    def is_infinite(self):
        return self.value is None

    def __str__(self):
        return 'inf' if self.is_infinite else str(self.value)


INFINITY = AlexandroffState()

# n -> verified hitting time; orbits stop iterating at the first known state
_HITTING_TIMES = {}


def alexandroff_step(s):
    if s.is_infinite or s.value == 0:
        return INFINITY
    return AlexandroffState(s.value - 1)


def alexandroff_orbit(n):
    """States n, n-1, ..., 0, inf"""
    s = AlexandroffState(n)
    orbit = [s]
    while not s.is_infinite:
        s = alexandroff_step(s)
        orbit.append(s)
    return orbit


def alexandroff_hitting_time(n):
    """
    First time the orbit of n reaches infinity

    Args:
        n: natural number

    Returns:
        n + 1, checked by iterating the map
    """
    if n < 0:
        raise ToolkitError(f"hitting time is defined for naturals, got {n}")
    s, t = AlexandroffState(n), 0
    while not s.is_infinite and s.value not in _HITTING_TIMES:
        s = alexandroff_step(s)
        t += 1
    if not s.is_infinite:
        t += _HITTING_TIMES[s.value]
    if t != n + 1:
        raise ToolkitError(f"orbit of {n} reached infinity after {t} steps")
    _HITTING_TIMES[n] = t
    return t
