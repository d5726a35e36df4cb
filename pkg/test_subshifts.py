import itertools

import numpy as np
import pytest

from configurations import FiniteConfig, TorusConfig, TubeConfig, shift
from errors import AlphabetMismatchError, DimensionMismatchError, ToolkitError
from fixtures import lr_habitat, single_one_habitat
from subshifts import (
    SoficPresentation,
    Sft,
    components_1d,
    forbidden_words,
    format_word,
    language_1d,
    pattern_admissible,
    sft_contains,
    sft_from_words,
    sofic_contains,
)

GOLDEN_MEAN = sft_from_words(2, ['11'])


def line(alphabet, cells):
    return FiniteConfig(1, alphabet, {(v,): s for v, s in cells.items()})


def allowed(word, words):
    return not any(word[i:i + len(f)] == f for f in words for i in range(len(word) - len(f) + 1))


def brute_force_language(X, n):
    """Words of length n that extend far enough on both sides to extend forever"""
    words = forbidden_words(X)
    m = max([2] + [len(w) for w in words])
    reach = X.alphabet ** (m - 1)
    pads = list(itertools.product(range(X.alphabet), repeat=reach))
    result = set()
    for w in itertools.product(range(X.alphabet), repeat=n):
        if n >= m - 1:
            left = any(allowed(u + w, words) for u in pads)
            right = any(allowed(w + v, words) for v in pads)
            found = left and right
        else:
            found = any(allowed(u + w + v, words) for u in pads for v in pads)
        if found:
            result.add(w)
    return result


def test_golden_mean_membership():
    assert sft_contains(GOLDEN_MEAN, line(2, {0: 1, 2: 1}))
    assert not sft_contains(GOLDEN_MEAN, line(2, {0: 1, 1: 1}))
    assert sft_contains(GOLDEN_MEAN, line(2, {}))


def test_pattern_of_zeros_excludes_every_finite_configuration():
    X = Sft(2, 2, ({(0, 0): 0, (1, 0): 0},))
    assert not sft_contains(X, FiniteConfig(2, 2, {}))
    assert not sft_contains(X, FiniteConfig(2, 2, {(0, 0): 1}))
    assert sft_contains(X, TorusConfig(2, 2, (2, 1), np.array([[1], [0]])))
    assert not sft_contains(X, TorusConfig(2, 2, (2, 1), np.array([[0], [0]])))


def test_tube_membership():
    assert sft_contains(GOLDEN_MEAN, TubeConfig(1, 2, 0, 3, {(0,): 1}))
    assert not sft_contains(GOLDEN_MEAN, TubeConfig(1, 2, 0, 1, {(0,): 1}))
    vertical = Sft(2, 2, ({(0, 0): 1, (0, 1): 1},))
    assert sft_contains(vertical, TubeConfig(2, 2, 1, 2, {(0, 0): 1}))
    assert not sft_contains(vertical, TubeConfig(2, 2, 1, 1, {(0, 0): 1}))
    # a horizontal pair is fine for a vertical constraint
    assert sft_contains(vertical, TubeConfig(2, 2, 1, 2, {(0, 0): 1, (1, 0): 1}))


def test_membership_is_shift_invariant():
    rng = np.random.default_rng(3)
    for _ in range(50):
        cells = {int(v): int(rng.integers(0, 2)) for v in rng.integers(-6, 7, size=4)}
        x = line(2, cells)
        v = (int(rng.integers(-20, 21)),)
        assert sft_contains(GOLDEN_MEAN, shift(x, v)) == sft_contains(GOLDEN_MEAN, x)


def test_pattern_admissible():
    vertical = Sft(2, 2, ({(0, 0): 1, (0, 1): 1},))
    assert pattern_admissible(vertical, {(0, 0): 1, (0, 1): 0, (0, 2): 1})
    assert not pattern_admissible(vertical, {(3, 4): 1, (3, 5): 1})
    # the forbidden pattern sticks out of a single cell
    assert pattern_admissible(vertical, {(0, 0): 1})


def test_membership_checks_dimension_and_alphabet():
    with pytest.raises(DimensionMismatchError):
        sft_contains(GOLDEN_MEAN, FiniteConfig(2, 2, {}))
    with pytest.raises(AlphabetMismatchError):
        sft_contains(GOLDEN_MEAN, line(3, {0: 2}))


def test_invalid_patterns():
    with pytest.raises(ToolkitError):
        Sft(1, 2, ({(0,): 2},))
    with pytest.raises(ToolkitError):
        Sft(1, 2, ({},))


def test_forbidden_words_fill_gaps():
    X = Sft(1, 2, ({(0,): 1, (2,): 1},))
    assert forbidden_words(X) == {(1, 0, 1), (1, 1, 1)}
    assert X.diameter == 2
    assert GOLDEN_MEAN.diameter == 1


def test_golden_mean_is_one_mixing_component():
    decomposition = components_1d(GOLDEN_MEAN)
    assert decomposition.window == 2
    assert decomposition.vertices == ((0,), (1,))
    assert decomposition.edges == ((0, 0), (0, 1), (1, 0))
    assert len(decomposition.components) == 1
    component = decomposition.components[0]
    assert component.period == 1
    assert component.mixing


def test_two_components_in_topological_order():
    decomposition = components_1d(sft_from_words(2, ['10']))
    assert [component.vertices for component in decomposition.components] == [((0,),), ((1,),)]
    assert [component.edges for component in decomposition.components] == [((0, 0),), ((1, 1),)]


def test_full_shift_and_period_two_shift():
    full = components_1d(Sft(1, 2))
    assert len(full.components) == 1
    assert len(full.components[0].edges) == 4
    alternating = components_1d(sft_from_words(2, ['00', '11']))
    assert len(alternating.components) == 1
    assert alternating.components[0].period == 2
    assert not alternating.components[0].mixing


def test_empty_subshift():
    X = sft_from_words(2, ['0', '1'])
    assert components_1d(X).components == ()
    assert language_1d(X, 3) == set()
    assert language_1d(X, 0) == set()


def test_dead_ends_are_trimmed():
    # a 1 can be followed by nothing, so no configuration contains one
    X = sft_from_words(2, ['10', '11'])
    decomposition = components_1d(X)
    assert decomposition.trimmed == ((0,),)
    assert language_1d(X, 2) == {(0, 0)}


def test_language_examples():
    assert language_1d(GOLDEN_MEAN, 0) == {()}
    assert language_1d(GOLDEN_MEAN, 1) == {(0,), (1,)}
    assert language_1d(GOLDEN_MEAN, 2) == {(0, 0), (0, 1), (1, 0)}
    assert language_1d(GOLDEN_MEAN, 3) == {(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)}
    assert language_1d(sft_from_words(2, ['10']), 3) == {(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)}
    with pytest.raises(ValueError):
        language_1d(GOLDEN_MEAN, -1)


def test_language_matches_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(5):
        words = []
        for _ in range(int(rng.integers(1, 4))):
            length = int(rng.integers(1, 4))
            words.append(tuple(int(s) for s in rng.integers(0, 2, size=length)))
        X = sft_from_words(2, words)
        for n in range(1, 9):
            assert language_1d(X, n) == brute_force_language(X, n), (words, n)


def test_components_need_dimension_one():
    with pytest.raises(DimensionMismatchError):
        components_1d(Sft(2, 2))


def test_format_word():
    assert format_word((0, 1, 1)) == '011'
    assert format_word((3, 12)) == '3,12'


def test_single_one_habitat():
    P = single_one_habitat()
    assert sofic_contains(P, line(2, {}))
    assert sofic_contains(P, line(2, {7: 1}))
    assert not sofic_contains(P, line(2, {0: 1, 3: 1}))


def test_lr_habitat_requires_alternating_particles():
    P = lr_habitat()
    assert sofic_contains(P, line(3, {-3: 2, 3: 1}))
    assert sofic_contains(P, line(3, {-3: 1, 3: 2}))
    assert sofic_contains(P, line(3, {0: 1, 4: 2, 9: 1}))
    assert not sofic_contains(P, line(3, {0: 1, 4: 1}))
    assert not sofic_contains(P, line(3, {0: 2, 4: 2}))
    with pytest.raises(AlphabetMismatchError):
        sofic_contains(P, line(2, {}))


def test_presentation_drops_stranded_states():
    P = SoficPresentation(2, [('A', 'A', 0), ('A', 'C', 1)])
    assert P.states == ('A',)
    assert P.edges() == [('A', 'A', 0)]
    with pytest.raises(ToolkitError):
        SoficPresentation(2, [('A', 'A', 2)])


def random_sft(rng, dim):
    patterns = []
    for _ in range(int(rng.integers(1, 3))):
        offset = (0,) * dim
        while offset == (0,) * dim:
            offset = tuple(int(a) for a in rng.integers(-1, 2, size=dim))
        patterns.append({(0,) * dim: 1, offset: int(rng.integers(0, 2))})
    return Sft(dim, 2, tuple(patterns))


def windows_admissible(X, x, dim):
    for corner in itertools.product(range(-3, 1), repeat=dim):
        domain = itertools.product(*(range(a, a + 3) for a in corner))
        if not pattern_admissible(X, {u: x.get(u) for u in domain}):
            return False
    return True


def test_torus_then_tube_then_window_membership():
    rng = np.random.default_rng(71)
    members = 0
    for trial in range(200):
        dim = 1 + trial % 2
        X = random_sft(rng, dim)
        periods = tuple(int(p) for p in rng.integers(1, 5, size=dim))
        torus = TorusConfig(dim, 2, periods, rng.integers(0, 2, size=periods))
        if sft_contains(X, torus):
            members += 1
            assert windows_admissible(X, torus, dim)
            if dim == 1:
                cells = {(i,): int(s) for i, s in enumerate(torus.cells) if s}
                assert sft_contains(X, TubeConfig(1, 2, 0, periods[0], cells))
        slab = {tuple(int(a) for a in rng.integers(0, 3, size=dim)): 1 for _ in range(3)}
        tube = TubeConfig(dim, 2, 0, int(rng.integers(3, 6)), slab)
        if sft_contains(X, tube):
            members += 1
            assert windows_admissible(X, tube, dim)
    assert members > 0
