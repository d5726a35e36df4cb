from automaton import builtin_automaton
from configurations import FiniteConfig
from fixtures import fixture
from probes import trajectory_frame
from visualization import plot_snapshot_heatmap, plot_spacetime_heatmap, plot_support_trend, spacetime_matrix


def test_spacetime_matrix_of_the_shift():
    c = builtin_automaton('shift-left')
    matrix = spacetime_matrix(c, FiniteConfig(1, 2, {(3,): 1}), 0, 3, 3)
    assert matrix.shape == (4, 4)
    assert matrix.tolist() == [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


def test_spacetime_heatmap():
    entry = fixture('lr-annihilation')
    fig = plot_spacetime_heatmap(entry.automaton, entry.seeds['approaching-pair'], -5, 5, 4)
    heatmap = fig.data[0]
    assert len(heatmap.z) == 5
    assert list(heatmap.x) == list(range(-5, 6))
    assert 'lr-annihilation' in fig.layout.title.text


def test_snapshot_heatmap_puts_axis_one_upwards():
    entry = fixture('game-of-life')
    fig = plot_snapshot_heatmap(entry.automaton, entry.seeds['P1'], (5, 5), (7, 7))
    z = [list(row) for row in fig.data[0].z]
    # row index is axis 1, column index is axis 0
    assert z == [[1, 1, 1], [1, 0, 0], [0, 1, 0]]


def test_support_trend():
    entry = fixture('countdown')
    fig = plot_support_trend(trajectory_frame(entry.automaton, entry.seeds['two-and-one'], 3))
    assert list(fig.data[0].y) == [2, 1, 0, 0]


def test_snapshot_heatmap_of_a_slice():
    c = builtin_automaton('countdown', dim=3)
    x = FiniteConfig(3, 3, {(0, 0, 1): 2, (1, 4, 0): 1})
    fig = plot_snapshot_heatmap(c, x, (0, 0, 0), (1, 0, 1), axes=(0, 2))
    assert [list(row) for row in fig.data[0].z] == [[0, 0], [2, 0]]
    assert fig.layout.yaxis.title.text == 'Axis 2'
