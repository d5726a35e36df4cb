import plotly.express as px
import plotly.graph_objects as go
import numpy as np

from automaton import evolve_window, snapshot_plane


def _colorscale(alphabet):
    """White for 0, then one qualitative colour per nonzero symbol"""
    colors = ['white'] + [px.colors.qualitative.Dark24[i % 24] for i in range(max(alphabet - 1, 1))]
    if alphabet <= 1:
        return [[0, 'white'], [1, 'white']]
    scale = []
    for s, color in enumerate(colors[:alphabet]):
        scale.append([s / (alphabet - 1), color])
    return scale


def spacetime_matrix(c, x, lo, hi, steps):
    """
    Rows t = 0..steps of c^t(x) over the 1-D interval [lo, hi]

    Returns:
        numpy array of shape (steps + 1, hi - lo + 1)
    """
    return np.stack([frame for _, frame in evolve_window(c, x, (lo,), (hi,), steps)])


def plot_spacetime_heatmap(c, x, lo, hi, steps):
    """
    Create a heatmap of a 1-D spacetime diagram, time running downwards

    Args:
        c: 1-D CellularAutomaton
        x: configuration
        lo, hi: inclusive cell interval
        steps: last time step

    Returns:
        Plotly figure object
    """
    matrix = spacetime_matrix(c, x, lo, hi, steps)
    fig = go.Figure(data=go.Heatmap(
        z=matrix,
        x=list(range(lo, hi + 1)),
        y=list(range(steps + 1)),
        colorscale=_colorscale(c.alphabet),
        zmin=0,
        zmax=max(c.alphabet - 1, 1),
        showscale=False
    ))

    fig.update_layout(
        title=f'Spacetime diagram of {c.name}',
        xaxis_title='Cell',
        yaxis_title='Step',
        height=700,
        yaxis=dict(autorange='reversed')
    )

    return fig


def plot_snapshot_heatmap(c, x, lo, hi, step=0, axes=(0, 1)):
    """
    Create a heatmap of c^step(x) over a 2-D slice, axis k upwards

    Args:
        c: CellularAutomaton of dimension 2 or more
        x: configuration
        lo, hi: inclusive box corners
        step: time step to show
        axes: the pair (j, k) shown; other coordinates are fixed at lo

    Returns:
        Plotly figure object
    """
    j, k = axes
    plane = snapshot_plane(c, x, lo, hi, step, axes)
    fig = go.Figure(data=go.Heatmap(
        z=plane.T,
        x=list(range(lo[j], hi[j] + 1)),
        y=list(range(lo[k], hi[k] + 1)),
        colorscale=_colorscale(c.alphabet),
        zmin=0,
        zmax=max(c.alphabet - 1, 1),
        showscale=False
    ))

    fig.update_layout(
        title=f'{c.name} at step {step}',
        xaxis_title=f'Axis {j}',
        yaxis_title=f'Axis {k}',
        height=700,
        yaxis=dict(scaleanchor='x')
    )

    return fig


def plot_support_trend(df):
    """
    Create a line chart of the support size over time

    Args:
        df: DataFrame from probes.trajectory_frame

    Returns:
        Plotly figure object
    """
    fig = px.line(
        df,
        x='step',
        y='support_size',
        labels={'step': 'Step', 'support_size': 'Nonzero cells'},
        title='Support size'
    )
    fig.update_layout(height=500)
    return fig
