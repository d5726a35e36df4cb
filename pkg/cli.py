"""
Command-line front end.

    python cli.py probe nilpotency --rule countdown --n 2
    python cli.py trace --rule shift-left --config one-at-7 --cell "(0)" --horizon 20
    python cli.py render --rule game-of-life --config game-of-life:P1 --lo "(0,0)" --hi "(9,9)"

Exit codes: 0 Holds or normal completion, 1 Fails, 2 Unknown, 3 usage error,
4 file not found, 5 parse error, 6 guard exceeded, 7 dimension or alphabet
mismatch, 8 symbol 0 not quiescent, 9 any other toolkit error.
"""
import argparse
import logging
import os
import sys

import config
from automaton import BUILTIN_RULES, builtin_automaton, evolve_window, iterate, reduce_dimension, snapshot_plane, trace
from data_store import format_config, format_rule, load_config, load_rule, load_sft, save_data
from errors import (
    AlphabetMismatchError,
    BackgroundInstabilityError,
    DimensionMismatchError,
    GuardExceededError,
    ParseError,
    ToolkitError,
)
from fixtures import FIXTURE_NAMES, fixture
from geometry import parse_vector
from probes import (
    Verdict,
    check_disjoint_evolution,
    cycle_analysis,
    deep_preimage,
    mortality_probe,
    nilpotency_within,
    tower_confinement,
    trajectory_frame,
    uniform_visit_bound,
)
from subshifts import Sft, components_1d, format_word, language_1d

logger = logging.getLogger(__name__)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3
EXIT_NOT_FOUND = 4
EXIT_PARSE = 5
EXIT_GUARD = 6
EXIT_MISMATCH = 7
EXIT_BACKGROUND = 8
EXIT_ERROR = 9

_VERDICT_EXIT = {Verdict.HOLDS: EXIT_HOLDS, Verdict.FAILS: EXIT_FAILS, Verdict.UNKNOWN: EXIT_UNKNOWN}

# Glyph for symbol s is GLYPHS[s]; symbols beyond the table render as '?'
GLYPHS = '.#o*+xX@%&'


class UsageError(ToolkitError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def render_grid(rows):
    """One line per row of a 2-D symbol array"""
    return '\n'.join(''.join(GLYPHS[s] if s < len(GLYPHS) else '?' for s in row) for row in rows)


def render(c, x, lo, hi, steps=0, time=0, axes=(0, 1)):
    """
    Text picture of an evolution

    Args:
        c: CellularAutomaton
        x: configuration
        lo, hi: inclusive box corners
        steps: for 1-D, the last row of the spacetime diagram (row t is c^t(x))
        time: for dimension 2 and up, the step shown
        axes: for dimension 2 and up, the pair (j, k) to draw; other coordinates are fixed at lo.
            Rows run from the top of axis k down, columns along axis j

    Returns:
        newline separated grid
    """
    lo, hi = tuple(lo), tuple(hi)
    if c.dim == 1:
        return render_grid(frame for _, frame in evolve_window(c, x, lo, hi, steps))
    return render_grid(snapshot_plane(c, x, lo, hi, time, axes).T[::-1])


def _resolve_rule(args):
    spec = args.rule
    if spec is None:
        raise UsageError("--rule is required")
    if os.path.splitext(spec)[1] == '.rule' or os.sep in spec:
        return load_rule(spec)
    if spec in BUILTIN_RULES:
        return builtin_automaton(spec, args.dim, None, args.motion_axis)
    if spec in FIXTURE_NAMES:
        return fixture(spec).automaton
    raise UsageError(f"unknown rule {spec!r}: not a .rule file, builtin or fixture")


def _resolve_config(spec, flag='--config'):
    if spec is None:
        raise UsageError(f"{flag} is required")
    if os.path.splitext(spec)[1] == '.cfg' or os.sep in spec:
        return load_config(spec)
    name, _, seed = spec.rpartition(':')
    names = [name] if name else FIXTURE_NAMES
    for fixture_name in names:
        entry = fixture(fixture_name)
        if seed in entry.seeds:
            return entry.seeds[seed]
    raise UsageError(f"unknown configuration {spec!r}: not a .cfg file or fixture seed")


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _emit_report(report, out):
    out.write(report.to_text() + '\n')
    return _VERDICT_EXIT[report.verdict]


def _cmd_simulate(args, out):
    _require(args, 'horizon')
    c = _resolve_rule(args)
    x = _resolve_config(args.config)
    if args.csv:
        save_data(trajectory_frame(c, x, args.horizon), args.csv)
    if args.html:
        from visualization import plot_support_trend
        plot_support_trend(trajectory_frame(c, x, args.horizon)).write_html(args.html)
    out.write(format_config(iterate(c, x, args.horizon)))
    return EXIT_HOLDS


def _cmd_trace(args, out):
    _require(args, 'cell', 'horizon')
    c = _resolve_rule(args)
    x = _resolve_config(args.config)
    report = trace(c, x, parse_vector(args.cell, c.dim), args.horizon)
    out.write(report.to_text() + '\n')
    return EXIT_HOLDS


def _cmd_probe(args, out):
    c = _resolve_rule(args)
    probe = args.probe
    if probe == 'nilpotency':
        _require(args, 'n')
        report = nilpotency_within(c, args.n, args.guard)
    elif probe == 'visit':
        _require(args, 'k', 'n')
        report = uniform_visit_bound(c, args.k, args.n, args.mode, args.seed, args.trials, args.guard)
    elif probe == 'mortality':
        _require(args, 'horizon')
        report = mortality_probe(c, _resolve_config(args.config), args.horizon)
    elif probe == 'tower':
        _require(args, 'axis', 'k', 'horizon')
        report = tower_confinement(c, _resolve_config(args.config), args.axis, args.k, args.horizon)
    elif probe == 'cycle':
        report = cycle_analysis(c, _resolve_config(args.config), args.guard)
    elif probe == 'disjoint':
        _require(args, 'horizon')
        report = check_disjoint_evolution(c, _resolve_config(args.config),
                                          _resolve_config(args.other, '--other'), args.horizon)
    else:
        _require(args, 'word', 'depth')
        report = deep_preimage(c, [int(s) for s in args.word.replace(',', '')], args.depth, args.guard)
    return _emit_report(report, out)


def _cmd_reduce(args, out):
    _require(args, 'axis', 'period')
    c = _resolve_rule(args)
    out.write(format_rule(reduce_dimension(c, args.axis, args.period)))
    return EXIT_HOLDS


def _cmd_decompose(args, out):
    _require(args, 'sft')
    X = load_sft(args.sft)
    decomposition = components_1d(X)
    lines = [
        f"window={decomposition.window}",
        f"vertices={len(decomposition.vertices)}",
        f"edges={len(decomposition.edges)}",
        f"components={len(decomposition.components)}",
    ]
    for i, component in enumerate(decomposition.components):
        vertices = ','.join(format_word(v) for v in component.vertices)
        lines.append(f"component.{i}=vertices:{vertices};edges:{len(component.edges)};"
                     f"period:{component.period};mixing:{str(component.mixing).lower()}")
    if args.n is not None:
        words = sorted(language_1d(X, args.n))
        lines.append(f"language.{args.n}={','.join(format_word(w) for w in words)}")
    out.write('\n'.join(lines) + '\n')
    return EXIT_HOLDS


def _cmd_dump_fixture(args, out):
    entry = fixture(args.name)
    os.makedirs(args.dir, exist_ok=True)
    written = []
    path = os.path.join(args.dir, f"{entry.name}.rule")
    save_data(entry.automaton, path)
    written.append(path)
    if isinstance(entry.habitat, Sft):
        path = os.path.join(args.dir, f"{entry.name}.sft")
        save_data(entry.habitat, path)
        written.append(path)
    for seed, x in entry.seeds.items():
        path = os.path.join(args.dir, f"{entry.name}-{seed}.cfg")
        save_data(x, path)
        written.append(path)
    logger.info(f"Wrote {len(written)} files for fixture {entry.name} to {args.dir}")
    out.write('\n'.join(written) + '\n')
    return EXIT_HOLDS


def _parse_axes(value):
    try:
        j, k = (int(a) for a in value.split(','))
    except ValueError:
        raise UsageError(f"--axes expects two integers J,K, got {value!r}")
    return j, k


def _cmd_render(args, out):
    _require(args, 'lo', 'hi')
    c = _resolve_rule(args)
    x = _resolve_config(args.config)
    lo, hi = parse_vector(args.lo, c.dim), parse_vector(args.hi, c.dim)
    steps = args.horizon or 0
    axes = _parse_axes(args.axes)
    out.write(render(c, x, lo, hi, steps, steps, axes) + '\n')
    if args.html:
        from visualization import plot_snapshot_heatmap, plot_spacetime_heatmap
        if c.dim == 1:
            fig = plot_spacetime_heatmap(c, x, lo[0], hi[0], steps)
        else:
            fig = plot_snapshot_heatmap(c, x, lo, hi, steps, axes)
        fig.write_html(args.html)
    return EXIT_HOLDS


def _common(parser):
    parser.add_argument('--rule', help='rule file, builtin name or fixture name')
    parser.add_argument('--config', help='configuration file or fixture seed (NAME:SEED or SEED)')
    parser.add_argument('--dim', type=int, help='dimension for builtin rules that allow a choice')
    parser.add_argument('--axis', type=int, help='tower axis for the tower probe, folding axis for reduce')
    parser.add_argument('--motion-axis', type=int, default=0, help='motion axis of the shift-left builtin')
    parser.add_argument('--horizon', type=int)
    parser.add_argument('--n', type=int)
    parser.add_argument('--k', type=int)
    parser.add_argument('--guard', type=int)
    parser.add_argument('--verbose', '-v', action='count', default=0)


def build_parser():
    parser = _ArgumentParser(prog='ca-nilpotency', description='Cellular automaton nilpotency toolkit')
    commands = parser.add_subparsers(dest='command', required=True)

    simulate = commands.add_parser('simulate', help='evolve a configuration and print the result')
    _common(simulate)
    simulate.add_argument('--csv', help='write the support trajectory to this CSV file')
    simulate.add_argument('--html', help='write a support-size chart to this HTML file')
    simulate.set_defaults(handler=_cmd_simulate)

    trace_cmd = commands.add_parser('trace', help='trace of a configuration at one cell')
    _common(trace_cmd)
    trace_cmd.add_argument('--cell')
    trace_cmd.set_defaults(handler=_cmd_trace)

    probe = commands.add_parser('probe', help='run a bounded decision procedure')
    probe.add_argument('probe', choices=['nilpotency', 'visit', 'mortality', 'tower', 'cycle', 'disjoint', 'preimage'])
    _common(probe)
    probe.add_argument('--other', help='second configuration for the disjoint probe')
    probe.add_argument('--mode', choices=['exhaustive', 'sampled'], default='exhaustive')
    probe.add_argument('--seed', type=int, default=0)
    probe.add_argument('--trials', type=int, default=1000)
    probe.add_argument('--word', help='target word for the preimage probe, e.g. 1 or 0,1,2')
    probe.add_argument('--depth', type=int)
    probe.set_defaults(handler=_cmd_probe)

    reduce = commands.add_parser('reduce', help='fold a rule along an axis with a period')
    _common(reduce)
    reduce.add_argument('--period', type=int)
    reduce.set_defaults(handler=_cmd_reduce)

    decompose = commands.add_parser('decompose', help='transitive components of a 1-D SFT')
    decompose.add_argument('--sft')
    decompose.add_argument('--n', type=int, help='also list the language words of this length')
    decompose.add_argument('--verbose', '-v', action='count', default=0)
    decompose.set_defaults(handler=_cmd_decompose)

    dump = commands.add_parser('dump-fixture', help='write a fixture as rule and configuration files')
    dump.add_argument('name')
    dump.add_argument('--dir', default='.')
    dump.add_argument('--verbose', '-v', action='count', default=0)
    dump.set_defaults(handler=_cmd_dump_fixture)

    render_cmd = commands.add_parser('render', help='text picture of a 1-D spacetime diagram or 2-D snapshot')
    _common(render_cmd)
    render_cmd.add_argument('--lo')
    render_cmd.add_argument('--hi')
    render_cmd.add_argument('--axes', default='0,1', help='axis pair J,K drawn for dimension 2 and up')
    render_cmd.add_argument('--html', help='also write a plotly heatmap to this HTML file')
    render_cmd.set_defaults(handler=_cmd_render)

    return parser


def _configure_logging(verbose):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, str(config.LOG_LEVEL).upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


def run(argv, out=None):
    """
    Execute one command

    Args:
        argv: argument list without the program name
        out: text stream for the report, sys.stdout by default

    Returns:
        exit code
    """
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        return args.handler(args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"file not found: {e.filename or e}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except GuardExceededError as e:
        print(f"guard exceeded: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (DimensionMismatchError, AlphabetMismatchError) as e:
        print(f"mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except BackgroundInstabilityError as e:
        print(f"background instability: {e}", file=sys.stderr)
        return EXIT_BACKGROUND
    except ToolkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_HOLDS


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
