import numpy as np
import pandas as pd
import pytest

from automaton import builtin_automaton, power, step
from configurations import FiniteConfig, TorusConfig, TubeConfig, support
from data_store import (
    format_config,
    format_rule,
    load_data,
    parse_config,
    parse_rule,
    parse_sft,
    save_data,
)
from errors import ParseError, ToolkitError
from probes import nilpotency_within
from subshifts import Sft, sft_contains

XOR_TABLE = """%CA-RULE v1
# x_v xor x_{v+1}
dim: 1
alphabet: 2
neighborhood: (0),(1)
map:
0,0=0
0,1=1
1,0=1
1,1=0
"""


def test_parse_finite_configuration():
    x = parse_config("%CA-CONFIG v1\ndim: 2\nalphabet: 3\ncells:\n(1,-2)=2  # trailing comment\n\n(0,0)=1\n")
    assert isinstance(x, FiniteConfig)
    assert x.cells == {(0, 0): 1, (1, -2): 2}


def test_parse_tube_and_torus():
    tube = parse_config("%CA-CONFIG v1\ndim: 2\nalphabet: 2\nkind: tube\naxis: 1\nperiod: 3\ncells:\n(0,4)=1\n")
    assert isinstance(tube, TubeConfig)
    assert tube.get((0, 1)) == 1
    torus = parse_config("%CA-CONFIG v1\ndim: 1\nalphabet: 2\nkind: torus\nperiods: 3\ncells:\n(0)=1\n")
    assert isinstance(torus, TorusConfig)
    assert torus.cells.tolist() == [1, 0, 0]


def test_configuration_survives_a_file_round_trip(tmp_path):
    tube = TubeConfig(2, 3, 0, 4, {(1, 5): 2, (3, -1): 1})
    path = tmp_path / 'tube.cfg'
    save_data(tube, str(path))
    back = load_data(str(path))
    assert back.axis == 0
    assert back.period == 4
    assert back.cells == tube.cells
    torus = TorusConfig(2, 2, (2, 3), np.array([[0, 1, 0], [1, 0, 0]]))
    assert parse_config(format_config(torus)).cells.tolist() == torus.cells.tolist()


def test_configuration_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_config("%CA-CONFIG v1\ndim: 1\nalphabet: 2\ncells:\n(0)=1\n(0)=1\n")
    assert info.value.line == 6
    with pytest.raises(ParseError) as info:
        parse_config("dim: 1\n")
    assert info.value.line == 1
    with pytest.raises(ParseError):
        parse_config("%CA-CONFIG v1\ndim: 1\nalphabet: 2\ncells:\n(0)=2\n")
    with pytest.raises(ParseError):
        parse_config("%CA-CONFIG v1\ndim: 1\nalphabet: 2\ncells:\n(0,0)=1\n")
    with pytest.raises(ParseError):
        parse_config("%CA-CONFIG v1\ndim: 1\nalphabet: 2\n")
    with pytest.raises(ParseError):
        parse_config("%CA-CONFIG v1\ndim: 1\nalphabet: 2\nkind: sphere\ncells:\n")


def test_inconsistent_configurations_become_parse_errors():
    # the two cells coincide once reduced along the axis
    with pytest.raises(ParseError):
        parse_config("%CA-CONFIG v1\ndim: 2\nalphabet: 2\nkind: tube\naxis: 1\nperiod: 3\ncells:\n(0,0)=1\n(0,3)=1\n")
    with pytest.raises(ParseError):
        parse_config("%CA-CONFIG v1\ndim: 1\nalphabet: 2\nkind: torus\nperiods: 3\ncells:\n(3)=1\n")


def test_parse_table_rule():
    c = parse_rule(XOR_TABLE)
    assert c.offsets == ((0,), (1,))
    assert support(step(c, FiniteConfig(1, 2, {(0,): 1}))) == ((-1,), (0,))


def test_rule_table_must_be_total():
    text = XOR_TABLE.replace('1,1=0\n', '')
    with pytest.raises(ParseError) as info:
        parse_rule(text)
    assert '1,1' in str(info.value)
    with pytest.raises(ParseError):
        parse_rule(XOR_TABLE.replace('1,1=0', '1,1=2'))
    with pytest.raises(ParseError):
        parse_rule(XOR_TABLE + '0,0=1\n')


def test_parse_builtin_rule():
    c = parse_rule("%CA-RULE v1\ndim: 2\nalphabet: 2\nkind: builtin\nname: shift-left\naxis: 1\n")
    assert support(step(c, FiniteConfig(2, 2, {(3, 3): 1}))) == ((3, 2),)
    with pytest.raises(ParseError):
        parse_rule("%CA-RULE v1\ndim: 1\nalphabet: 2\nkind: builtin\nname: rule-110\n")
    with pytest.raises(ParseError):
        parse_rule("%CA-RULE v1\ndim: 2\nalphabet: 2\nkind: builtin\nname: xor-pair\n")


def test_builtins_are_written_by_name():
    text = format_rule(builtin_automaton('lr-annihilation'))
    assert 'name: lr-annihilation' in text
    assert 'map:' not in text
    c = parse_rule(text)
    assert c.offsets == builtin_automaton('lr-annihilation').offsets


def test_composite_rules_are_tabulated():
    text = format_rule(power(builtin_automaton('countdown'), 2))
    assert 'kind: table' in text
    assert '2=0' in text.splitlines()
    assert nilpotency_within(parse_rule(text), 1).holds


def test_parse_sft():
    X = parse_sft("%CA-SFT v1\ndim: 1\nalphabet: 2\nforbid:\n(0)=1\n(1)=1\n\nforbid:\n(0)=0\n(2)=0\n")
    assert len(X.forbidden) == 2
    assert dict(X.forbidden[0]) == {(0,): 1, (1,): 1}
    assert not sft_contains(X, FiniteConfig(1, 2, {(0,): 1, (1,): 1}))


def test_sft_errors():
    with pytest.raises(ParseError):
        parse_sft("%CA-SFT v1\ndim: 1\nalphabet: 2\nforbid:\nforbid:\n(0)=1\n")
    with pytest.raises(ParseError):
        parse_sft("%CA-SFT v1\ndim: 1\nalphabet: 2\nforbid:\n(0)=1\n(0)=0\n")


def test_blank_lines_separate_sft_patterns():
    X = parse_sft("%CA-SFT v1\ndim: 1\nalphabet: 3\nforbid:\n(0)=1\n(1)=1\n\n(0)=2\n(1)=2\n")
    assert [dict(p) for p in X.forbidden] == [{(0,): 1, (1,): 1}, {(0,): 2, (1,): 2}]
    # comment-only lines keep a pattern open
    X = parse_sft("%CA-SFT v1\ndim: 1\nalphabet: 2\nforbid:\n\n(0)=1\n# second cell\n(1)=1\n\n\n")
    assert [dict(p) for p in X.forbidden] == [{(0,): 1, (1,): 1}]


def test_sft_round_trip(tmp_path):
    X = Sft(2, 2, ({(0, 0): 1, (0, 1): 1}, {(0, 0): 1, (1, 0): 1}))
    path = tmp_path / 'hard_squares.sft'
    save_data(X, str(path))
    back = load_data(str(path))
    assert [dict(p) for p in back.forbidden] == [dict(p) for p in X.forbidden]


def test_csv_tables(tmp_path):
    frame = pd.DataFrame({'step': [0, 1], 'support_size': [2, 1]})
    path = tmp_path / 'trajectory.csv'
    save_data(frame, str(path))
    assert load_data(str(path))['support_size'].tolist() == [2, 1]


def test_unknown_and_missing_files(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_data(str(tmp_path / 'missing.cfg'))
    path = tmp_path / 'notes.txt'
    path.write_text('hello')
    with pytest.raises(ToolkitError):
        load_data(str(path))
    with pytest.raises(ToolkitError):
        save_data(FiniteConfig(1, 2, {}), str(tmp_path / 'x.json'))


def test_every_fixture_survives_a_dump(tmp_path):
    from fixtures import FIXTURE_NAMES, fixture

    for name in FIXTURE_NAMES:
        entry = fixture(name)
        path = tmp_path / f"{name}.rule"
        save_data(entry.automaton, str(path))
        assert format_rule(load_data(str(path))) == format_rule(entry.automaton)
        for seed, x in entry.seeds.items():
            path = tmp_path / f"{name}-{seed}.cfg"
            save_data(x, str(path))
            assert format_config(load_data(str(path))) == format_config(x), (name, seed)
