"""
Text formats for configurations (.cfg), rules (.rule) and SFTs (.sft), plus CSV
trajectory tables. `save_data`/`load_data` dispatch on the file extension.
"""
import itertools
import os
import re

import numpy as np
import pandas as pd

import config
from automaton import BUILTIN_RULES, BuiltinRule, TableRule, builtin_automaton, table_automaton
from configurations import FiniteConfig, TorusConfig, TubeConfig
from errors import GuardExceededError, ParseError, ToolkitError, UnsupportedConfigurationError
from geometry import format_vector, parse_vector
from subshifts import Sft

CONFIG_MAGIC = '%CA-CONFIG v1'
RULE_MAGIC = '%CA-RULE v1'
SFT_MAGIC = '%CA-SFT v1'

_VECTOR_LIST_RE = re.compile(r'\([^)]*\)')


def _lines(text, keep_blank=False):
    """
    Yield (line number, content) with comments and surrounding blanks removed.
    With keep_blank, empty lines come through as ''; comment-only lines never do.
    """
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].strip()
        if content or (keep_blank and not raw.strip()):
            yield number, content


def _read_header(lines, magic, blocks):
    """
    Consume the magic line and `key: value` lines up to the first block keyword

    Returns:
        (header dict key -> (value, line), block keyword, its line number)
    """
    number, content = next(((n, c) for n, c in lines if c), (None, None))
    if number is None:
        raise ParseError(f"empty file, expected {magic!r}", 1)
    if content != magic:
        raise ParseError(f"expected {magic!r}, got {content!r}", number)
    header = {}
    for number, content in lines:
        if not content:
            continue
        if content in blocks:
            return header, content, number
        key, sep, value = content.partition(':')
        if not sep:
            raise ParseError(f"expected 'key: value', got {content!r}", number)
        key = key.strip()
        if key in header:
            raise ParseError(f"duplicate key {key!r}", number)
        header[key] = (value.strip(), number)
    return header, None, number


def _int_field(header, key, last_line, default=None):
    if key not in header:
        if default is not None:
            return default
        raise ParseError(f"missing {key!r}", last_line)
    value, number = header[key]
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value!r}", number)


def _assignment(content, number, dim, alphabet):
    left, sep, right = content.partition('=')
    if not sep:
        raise ParseError(f"expected '(v)=s', got {content!r}", number)
    cell = parse_vector(left, dim, number)
    try:
        symbol = int(right.strip())
    except ValueError:
        raise ParseError(f"symbol must be an integer, got {right.strip()!r}", number)
    if not 0 <= symbol < alphabet:
        raise ParseError(f"symbol {symbol} outside alphabet 0..{alphabet - 1}", number)
    return cell, symbol


def parse_config(text):
    """
    Parse a `%CA-CONFIG v1` document

    Args:
        text: file contents

    Returns:
        FiniteConfig, TubeConfig or TorusConfig
    """
    lines = _lines(text)
    header, block, last = _read_header(lines, CONFIG_MAGIC, ('cells:',))
    if block is None:
        raise ParseError("missing 'cells:' section", last)
    dim = _int_field(header, 'dim', last)
    alphabet = _int_field(header, 'alphabet', last)
    if dim < 1 or alphabet < 1:
        raise ParseError("dim and alphabet must be positive", last)
    kind = header.get('kind', ('finite', last))[0]

    cells = {}
    for number, content in lines:
        cell, symbol = _assignment(content, number, dim, alphabet)
        if cell in cells:
            raise ParseError(f"duplicate cell {format_vector(cell)}", number)
        cells[cell] = symbol
        last = number

    try:
        if kind == 'finite':
            return FiniteConfig(dim, alphabet, cells)
        if kind == 'tube':
            axis = _int_field(header, 'axis', last)
            period = _int_field(header, 'period', last)
            return TubeConfig(dim, alphabet, axis, period, cells)
        if kind == 'torus':
            if 'periods' not in header:
                raise ParseError("missing 'periods'", last)
            value, number = header['periods']
            try:
                periods = tuple(int(p) for p in value.split(','))
            except ValueError:
                raise ParseError(f"malformed periods {value!r}", number)
            if len(periods) != dim:
                raise ParseError(f"torus needs {dim} periods, got {len(periods)}", number)
            arr = np.zeros(periods, dtype=np.int64)
            for cell, symbol in cells.items():
                if any(not 0 <= a < p for a, p in zip(cell, periods)):
                    raise ParseError(f"torus cell {format_vector(cell)} outside 0..periods-1", number)
                arr[cell] = symbol
            return TorusConfig(dim, alphabet, periods, arr)
    except ParseError:
        raise
    except ToolkitError as e:
        raise ParseError(str(e), last)
    raise ParseError(f"unknown configuration kind {kind!r}", header['kind'][1])


def format_config(x):
    """Serialise a finite, tube or torus configuration"""
    lines = [CONFIG_MAGIC, f"dim: {x.dim}", f"alphabet: {x.alphabet}"]
    if isinstance(x, FiniteConfig):
        lines.append('kind: finite')
        cells = x.cells.items()
    elif isinstance(x, TubeConfig):
        lines += ['kind: tube', f"axis: {x.axis}", f"period: {x.period}"]
        cells = x.cells.items()
    elif isinstance(x, TorusConfig):
        lines += ['kind: torus', f"periods: {','.join(str(p) for p in x.periods)}"]
        cells = [(tuple(int(a) for a in idx), int(x.cells[tuple(idx)])) for idx in np.argwhere(x.cells != 0)]
    else:
        raise UnsupportedConfigurationError(f"a {x.kind} configuration has no file form")
    lines.append('cells:')
    lines += [f"{format_vector(cell)}={symbol}" for cell, symbol in cells]
    return '\n'.join(lines) + '\n'


def _parse_offsets(value, dim, number):
    offsets = [parse_vector(v, dim, number) for v in _VECTOR_LIST_RE.findall(value)]
    if not offsets:
        raise ParseError(f"malformed neighborhood {value!r}", number)
    return tuple(offsets)


def parse_rule(text):
    """
    Parse a `%CA-RULE v1` document, either a total table or a named builtin

    Returns:
        CellularAutomaton
    """
    lines = _lines(text)
    header, block, last = _read_header(lines, RULE_MAGIC, ('map:',))
    dim = _int_field(header, 'dim', last)
    alphabet = _int_field(header, 'alphabet', last)
    kind = header.get('kind', ('table', last))[0]

    if kind == 'builtin':
        if 'name' not in header:
            raise ParseError("builtin rule needs 'name'", last)
        name, number = header['name']
        if name not in BUILTIN_RULES:
            raise ParseError(f"unknown builtin rule {name!r}", number)
        axis = _int_field(header, 'axis', last, default=0)
        try:
            c = builtin_automaton(name, dim, alphabet, axis)
        except ToolkitError as e:
            raise ParseError(str(e), number)
        if 'neighborhood' in header:
            value, number = header['neighborhood']
            if _parse_offsets(value, dim, number) != c.offsets:
                raise ParseError(f"neighborhood does not match builtin {name}", number)
        return c

    if kind != 'table':
        raise ParseError(f"unknown rule kind {kind!r}", header['kind'][1])
    if 'neighborhood' not in header:
        raise ParseError("missing 'neighborhood'", last)
    if block is None:
        raise ParseError("missing 'map:' section", last)
    value, number = header['neighborhood']
    offsets = _parse_offsets(value, dim, number)
    arity = len(offsets)
    table = {}
    for number, content in lines:
        left, sep, right = content.partition('=')
        try:
            key = tuple(int(v) for v in left.split(','))
            output = int(right)
        except ValueError:
            raise ParseError(f"expected 's1,...,sk=s', got {content!r}", number)
        if not sep or len(key) != arity:
            raise ParseError(f"map entry needs {arity} symbols, got {content!r}", number)
        if any(not 0 <= v < alphabet for v in key + (output,)):
            raise ParseError(f"symbol outside alphabet 0..{alphabet - 1} in {content!r}", number)
        if key in table:
            raise ParseError(f"duplicate map entry {left.strip()}", number)
        table[key] = output
        last = number
    missing = alphabet ** arity - len(table)
    if missing:
        first = next(k for k in itertools.product(range(alphabet), repeat=arity) if k not in table)
        raise ParseError(f"rule table is not total: {missing} entries missing, first {','.join(map(str, first))}", last)
    values = [table[k] for k in itertools.product(range(alphabet), repeat=arity)]
    try:
        return table_automaton(dim, alphabet, offsets, values, header.get('name', ('table', 0))[0])
    except ToolkitError as e:
        raise ParseError(str(e), last)


def format_rule(c):
    """
    Serialise an automaton. Builtins are written by name; every other rule is
    tabulated, which is refused above config.WINDOW_GUARD entries.
    """
    neighborhood = ','.join(format_vector(o) for o in c.offsets)
    lines = [RULE_MAGIC, f"dim: {c.dim}", f"alphabet: {c.alphabet}", f"neighborhood: {neighborhood}"]
    if isinstance(c.rule, BuiltinRule):
        lines += ['kind: builtin', f"name: {c.rule.name}"]
        if 'axis' in c.rule.params:
            lines.append(f"axis: {c.rule.params['axis']}")
        return '\n'.join(lines) + '\n'

    arity = len(c.offsets)
    size = c.alphabet ** arity
    if size > config.WINDOW_GUARD:
        raise GuardExceededError(f"rule table would have {size} entries, above the guard {config.WINDOW_GUARD}")
    if isinstance(c.rule, TableRule):
        outputs = c.rule.table
    else:
        weights = c.alphabet ** np.arange(arity - 1, -1, -1, dtype=np.int64)
        rows = (np.arange(size, dtype=np.int64)[:, None] // weights) % c.alphabet
        outputs = c.rule.evaluate_array(rows.T)
    lines += ['kind: table', 'map:']
    for values, output in zip(itertools.product(range(c.alphabet), repeat=arity), outputs):
        lines.append(f"{','.join(str(v) for v in values)}={int(output)}")
    return '\n'.join(lines) + '\n'


def parse_sft(text):
    """
    Parse a `%CA-SFT v1` document

    A pattern is closed by a blank line, a further `forbid:` or the end of the file.

    Returns:
        Sft
    """
    lines = _lines(text, keep_blank=True)
    header, block, last = _read_header(lines, SFT_MAGIC, ('forbid:',))
    dim = _int_field(header, 'dim', last)
    alphabet = _int_field(header, 'alphabet', last)
    patterns = []
    current = None if block is None else {}
    opened = last
    for number, content in lines:
        if not content:
            if current:
                patterns.append(current)
                current = None
            continue
        if content == 'forbid:':
            if current == {}:
                raise ParseError("empty forbidden pattern", opened)
            if current:
                patterns.append(current)
            current, opened = {}, number
            continue
        if current is None:
            current, opened = {}, number
        cell, symbol = _assignment(content, number, dim, alphabet)
        if cell in current:
            raise ParseError(f"duplicate cell {format_vector(cell)} in pattern", number)
        current[cell] = symbol
    if current == {}:
        raise ParseError("empty forbidden pattern", opened)
    if current:
        patterns.append(current)
    return Sft(dim, alphabet, tuple(patterns))


def format_sft(X):
    lines = [SFT_MAGIC, f"dim: {X.dim}", f"alphabet: {X.alphabet}"]
    for pattern in X.forbidden:
        lines.append('')
        lines.append('forbid:')
        lines += [f"{format_vector(cell)}={symbol}" for cell, symbol in pattern.items()]
    return '\n'.join(lines) + '\n'


_PARSERS = {'.cfg': parse_config, '.rule': parse_rule, '.sft': parse_sft}


def _formatter(data):
    if isinstance(data, Sft):
        return format_sft
    if isinstance(data, (FiniteConfig, TubeConfig, TorusConfig)):
        return format_config
    return format_rule


def save_data(data, filename):
    """
    Save data to a file

    Args:
        data: configuration, automaton, Sft or (for .csv) DataFrame
        filename: target path; the extension selects the format
    """
    _, file_extension = os.path.splitext(filename)
    if file_extension == '.csv':
        data.to_csv(filename, index=False)
    elif file_extension in _PARSERS:
        with open(filename, 'w', encoding='utf-8') as f:
            f.write(_formatter(data)(data))
    else:
        raise ToolkitError(f"Unsupported file extension: {file_extension}")


def load_data(filename):
    """
    Load data from a file

    Args:
        filename: source path; the extension selects the format

    Returns:
        Parsed object
    """
    if not os.path.exists(filename):
        raise FileNotFoundError(filename)
    _, file_extension = os.path.splitext(filename)
    if file_extension == '.csv':
        return pd.read_csv(filename)
    if file_extension not in _PARSERS:
        raise ToolkitError(f"Unsupported file extension: {file_extension}")
    with open(filename, encoding='utf-8') as f:
        return _PARSERS[file_extension](f.read())


def load_config(filename):
    with open(filename, encoding='utf-8') as f:
        return parse_config(f.read())


def load_rule(filename):
    with open(filename, encoding='utf-8') as f:
        return parse_rule(f.read())


def load_sft(filename):
    with open(filename, encoding='utf-8') as f:
        return parse_sft(f.read())
