"""Line-oriented text format for monoids (.mon files).

    # comment
    size <n>
    identity <i>
    table
    <n rows of n whitespace-separated indices>
    letter <a> <element-index>     (optional, repeated)

Row x lists the products x*0 ... x*(n-1).  '#' starts a comment
anywhere on a line.
"""

from .errors import ParseError
from .monoid import make_monoid


def parse_mon(text):
    """Parse the format; returns (monoid, letter_map)."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    pos = 0

    def take(expected):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(pos, expected)
        lineno, line = lines[pos]
        pos += 1
        return lineno, line

    lineno, line = take("'size <n>'")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "size" or not parts[1].isdigit():
        raise ParseError(lineno, "'size <n>'")
    size = int(parts[1])
    lineno, line = take("'identity <i>'")
    parts = line.split()
    if len(parts) != 2 or parts[0] != "identity" or not parts[1].isdigit():
        raise ParseError(lineno, "'identity <i>'")
    identity = int(parts[1])
    lineno, line = take("'table'")
    if line != "table":
        raise ParseError(lineno, "'table'")
    rows = []
    for _ in range(size):
        lineno, line = take(f"a table row of {size} indices")
        entries = line.split()
        if len(entries) != size or not all(e.isdigit() for e in entries):
            raise ParseError(lineno, f"a table row of {size} indices")
        rows.append([int(e) for e in entries])
    letter_map = {}
    while pos < len(lines):
        lineno, line = take("'letter <a> <element-index>'")
        parts = line.split()
        if (len(parts) != 3 or parts[0] != "letter" or len(parts[1]) != 1
                or not parts[2].isdigit()):
            raise ParseError(lineno, "'letter <a> <element-index>'")
        letter_map[parts[1]] = int(parts[2])
    return make_monoid(rows, identity), letter_map


def read_mon(path):
    with open(path, encoding="utf-8") as handle:
        return parse_mon(handle.read())


def render_mon(monoid, letter_map=None):
    lines = [f"size {monoid.size}", f"identity {monoid.identity}", "table"]
    for row in monoid.rows:
        lines.append(" ".join(str(v) for v in row))
    if letter_map:
        for a in sorted(letter_map):
            lines.append(f"letter {a} {letter_map[a]}")
    return "\n".join(lines) + "\n"


def write_mon(path, monoid, letter_map=None):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(render_mon(monoid, letter_map))
