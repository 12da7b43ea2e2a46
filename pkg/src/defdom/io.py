"""Line-based text formats for graphs, defenses, intervals, and formulas.

Graph files follow the DIMACS habit: "c" comment lines, a "p dds <n> <m>"
header, then "e <u> <v>" edge lines with 1 <= u < v <= n.  Two comment
forms carry data and round-trip: "c role <v> <label>" attaches a vertex
label, and "c params <name> <value> ..." records instance parameters such
as k/ell or s/t.  Vertex sets are one id per line; multisets are
"<v> <count>" lines; attack lists hold one attack (space-separated ids)
per line; valuations are a single line of 0/1 bits.

Every parse failure raises InputError with the offending line number.
"""

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from defdom.errors import InputError
from defdom.formulas import E2Formula
from defdom.graphs import Graph, VertexMultiset, VertexSet
from defdom.intervals import IntervalInstance, validate

PathLike = Union[str, Path]


def _lines(path: PathLike) -> list[tuple[int, str]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    out = []
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            out.append((num, line))
    return out


def _int(token: str, where: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"{where}: expected an integer, got {token!r}") from None


def read_graph(path: PathLike) -> tuple[Graph, dict[str, int]]:
    """Parse a graph file; returns the graph and any "c params" entries."""
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    params: dict[str, int] = {}
    for num, line in _lines(path):
        where = f"{path}:{num}"
        parts = line.split()
        if parts[0] == "c":
            if len(parts) >= 2 and parts[1] == "role":
                if len(parts) < 4:
                    raise InputError(f"{where}: role line needs a vertex and a label")
                labels[_int(parts[2], where)] = " ".join(parts[3:])
            elif len(parts) >= 2 and parts[1] == "params":
                pairs = parts[2:]
                if not pairs or len(pairs) % 2:
                    raise InputError(f"{where}: params line needs name/value pairs")
                for name, value in zip(pairs[0::2], pairs[1::2]):
                    params[name] = _int(value, where)
            continue
        if parts[0] == "p":
            if header is not None:
                raise InputError(f"{where}: duplicate header")
            if len(parts) != 4 or parts[1] != "dds":
                raise InputError(f"{where}: header must be 'p dds <n> <m>'")
            header = (_int(parts[2], where), _int(parts[3], where))
            continue
        if parts[0] == "e":
            if header is None:
                raise InputError(f"{where}: edge before header")
            if len(parts) != 3:
                raise InputError(f"{where}: edge line must be 'e <u> <v>'")
            u, v = _int(parts[1], where), _int(parts[2], where)
            n = header[0]
            if not (1 <= u < v <= n):
                raise InputError(f"{where}: edge ({u},{v}) must satisfy 1 <= u < v <= {n}")
            edges.append((u, v))
            continue
        raise InputError(f"{where}: unrecognized line {line!r}")
    if header is None:
        raise InputError(f"{path}: missing 'p dds' header")
    n, m = header
    if len(edges) != m:
        raise InputError(f"{path}: header promises {m} edges, found {len(edges)}")
    if len(set(edges)) != len(edges):
        raise InputError(f"{path}: duplicate edge lines")
    for v in labels:
        if not 1 <= v <= n:
            raise InputError(f"{path}: role line for out-of-range vertex {v}")
    return Graph(n, edges, labels or None), params


def write_graph(path: PathLike, g: Graph, params: Optional[Mapping[str, int]] = None) -> None:
    lines = [f"p dds {g.n} {g.edge_count()}"]
    if params:
        pairs = " ".join(f"{name} {value}" for name, value in params.items())
        lines.append(f"c params {pairs}")
    for v in sorted(g.labels or ()):
        lines.append(f"c role {v} {g.labels[v]}")
    for u, v in g.edges():
        lines.append(f"e {u} {v}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_vertex_set(path: PathLike) -> VertexSet:
    out = set()
    for num, line in _lines(path):
        v = _int(line, f"{path}:{num}")
        if v in out:
            raise InputError(f"{path}:{num}: vertex {v} listed twice")
        out.add(v)
    return frozenset(out)


def write_vertex_set(path: PathLike, vertices: Iterable[int]) -> None:
    body = "".join(f"{v}\n" for v in sorted(set(vertices)))
    Path(path).write_text(body)


def read_multiset(path: PathLike) -> VertexMultiset:
    out: dict[int, int] = {}
    for num, line in _lines(path):
        where = f"{path}:{num}"
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"{where}: multiset line must be '<v> <count>'")
        v, count = _int(parts[0], where), _int(parts[1], where)
        if v in out:
            raise InputError(f"{where}: vertex {v} listed twice")
        if count < 1:
            raise InputError(f"{where}: count must be positive")
        out[v] = count
    return out


def write_multiset(path: PathLike, d: VertexMultiset) -> None:
    body = "".join(f"{v} {count}\n" for v, count in sorted(d.items()) if count)
    Path(path).write_text(body)


def read_intervals(path: PathLike) -> IntervalInstance:
    """Parse and validate an interval file ("p intervals <n>" header)."""
    header: Optional[int] = None
    rows: dict[int, tuple[Fraction, Fraction]] = {}
    for num, line in _lines(path):
        where = f"{path}:{num}"
        parts = line.split()
        if parts[0] == "c":
            continue
        if parts[0] == "p":
            if header is not None:
                raise InputError(f"{where}: duplicate header")
            if len(parts) != 3 or parts[1] != "intervals":
                raise InputError(f"{where}: header must be 'p intervals <n>'")
            header = _int(parts[2], where)
            continue
        if header is None:
            raise InputError(f"{where}: interval before header")
        if len(parts) != 3:
            raise InputError(f"{where}: interval line must be '<id> <l> <r>'")
        v = _int(parts[0], where)
        try:
            lo, hi = Fraction(parts[1]), Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: endpoints must be decimal rationals") from None
        if v in rows:
            raise InputError(f"{where}: interval id {v} listed twice")
        rows[v] = (lo, hi)
    if header is None:
        raise InputError(f"{path}: missing 'p intervals' header")
    if len(rows) != header:
        raise InputError(f"{path}: header promises {header} intervals, found {len(rows)}")
    inst = IntervalInstance(rows)
    validate(inst)
    return inst


def write_intervals(path: PathLike, inst: IntervalInstance) -> None:
    lines = [f"p intervals {inst.n}"]
    for v, (lo, hi) in inst.items():
        lines.append(f"{v} {lo} {hi}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_formula(path: PathLike) -> E2Formula:
    """Parse "p e2cnf <a> <b> <c>" plus c zero-terminated clause lines."""
    header: Optional[tuple[int, int, int]] = None
    clauses: list[tuple[int, int, int]] = []
    for num, line in _lines(path):
        where = f"{path}:{num}"
        parts = line.split()
        if parts[0] == "c" and header is None:
            continue
        if parts[0] == "p":
            if header is not None:
                raise InputError(f"{where}: duplicate header")
            if len(parts) != 5 or parts[1] != "e2cnf":
                raise InputError(f"{where}: header must be 'p e2cnf <a> <b> <c>'")
            header = (_int(parts[2], where), _int(parts[3], where), _int(parts[4], where))
            continue
        if header is None:
            raise InputError(f"{where}: clause before header")
        lits = [_int(tok, where) for tok in parts]
        if len(lits) != 4 or lits[-1] != 0:
            raise InputError(f"{where}: clause line must hold three literals and a 0")
        clauses.append((lits[0], lits[1], lits[2]))
    if header is None:
        raise InputError(f"{path}: missing 'p e2cnf' header")
    a, b, c = header
    if len(clauses) != c:
        raise InputError(f"{path}: header promises {c} clauses, found {len(clauses)}")
    return E2Formula(a, b, tuple(clauses))


def write_formula(path: PathLike, f: E2Formula) -> None:
    lines = [f"p e2cnf {f.a} {f.b} {f.c}"]
    for clause in f.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    Path(path).write_text("\n".join(lines) + "\n")


def read_attacks(path: PathLike) -> list[list[int]]:
    """One attack per line: distinct vertex ids separated by spaces."""
    out: list[list[int]] = []
    for num, line in _lines(path):
        where = f"{path}:{num}"
        parts = line.split()
        if parts[0] == "c":
            continue
        attack = [_int(tok, where) for tok in parts]
        if len(set(attack)) != len(attack):
            raise InputError(f"{where}: attack repeats a vertex")
        out.append(attack)
    return out


def write_attacks(path: PathLike, attacks: Iterable[Iterable[int]]) -> None:
    body = "".join(" ".join(str(v) for v in sorted(attack)) + "\n"
                   for attack in attacks)
    Path(path).write_text(body)


def read_valuation(path: PathLike, expected: Optional[int] = None) -> tuple[bool, ...]:
    """A single line of 0/1 bits, with or without spaces."""
    lines = _lines(path)
    if len(lines) != 1:
        raise InputError(f"{path}: valuation file must hold exactly one line")
    num, line = lines[0]
    bits = line.replace(" ", "")
    if not bits or any(ch not in "01" for ch in bits):
        raise InputError(f"{path}:{num}: valuation must be a string of 0s and 1s")
    out = tuple(ch == "1" for ch in bits)
    if expected is not None and len(out) != expected:
        raise InputError(f"{path}: expected {expected} bits, found {len(out)}")
    return out


def write_valuation(path: PathLike, bits: Sequence[bool]) -> None:
    Path(path).write_text("".join("1" if bit else "0" for bit in bits) + "\n")
