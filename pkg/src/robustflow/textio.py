"""Line-oriented text formats for instances and solutions.

Instance files start with an ``instance`` header, then ``vertex`` lines,
then ``edge`` lines::

    instance T=3 gamma=2 s=s d=d
    vertex s
    vertex v
    vertex d
    edge e0 s v u=1 tau=0 delta=3
    edge estar v d u=1 tau=0 delta=0

Solution files hold either ``triple`` lines or ``trpath`` lines.  ``#``
starts a comment anywhere on a line.
"""

from __future__ import annotations

from fractions import Fraction

from .model import (
    INF, Edge, Instance, Path, TemporallyRepeatedFlow, Triple, TripleSolution, check_instance,
)


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _fields(lineno, tokens, required):
    """Parse ``key=value`` tokens; every key in ``required`` must appear exactly once."""
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not value:
            raise ParseError(lineno, f"expected key=value, got {tok!r}")
        if key not in required:
            raise ParseError(lineno, f"unknown field {key!r}")
        if key in out:
            raise ParseError(lineno, f"repeated field {key!r}")
        out[key] = value
    missing = [k for k in required if k not in out]
    if missing:
        raise ParseError(lineno, "missing field(s) " + ", ".join(missing))
    return out


def _int(lineno, text, what):
    try:
        return int(text)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {text!r}") from None


def _rat(lineno, text, what):
    num, sep, den = text.partition("/")
    try:
        value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"{what} must be p/q or an integer, got {text!r}") from None
    return value


def _rat_or_inf(lineno, text, what):
    return INF if text == "inf" else _rat(lineno, text, what)


def _int_or_inf(lineno, text, what):
    return INF if text == "inf" else _int(lineno, text, what)


def _path(lineno, text):
    ids = text.split(",")
    if any(not e for e in ids):
        raise ParseError(lineno, f"malformed path {text!r}")
    return Path(ids)


def parse_instance(text: str, validate: bool = True) -> Instance:
    header = None
    vertices, edges = [], []
    for lineno, tokens in _lines(text):
        kind, rest = tokens[0], tokens[1:]
        if header is None:
            if kind != "instance":
                raise ParseError(lineno, "first line must be the instance header")
            f = _fields(lineno, rest, ("T", "gamma", "s", "d"))
            header = (_int(lineno, f["T"], "T"), _int(lineno, f["gamma"], "gamma"), f["s"], f["d"])
        elif kind == "vertex":
            if edges:
                raise ParseError(lineno, "vertex lines must precede edge lines")
            if len(rest) != 1:
                raise ParseError(lineno, "expected: vertex <vid>")
            vertices.append(rest[0])
        elif kind == "edge":
            if len(rest) != 6:
                raise ParseError(lineno, "expected: edge <eid> <tail> <head> u=.. tau=.. delta=..")
            eid, tail, head = rest[:3]
            f = _fields(lineno, rest[3:], ("u", "tau", "delta"))
            edges.append(Edge(eid, tail, head, _rat_or_inf(lineno, f["u"], "u"),
                              _int(lineno, f["tau"], "tau"),
                              _int_or_inf(lineno, f["delta"], "delta")))
        elif kind == "instance":
            raise ParseError(lineno, "repeated instance header")
        else:
            raise ParseError(lineno, f"unknown record {kind!r}")
    if header is None:
        raise ParseError(0, "empty instance file")
    T, gamma, s, d = header
    inst = Instance(vertices, edges, s, d, T, gamma)
    return check_instance(inst) if validate else inst


def format_instance(inst: Instance) -> str:
    out = [f"instance T={inst.T} gamma={inst.gamma} s={inst.s} d={inst.d}"]
    out += [f"vertex {v}" for v in inst.vertices]
    for e in inst.edges:
        out.append(f"edge {e.id} {e.tail} {e.head} u={e.capacity} tau={e.tau} delta={e.delta}")
    return "\n".join(out) + "\n"


def parse_solution(text: str):
    """Parse either a :class:`TripleSolution` or a :class:`TemporallyRepeatedFlow`.

    A file without records is an empty triple solution, which is also how an
    empty temporally repeated flow reads back.
    """
    triples, rates = [], {}
    for lineno, tokens in _lines(text):
        kind, rest = tokens[0], tokens[1:]
        if kind == "triple":
            if rates:
                raise ParseError(lineno, "triple and trpath records cannot be mixed")
            f = _fields(lineno, rest, ("path", "rate", "a", "b"))
            a, b = _int(lineno, f["a"], "a"), _int(lineno, f["b"], "b")
            if not a < b:
                raise ParseError(lineno, "dispatch interval needs a < b")
            rate = _rat(lineno, f["rate"], "rate")
            if rate < 0:
                raise ParseError(lineno, "rate must be nonnegative")
            triples.append(Triple(_path(lineno, f["path"]), rate, a, b))
        elif kind == "trpath":
            if triples:
                raise ParseError(lineno, "triple and trpath records cannot be mixed")
            f = _fields(lineno, rest, ("path", "rate"))
            p = _path(lineno, f["path"])
            if p in rates:
                raise ParseError(lineno, f"repeated path {p}")
            rate = _rat(lineno, f["rate"], "rate")
            if rate < 0:
                raise ParseError(lineno, "rate must be nonnegative")
            rates[p] = rate
        else:
            raise ParseError(lineno, f"unknown record {kind!r}")
    if rates:
        return TemporallyRepeatedFlow(rates)
    return TripleSolution(triples)


def format_solution(sol) -> str:
    if isinstance(sol, TemporallyRepeatedFlow):
        lines = [f"trpath path={p} rate={x}" for p, x in sol.rates.items()]
    else:
        lines = [f"triple path={t.path} rate={t.rate} a={t.a} b={t.b}" for t in sol]
    return "".join(line + "\n" for line in lines)


def read_instance(path, validate: bool = True) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), validate)


def write_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(inst))


def read_solution(path):
    with open(path, encoding="utf-8") as fh:
        return parse_solution(fh.read())


def write_solution(sol, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_solution(sol))
