"""Graph files, generators and JSON reports."""
from __future__ import annotations

import json
import math

from .errors import ParseError, PreconditionError
from .graph import Graph, components
from .rng import Stream

REPORT_VERSION = 1


def _number(tok, line):
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(f"bad number {tok!r}", line) from None
    if not math.isfinite(x):
        raise ParseError(f"non-finite length {tok!r}", line)
    return x


def _label_key(lab):
    return (0, int(lab), "") if lab.lstrip("-").isdigit() else (1, 0, lab)


def _build(n, raw, labels):
    seen = {}
    edges = []
    for line, u, v, w in raw:
        if u == v:
            raise ParseError(f"self-loop at vertex {labels[u] if labels else u}", line)
        if not w > 0:
            raise ParseError(f"nonpositive length {w}", line)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge (first on line {seen[key]})", line)
        seen[key] = line
        edges.append((u, v, w))
    return Graph(n, edges, labels=labels)


def _parse_edges(text):
    raw, names = [], set()
    for i, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'u v' or 'u v w', got {s!r}", i)
        w = _number(parts[2], i) if len(parts) == 3 else 1
        raw.append((i, parts[0], parts[1], w))
        names.update(parts[:2])
    labels = sorted(names, key=_label_key)
    index = {lab: k for k, lab in enumerate(labels)}
    raw = [(i, index[u], index[v], w) for i, u, v, w in raw]
    return _build(len(labels), raw, tuple(labels))


def _parse_dimacs(text):
    n = m = None
    raw = []
    for i, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c"):
            continue
        parts = s.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second problem line", i)
            if len(parts) != 4:
                raise ParseError("problem line must read 'p <name> <n> <m>'", i)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("vertex and edge counts must be integers", i) from None
            continue
        if parts[0] not in ("e", "a"):
            raise ParseError(f"unknown line type {parts[0]!r}", i)
        if n is None:
            raise ParseError("edge before the problem line", i)
        if len(parts) not in (3, 4):
            raise ParseError("edge line must read 'e u v [w]'", i)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError("vertex ids must be integers", i) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex outside 1..{n}", i)
        w = _number(parts[3], i) if len(parts) == 4 else 1
        raw.append((i, u - 1, v - 1, w))
    if n is None:
        raise ParseError("missing problem line")
    if m is not None and m != len(raw):
        raise ParseError(f"header promises {m} edges, found {len(raw)}")
    return _build(n, raw, tuple(str(k) for k in range(1, n + 1)))


def parse_graph(data, format="edges") -> Graph:
    """Read a graph; vertex names become dense ids (``g.labels`` keeps the names).

    Edge lists name vertices by arbitrary tokens (integers sort numerically);
    DIMACS files use ``1..n`` from the problem line.
    """
    text = data.decode() if isinstance(data, (bytes, bytearray)) else str(data)
    if format == "edges":
        return _parse_edges(text)
    if format == "dimacs":
        return _parse_dimacs(text)
    raise PreconditionError(f"unknown graph format {format!r}")


def _fmt_len(w):
    return str(w) if isinstance(w, int) else repr(float(w))


def format_edges(edges, unit=False, labels=None):
    name = (lambda v: labels[v]) if labels else str
    out = []
    for u, v, w in edges:
        out.append(f"{name(u)} {name(v)}" if unit else f"{name(u)} {name(v)} {_fmt_len(w)}")
    return "".join(line + "\n" for line in out)


def format_graph(g, format="edges", labels=False) -> str:
    """Canonical text: one line per edge, ``u < v``, sorted; unit lengths omitted."""
    if format == "edges":
        return format_edges(g.edges, g.unit, g.labels if labels else None)
    if format == "dimacs":
        lines = [f"p edge {g.n} {g.m}"]
        for u, v, w in g.edges:
            lines.append(f"e {u + 1} {v + 1}" if g.unit else f"e {u + 1} {v + 1} {_fmt_len(w)}")
        return "\n".join(lines) + "\n"
    raise PreconditionError(f"unknown graph format {format!r}")


# --- generators ----------------------------------------------------------------

KINDS = ("path", "cycle", "grid", "torus", "complete", "gnp", "random_connected")
WEIGHTS = ("unit", "int", "float")


def _weigh(pairs, weights, rnd):
    if weights == "unit":
        return [(u, v) for u, v in pairs]
    if weights == "int":
        return [(u, v, rnd.randint(1, 10)) for u, v in pairs]
    if weights == "float":
        return [(u, v, round(rnd.uniform(0.5, 5.0), 6)) for u, v in pairs]
    raise PreconditionError(f"weights must be one of {WEIGHTS}")


def generate(kind, size, seed=0, p=0.3, weights="unit", max_tries=100) -> Graph:
    """Deterministic in ``(kind, size, seed, p, weights)``.

    ``size`` is the vertex count, except for ``grid`` and ``torus`` where it
    is the side length.
    """
    size = int(size)
    rnd = Stream(seed, "generate", (kind, size, p, weights)).rng()
    if kind == "path":
        n, pairs = size, [(i, i + 1) for i in range(size - 1)]
    elif kind == "cycle":
        if size < 3:
            raise PreconditionError("a cycle needs at least 3 vertices")
        n, pairs = size, [(i, (i + 1) % size) for i in range(size)]
    elif kind in ("grid", "torus"):
        k = size
        if kind == "torus" and k < 3:
            raise PreconditionError("a torus needs side length at least 3")
        n, pairs = k * k, []
        for r in range(k):
            for c in range(k):
                v = r * k + c
                if c + 1 < k or kind == "torus":
                    pairs.append((v, r * k + (c + 1) % k))
                if r + 1 < k or kind == "torus":
                    pairs.append((v, ((r + 1) % k) * k + c))
    elif kind == "complete":
        n, pairs = size, [(i, j) for i in range(size) for j in range(i + 1, size)]
    elif kind == "gnp":
        if not (0 <= p <= 1):
            raise PreconditionError("p must lie in [0, 1]")
        n = size
        for _ in range(max_tries):
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rnd.random() < p]
            g = Graph(n, pairs)
            if n <= 1 or len(components(g)) == 1:
                break
        else:
            raise PreconditionError(f"no connected G({n}, {p}) after {max_tries} tries")
    elif kind == "random_connected":
        n = size
        pairs = set()
        for v in range(1, n):
            u = rnd.randrange(v)
            pairs.add((u, v))
        extra = n // 2
        for _ in range(4 * extra):
            if extra <= 0 or n < 3:
                break
            u, v = sorted(rnd.sample(range(n), 2))
            if (u, v) not in pairs:
                pairs.add((u, v))
                extra -= 1
        pairs = sorted(pairs)
    else:
        raise PreconditionError(f"kind must be one of {KINDS}")
    if n < 1:
        raise PreconditionError("size must be positive")
    return Graph(n, _weigh(pairs, weights, rnd))


# --- reports --------------------------------------------------------------------

def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_plain(v) for v in x)
    if hasattr(x, "numerator") and not isinstance(x, (int, bool)):
        return float(x)
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def dump_report(kind, body: dict) -> str:
    """JSON with a version field; floats keep their shortest round-trip form."""
    doc = {"version": REPORT_VERSION, "kind": kind}
    doc.update(_plain(body))
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_report(text) -> dict:
    doc = json.loads(text)
    if doc.get("version") != REPORT_VERSION:
        raise ParseError(f"unsupported report version {doc.get('version')!r}")
    return doc
