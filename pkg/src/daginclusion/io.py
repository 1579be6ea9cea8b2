"""DAG text formats (native and a DOT subset) and JSON encodings."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .dag import NAME_RE, Dag
from .errors import DagSyntaxError, DoubleArrow, DuplicateNode, SelfLoop, UnknownNode
from .ops import TransformOp, TransformSequence

_ARROW_RE = re.compile(r"\s*([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)\s*\Z")


@dataclass(frozen=True)
class DagDocument:
    source: str
    dag: Dag
    name: str | None = None


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_dag(text: str) -> Dag:
    """Parse the native format::

        # comment
        nodes: a b c
        a -> b
        b -> c
    """
    nodes = None
    index = set()
    arrows = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if nodes is None:
            stripped = line.lstrip()
            if not stripped.startswith("nodes:"):
                raise DagSyntaxError("expected 'nodes:'", lineno, len(line) - len(stripped) + 1)
            nodes = []
            offset = line.index("nodes:") + len("nodes:")
            for m in re.finditer(r"\S+", line[offset:]):
                name = m.group()
                if not NAME_RE.match(name):
                    raise DagSyntaxError(f"invalid node name {name!r}", lineno, offset + m.start() + 1)
                if name in index:
                    raise DuplicateNode(f"duplicate node {name!r}", line=lineno)
                index.add(name)
                nodes.append(name)
            if not nodes:
                raise DagSyntaxError("'nodes:' lists no node", lineno, offset + 1)
            continue
        m = _ARROW_RE.match(line)
        if m is None:
            col = len(line) - len(line.lstrip()) + 1
            raise DagSyntaxError("expected 'NAME -> NAME'", lineno, col)
        tail, head = m.groups()
        for x in (tail, head):
            if x not in index:
                raise UnknownNode(f"unknown node {x!r}", line=lineno)
        if tail == head:
            raise SelfLoop(f"self-loop at {tail!r}", line=lineno)
        if (tail, head) in arrows or (head, tail) in arrows:
            raise DoubleArrow(f"more than one arrow between {tail!r} and {head!r}", line=lineno)
        arrows[(tail, head)] = lineno
    if nodes is None:
        raise DagSyntaxError("expected 'nodes:'", 1, 1)
    return Dag(nodes, arrows)


def format_dag(g: Dag) -> str:
    lines = ["nodes: " + " ".join(g.nodes)]
    lines += [f"{t} -> {h}" for t, h in sorted(g.arrows)]
    return "\n".join(lines) + "\n"


_DOT_TOKEN = re.compile(r"\s*(->|[A-Za-z0-9_]+|[{};\[\]=]|\S)")


def parse_dot(text: str) -> Dag:
    """Parse ``digraph [name] { a -> b; c; }``; attributes are rejected."""
    text = re.sub(r"/\*.*?\*/", lambda m: re.sub(r"[^\n]", " ", m.group()), text, flags=re.S)
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = re.sub(r"//.*", "", raw)
        if line.lstrip().startswith("#"):
            continue
        pos = 0
        while pos < len(line):
            m = _DOT_TOKEN.match(line, pos)
            if m is None:
                break
            tokens.append((m.group(1), lineno, m.start(1) + 1))
            pos = m.end()

    it = iter(tokens)

    def take():
        try:
            return next(it)
        except StopIteration:
            raise DagSyntaxError("unexpected end of input", tokens[-1][1] if tokens else 1) from None

    tok, line, col = take()
    if tok != "digraph":
        raise DagSyntaxError("expected 'digraph'", line, col)
    tok, line, col = take()
    if tok != "{":
        if not NAME_RE.match(tok):
            raise DagSyntaxError("expected graph name or '{'", line, col)
        tok, line, col = take()
        if tok != "{":
            raise DagSyntaxError("expected '{'", line, col)
    nodes = []
    arrows = []
    chain = []
    expect_name = True
    while True:
        tok, line, col = take()
        if tok == "}":
            break
        if tok == "[":
            raise DagSyntaxError("attributes are not supported", line, col)
        if tok == ";":
            chain, expect_name = [], True
            continue
        if tok == "->":
            if expect_name or not chain:
                raise DagSyntaxError("unexpected '->'", line, col)
            expect_name = True
            continue
        if not NAME_RE.match(tok):
            raise DagSyntaxError(f"unexpected {tok!r}", line, col)
        if not expect_name:
            chain = []
        if tok not in nodes:
            nodes.append(tok)
        if chain and expect_name:
            if (chain[-1], tok) in arrows or (tok, chain[-1]) in arrows:
                raise DoubleArrow(f"more than one arrow between {chain[-1]!r} and {tok!r}", line=line)
            arrows.append((chain[-1], tok))
        chain.append(tok)
        expect_name = False
    if not nodes:
        raise DagSyntaxError("graph has no nodes", line, col)
    return Dag(nodes, arrows)


def parse_any(text: str) -> Dag:
    body = "\n".join(_strip_comment(x) for x in text.splitlines()).lstrip()
    if body.startswith("digraph"):
        return parse_dot(text)
    return parse_dag(text)


def load_dag(path: str | Path) -> DagDocument:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix in (".dot", ".gv"):
        g = parse_dot(text)
    else:
        g = parse_any(text)
    return DagDocument(str(path), g, path.stem)


# -- JSON ---------------------------------------------------------------------------


def dag_to_json(g: Dag) -> dict:
    return {"nodes": list(g.nodes), "arrows": [list(a) for a in sorted(g.arrows)]}


def dag_from_json(d: dict) -> Dag:
    return Dag(d["nodes"], [tuple(a) for a in d["arrows"]])


def sequence_to_json(seq: TransformSequence, target: Dag | None = None) -> dict:
    return {
        "start": dag_to_json(seq.start),
        "target": dag_to_json(target if target is not None else seq.target),
        "ops": [op.to_json() for op in seq.ops],
    }


def sequence_from_json(d: dict) -> tuple[TransformSequence, Dag]:
    seq = TransformSequence(dag_from_json(d["start"]), tuple(TransformOp.from_json(o) for o in d["ops"]))
    return seq, dag_from_json(d["target"])
