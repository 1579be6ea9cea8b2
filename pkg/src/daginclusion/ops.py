"""Elementary graph operations: legal arrow reversal and legal arrow adding."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .dag import Dag
from .errors import IllegalAdd, IllegalReversal


class OpKind(str, Enum):
    REVERSE = "reverse"
    ADD = "add"


@dataclass(frozen=True)
class TransformOp:
    kind: OpKind
    a: str
    b: str

    @classmethod
    def reverse(cls, a: str, b: str) -> TransformOp:
        return cls(OpKind.REVERSE, a, b)

    @classmethod
    def add(cls, a: str, b: str) -> TransformOp:
        return cls(OpKind.ADD, a, b)

    def is_legal(self, g: Dag) -> bool:
        if self.kind is OpKind.REVERSE:
            return is_legal_reversal(g, self.a, self.b)
        return is_legal_add(g, self.a, self.b)

    def apply(self, g: Dag) -> Dag:
        if self.kind is OpKind.REVERSE:
            return apply_reversal(g, self)
        return apply_add(g, self)

    def __str__(self):
        verb = "reverse" if self.kind is OpKind.REVERSE else "add"
        return f"{verb} {self.a} -> {self.b}"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "a": self.a, "b": self.b}

    @classmethod
    def from_json(cls, d: dict) -> TransformOp:
        return cls(OpKind(d["kind"]), d["a"], d["b"])


ReversalOp = TransformOp


def is_legal_reversal(g: Dag, a: str, b: str) -> bool:
    """``a -> b`` is covered: ``pa(a) ∪ {a} = pa(b)``."""
    ia, ib = g.mask((a,)), g.mask((b,))
    if not g.has_arrow(a, b):
        return False
    i, j = ia.bit_length() - 1, ib.bit_length() - 1
    return g.parent_masks[i] | ia == g.parent_masks[j]


def apply_reversal(g: Dag, op: TransformOp) -> Dag:
    if not is_legal_reversal(g, op.a, op.b):
        raise IllegalReversal(f"{op.a} -> {op.b} cannot be legally reversed")
    return Dag._trusted(g.nodes, (g.arrows - {(op.a, op.b)}) | {(op.b, op.a)})


def is_legal_add(g: Dag, a: str, b: str) -> bool:
    """``a`` and ``b`` non-adjacent and no directed path from ``b`` to ``a``."""
    g.mask((a, b))
    if a == b:
        raise ValueError("a and b must differ")
    return not g.adjacent(a, b) and not g.has_directed_path(b, a)


def apply_add(g: Dag, op: TransformOp) -> Dag:
    if not is_legal_add(g, op.a, op.b):
        raise IllegalAdd(f"{op.a} -> {op.b} cannot be legally added")
    return Dag._trusted(g.nodes, g.arrows | {(op.a, op.b)})


@dataclass(frozen=True)
class TransformSequence:
    """Operations applied in order to ``start``."""

    start: Dag
    ops: tuple[TransformOp, ...] = field(default=())

    def graphs(self) -> list[Dag]:
        """Replay, checking legality of every step; returns all intermediate graphs."""
        out = [self.start]
        for op in self.ops:
            out.append(op.apply(out[-1]))
        return out

    @property
    def target(self) -> Dag:
        return self.graphs()[-1]

    def __len__(self):
        return len(self.ops)

    def shape(self) -> str:
        """Compact kind string, e.g. ``"RRAR"``."""
        return "".join("R" if op.kind is OpKind.REVERSE else "A" for op in self.ops)
