"""Generator words for bispans and their evaluation in a model.

A value at a G-set X is a tuple with one entry per orbit of X (in
decomposition order), each living at the level of the orbit's
representative stabilizer.  A word is straight-line code over registers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..errors import CarrierMismatch
from ..groups import Subgroup, subgroup_name
from ..gsets import GSet, decompose


@dataclass(frozen=True)
class Op:
    """``out = kind(args...)(inputs...)``.

    kinds: ``conj`` (g, H), ``res``/``nm``/``tr`` (K, H), ``add``/``mul``
    (H, n-ary), ``zero``/``one`` (H).
    """

    kind: str
    params: tuple
    inputs: tuple
    out: int

    def describe(self):
        if self.kind == "conj":
            g, H = self.params
            head = "conj(%d, %s)" % (g, subgroup_name(H))
        elif self.kind in ("res", "nm", "tr"):
            K, H = self.params
            head = "%s(%s<=%s)" % (self.kind, subgroup_name(K), subgroup_name(H))
        else:
            head = "%s(%s)" % (self.kind, subgroup_name(self.params[0]))
        args = ", ".join("r%d" % i for i in self.inputs)
        return "r%d = %s[%s]" % (self.out, head, args)


@dataclass
class Word:
    inputs: list  # levels of input registers 0..k-1
    ops: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    next_reg: int = 0

    def kinds(self) -> list:
        """Generator kinds in order, without the bookkeeping ops."""
        return [op.kind for op in self.ops if op.kind in ("conj", "res", "nm", "tr")]

    def describe(self) -> list:
        return [op.describe() for op in self.ops]

    def emit(self, kind, params, inputs) -> int:
        r = self.next_reg
        self.next_reg += 1
        self.ops.append(Op(kind, tuple(params), tuple(inputs), r))
        return r


def _mover(X: GSet, x_from: int, x_to: int, rng):
    """Some g with g.x_from == x_to (least, or random if rng given)."""
    col = X.action[:, x_from]
    cands = [g for g in range(len(col)) if col[g] == x_to]
    return rng.choice(cands) if rng else cands[0]


def _transport(w: Word, G, reg, H: Subgroup, g: int) -> int:
    """Move a value at level H to level gHg^-1; trivial if g is in H."""
    if g in H.members:
        return reg
    return w.emit("conj", (g, H), (reg,))


def _orbit_reps(X: GSet, pts, L: Subgroup, rng):
    """Orbits of L on the L-stable point list ``pts``: (chosen point, orbit)."""
    seen = set()
    out = []
    for x in sorted(pts):
        if x in seen:
            continue
        orb = sorted({int(X.action[l, x]) for l in L.members})
        seen.update(orb)
        out.append((rng.choice(orb) if rng else orb[0], orb))
    return out


def decompose_bispan_to_generators(b, seed=None) -> Word:
    """Straight-line word computing the action of ``b``.

    With ``seed`` set, orbit points and conjugating elements are chosen at
    random instead of least; every choice yields an equivalent word in a
    lawful model.
    """
    rng = random.Random(seed) if seed is not None else None
    G = b.group
    X, A, B, Y = b.source, b.A, b.B, b.target
    dX, dA, dB, dY = decompose(X), decompose(A), decompose(B), decompose(Y)
    w = Word([o.stabilizer for o in dX.orbits])
    w.next_reg = len(dX.orbits)
    x_idx = dX.orbit_index()
    a_idx = dA.orbit_index()
    b_idx = dB.orbit_index()

    # restriction along r
    a_regs = []
    for o in dA.orbits:
        a = o.rep
        x = b.r(a)
        i = int(x_idx[x])
        src = dX.orbits[i]
        g = _mover(X, src.rep, x, rng)
        reg = _transport(w, G, i, src.stabilizer, g)
        level = src.stabilizer.conjugate(g)
        if level != o.stabilizer:
            reg = w.emit("res", (o.stabilizer, level), (reg,))
        a_regs.append(reg)

    # norm along n
    b_regs = []
    fib = b.n.fibers()
    for o in dB.orbits:
        L = o.stabilizer
        parts = []
        for a, _ in _orbit_reps(A, fib[o.rep], L, rng):
            j = int(a_idx[a])
            src = dA.orbits[j]
            g = _mover(A, src.rep, a, rng)
            reg = _transport(w, G, a_regs[j], src.stabilizer, g)
            level = src.stabilizer.conjugate(g)
            if level != L:
                reg = w.emit("nm", (level, L), (reg,))
            parts.append(reg)
        if not parts:
            b_regs.append(w.emit("one", (L,), ()))
        elif len(parts) == 1:
            b_regs.append(parts[0])
        else:
            b_regs.append(w.emit("mul", (L,), parts))

    # transfer along t
    fib = b.t.fibers()
    for o in dY.orbits:
        H = o.stabilizer
        parts = []
        for y, _ in _orbit_reps(B, fib[o.rep], H, rng):
            k = int(b_idx[y])
            src = dB.orbits[k]
            g = _mover(B, src.rep, y, rng)
            reg = _transport(w, G, b_regs[k], src.stabilizer, g)
            level = src.stabilizer.conjugate(g)
            if level != H:
                reg = w.emit("tr", (level, H), (reg,))
            parts.append(reg)
        if not parts:
            w.outputs.append(w.emit("zero", (H,), ()))
        elif len(parts) == 1:
            w.outputs.append(parts[0])
        else:
            w.outputs.append(w.emit("add", (H,), parts))
    return w


def run_word(model, w: Word, values) -> tuple:
    regs = {}
    if len(values) != len(w.inputs):
        raise CarrierMismatch("expected %d input values, got %d" % (len(w.inputs), len(values)))
    for i, v in enumerate(values):
        regs[i] = v
    for op in w.ops:
        ins = [regs[i] for i in op.inputs]
        k, p = op.kind, op.params
        if k == "conj":
            regs[op.out] = model.conj(p[0], p[1], ins[0])
        elif k == "res":
            regs[op.out] = model.res(p[0], p[1], ins[0])
        elif k == "nm":
            regs[op.out] = model.nm(p[0], p[1], ins[0])
        elif k == "tr":
            regs[op.out] = model.tr(p[0], p[1], ins[0])
        elif k == "add":
            regs[op.out] = model.sum(p[0], ins)
        elif k == "mul":
            regs[op.out] = model.product(p[0], ins)
        elif k == "zero":
            regs[op.out] = model.zero(p[0])
        elif k == "one":
            regs[op.out] = model.one(p[0])
        else:
            raise ValueError("unknown op %r" % k)
    return tuple(regs[r] for r in w.outputs)


def eval_bispan(model, b, values, seed=None) -> tuple:
    """Apply ``b`` to a value at its source (tuple over source orbits).

    A bare value is accepted when the source is a single orbit.
    """
    if not isinstance(values, (tuple, list)):
        values = (values,)
    return run_word(model, decompose_bispan_to_generators(b, seed), tuple(values))


def norm_pairs(w: Word) -> set:
    """(K, H) for every norm the word uses."""
    return {op.params for op in w.ops if op.kind == "nm"}
