"""Exhaustive value tables over a whole stratum, and array evaluation.

For the stratum ``M_α`` the tables hold ``||x = y||`` and ``||x ∈ y||`` for
every pair of names as bitmask matrices.  They are built level by level with
one Boolean matrix product per atom of the algebra: a name of level ``k`` is a
value vector over level ``k - 1``, and the induced recursion becomes

    m[y, t]  = OR_s  V[y, s] ∧ E'[t, s]            (||t ∈ y||)
    C[x, y]  = NOT OR_t  V[x, t] ∧ ¬m[y, t]
    E[x, y]  = C[x, y] ∧ C[y, x]                    (||x = y||)
    M[x, y]  = OR_t  E[x, t] ∧ V[y, t]              (||x ∈ y||)

where ``E'`` is the previous level's equality table.  The recursive
implementation in :mod:`values` is the reference these tables are checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BoundsError, InputError
from ..formula_lang import BigAnd, BigOr, Eq, Exists, Formula, In, Not, Pred, Term, Var
from ..names import Name
from .values import resolve_term, value_pred
from .workspace import Workspace


def mask_dtype(n_atoms: int):
    for dt, bits in ((np.uint8, 8), (np.uint16, 16), (np.uint32, 32), (np.uint64, 64)):
        if n_atoms <= bits:
            return dt
    raise BoundsError("at most 64 atoms are supported by the table engine")


def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean matrix product: OR over the shared index of AND."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=bool)
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0.5


@dataclass
class StratumTables:
    alpha: int
    names: tuple[Name, ...]
    index: dict[Name, int]
    eq: np.ndarray
    mem: np.ndarray
    eq_bits: list[np.ndarray]
    mem_bits: list[np.ndarray]
    full: int

    @property
    def n(self) -> int:
        return len(self.names)

    @classmethod
    def build(cls, ws: Workspace, alpha: int) -> "StratumTables":
        alg = ws.algebra
        nbits = len(alg.atoms)
        dt = mask_dtype(nbits)
        names = ws.stratum(alpha).names
        if alpha == 0:
            prev_names: tuple[Name, ...] = ()
            prev_eq_bits = [np.zeros((0, 0), dtype=bool) for _ in range(nbits)]
        else:
            prev = ws.tables(alpha - 1)
            prev_names, prev_eq_bits = prev.names, prev.eq_bits
        n, m = len(names), len(prev_names)
        index = {x: i for i, x in enumerate(names)}
        pidx = {t: i for i, t in enumerate(prev_names)}
        V = np.zeros((n, m), dtype=np.int64)
        for i, y in enumerate(names):
            for t, b in y.items():
                V[i, pidx[t]] = b.mask
        in_cur = np.array([index[t] for t in prev_names], dtype=np.int64)
        eq = np.zeros((n, n), dtype=dt)
        mem = np.zeros((n, n), dtype=dt)
        eq_bits, mem_bits = [], []
        for bit in range(nbits):
            Vb = ((V >> bit) & 1).astype(bool)
            mt = _bool_matmul(Vb, prev_eq_bits[bit].T)
            C = ~_bool_matmul(Vb, (~mt).T)
            E = C & C.T
            Mb = _bool_matmul(E[:, in_cur], Vb.T) if m else np.zeros((n, n), dtype=bool)
            eq_bits.append(E)
            mem_bits.append(Mb)
            eq |= E.astype(dt) << dt(bit)
            mem |= Mb.astype(dt) << dt(bit)
        return cls(alpha, names, index, eq, mem, eq_bits, mem_bits, alg.full_mask)


class StratumEvaluator:
    """Evaluates formulas with every variable ranging over one stratum.

    A result is ``(vars, array)``: ``vars`` sorted, one array axis per
    variable, entries are value bitmasks.  Atomic values come from the
    stratum tables when both sides lie in the stratum and from the reference
    recursion otherwise.
    """

    def __init__(self, ws: Workspace, alpha: int, subset=None):
        self.ws = ws
        tb = self.tables = ws.tables(alpha)
        self.alpha = alpha
        self.full = tb.full
        self.dtype = tb.eq.dtype
        if subset is None:
            self.subset = None
            self.names, self.eq, self.mem = tb.names, tb.eq, tb.mem
        else:
            # quantifiers range over a chosen subset of the stratum
            self.subset = np.asarray(sorted(set(int(i) for i in subset)), dtype=np.int64)
            if not len(self.subset):
                raise InputError("witness set must be nonempty")
            self.names = tuple(tb.names[i] for i in self.subset)
            grid = np.ix_(self.subset, self.subset)
            self.eq, self.mem = tb.eq[grid], tb.mem[grid]
        self.n = len(self.names)
        self._vec: dict[tuple, np.ndarray] = {}
        self._memo: dict[Formula, tuple] = {}
        self._ordered: dict[tuple, np.ndarray] = {}

    # constants
    def _name(self, t: Term) -> Name:
        return resolve_term(self.ws, t)

    def _vector(self, kind: str, c: Name) -> np.ndarray:
        key = (kind, c)
        if key in self._vec:
            return self._vec[key]
        tb, cache = self.tables, self.ws.cache
        j = tb.index.get(c)
        if kind == "eq":
            v = tb.eq[:, j] if j is not None else np.array([cache.equal(x, c) for x in tb.names], dtype=self.dtype)
        elif kind == "in_const":  # ||v ∈ c||
            v = tb.mem[:, j] if j is not None else np.array([cache.member(x, c) for x in tb.names], dtype=self.dtype)
        elif kind == "const_in":  # ||c ∈ v||
            v = tb.mem[j, :] if j is not None else np.array([cache.member(c, x) for x in tb.names], dtype=self.dtype)
        elif kind == "pred":
            v = np.array([value_pred(self.ws, c, x).mask for x in tb.names], dtype=self.dtype)
        else:
            raise ValueError(kind)
        if self.subset is not None:
            v = v[self.subset]
        self._vec[key] = v
        return v

    def _scalar(self, mask: int):
        return ((), np.array(mask, dtype=self.dtype))

    def _check_cells(self, nvars: int):
        cells = self.n ** nvars
        if cells > self.ws.bounds.max_cells:
            raise BoundsError(f"{nvars} simultaneous variables over {self.n} names exceed {self.ws.bounds.max_cells} cells")

    def _binary(self, table: np.ndarray, kind: str, left: Term, right: Term):
        lv, rv = isinstance(left, Var), isinstance(right, Var)
        cache = self.ws.cache
        if lv and rv:
            if left.name == right.name:
                return ((left.name,), np.diagonal(table).copy())
            self._check_cells(2)
            if left.name < right.name:
                return ((left.name, right.name), table)
            return ((right.name, left.name), table.T)
        if lv:
            c = self._name(right)
            return ((left.name,), self._vector("eq" if kind == "eq" else "in_const", c))
        if rv:
            c = self._name(left)
            if kind == "eq":
                return ((right.name,), self._vector("eq", c))
            return ((right.name,), self._vector("const_in", c))
        a, b = self._name(left), self._name(right)
        return self._scalar(cache.equal(a, b) if kind == "eq" else cache.member(a, b))

    @staticmethod
    def _align(vars_: tuple, arr: np.ndarray, target: tuple) -> np.ndarray:
        shape = [arr.shape[vars_.index(v)] if v in vars_ else 1 for v in target]
        return arr.reshape(shape)

    def _combine(self, parts: list[tuple], op, unit: int):
        target = tuple(sorted(set().union(*(set(v) for v, _ in parts)))) if parts else ()
        self._check_cells(len(target))
        acc = np.full((1,) * len(target), unit, dtype=self.dtype)
        for vars_, arr in parts:
            acc = op(acc, self._align(vars_, arr, target))
        if acc.shape != (self.n,) * len(target):
            acc = np.broadcast_to(acc, (self.n,) * len(target)).copy()
        return (target, acc)

    def eval(self, f: Formula) -> tuple[tuple[str, ...], np.ndarray]:
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Eq):
            out = self._binary(self.eq, "eq", f.left, f.right)
        elif isinstance(f, In):
            out = self._binary(self.mem, "in", f.left, f.right)
        elif isinstance(f, Pred):
            if isinstance(f.arg, Var):
                out = ((f.arg.name,), self._pred_vector(f.symbol))
            else:
                out = self._scalar(value_pred(self.ws, f.symbol, self._name(f.arg)).mask)
        elif isinstance(f, Not):
            vars_, arr = self.eval(f.body)
            out = (vars_, self.dtype.type(self.full) ^ arr)
        elif isinstance(f, BigAnd):
            out = self._combine([self.eval(p) for p in f.parts], np.bitwise_and, self.full)
        elif isinstance(f, BigOr):
            out = self._combine([self.eval(p) for p in f.parts], np.bitwise_or, 0)
        elif isinstance(f, Exists):
            vars_, arr = self.eval(f.body)
            if f.var in vars_:
                i = vars_.index(f.var)
                out = (vars_[:i] + vars_[i + 1:], np.bitwise_or.reduce(arr, axis=i))
            else:
                out = (vars_, arr)
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._memo[f] = out
        return out

    def _pred_vector(self, symbol: str) -> np.ndarray:
        return self._vector("pred", symbol)

    def sentence_value(self, f: Formula) -> int:
        vars_, arr = self.eval(f)
        if vars_:
            raise InputError(f"formula has free variables {list(vars_)}")
        return int(arr)

    def table_for(self, f: Formula, order: tuple[str, ...]) -> np.ndarray:
        """Values of ``f`` as an array with axes in ``order`` (a superset of its free variables)."""
        key = (f, order)
        if key in self._ordered:
            return self._ordered[key]
        vars_, arr = self.eval(f)
        missing = set(vars_) - set(order)
        if missing:
            raise InputError(f"variables {sorted(missing)} not in the requested order")
        self._check_cells(len(order))
        srt = tuple(sorted(order))
        full = np.broadcast_to(self._align(vars_, arr, srt), (self.n,) * len(srt))
        perm = [srt.index(v) for v in order]
        out = self._ordered[key] = np.ascontiguousarray(np.transpose(full, perm))
        return out
