"""Finite gamma rings: construction, axiom verification, idempotents, ideals, primeness.

A gamma ring here is a pair of finite abelian groups (M, Gamma) with a dense
triple-product table mu: M x Gamma x M -> M stored as element indices, plus an
optional Gamma-valued product nu: Gamma x M x Gamma -> Gamma for structures in
the stronger (Nobusawa) sense.  Rings are immutable once built; all checks are
exhaustive scans that either finish exactly or refuse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BudgetExceededError, InternalInconsistencyError, PreconditionError
from .groups import FiniteAbelianGroup, make_group

# Hard cap on evaluations per axiom scan: verdicts are exact or refused.
AXIOM_EVAL_CAP = 2**32
# Soft cap on elements per vectorized chunk (memory control).
_CHUNK_ELEMS = 1 << 22


@dataclass
class AxiomReport:
    axiom: str
    identity: str
    holds: bool
    witness: Optional[dict]
    checked: int

    def describe(self) -> str:
        if self.holds:
            return f"{self.axiom}: holds ({self.checked} tuples)"
        return f"{self.axiom}: FAILS [{self.identity}] at {self.witness}"


@dataclass
class IdempotentRecord:
    e: int
    gamma: int
    nontrivial: bool


@dataclass
class UnityRecord:
    one: int
    gamma: int


@dataclass
class IdealSubset:
    members: tuple
    sidedness: str


@dataclass
class PrimenessReport:
    prime: bool
    witness: Optional[tuple]
    cross_checked: bool
    ideal_count: Optional[int] = None


class GammaRing:
    """Pair of finite abelian groups with a dense triple-product table."""

    def __init__(self, m_group: FiniteAbelianGroup, gamma_group: FiniteAbelianGroup,
                 mu: np.ndarray, nu: Optional[np.ndarray] = None, descriptor: Optional[dict] = None):
        self.m_group = m_group
        self.gamma_group = gamma_group
        self.mu = mu
        self.nu = nu
        self.descriptor = descriptor or {"type": "table"}
        self.mu.setflags(write=False)
        if self.nu is not None:
            self.nu.setflags(write=False)
        self._barnes_reports = None

    @property
    def m_order(self) -> int:
        return self.m_group.order

    @property
    def gamma_order(self) -> int:
        return self.gamma_group.order

    def __repr__(self):
        d = self.descriptor
        if d.get("type") == "matrix":
            return f"GammaRing(matrix mod={d['mod']} {d['rows']}x{d['cols']})"
        return f"GammaRing(|M|={self.m_order}, |Gamma|={self.gamma_order})"

    def prod(self, x: int, g: int, y: int) -> int:
        return int(self.mu[x, g, y])

    def nu_prod(self, g: int, x: int, h: int) -> int:
        if self.nu is None:
            raise ValueError("ring has no Gamma-valued product")
        return int(self.nu[g, x, h])

    def barnes_reports(self) -> list[AxiomReport]:
        if self._barnes_reports is None:
            self._barnes_reports = check_barnes_axioms(self)
        return self._barnes_reports

    @property
    def barnes_verified(self) -> bool:
        return all(r.holds for r in self.barnes_reports())

    def require_barnes(self):
        if not self.barnes_verified:
            bad = [r for r in self.barnes_reports() if not r.holds]
            raise PreconditionError(f"ring is not Barnes-verified: {bad[0].describe()}")

    def element_matrix(self, index: int, side: str) -> Optional[list]:
        """Row-major matrix rendering of an element, for matrix-constructed rings."""
        d = self.descriptor
        if d.get("type") != "matrix":
            return None
        if side == "m":
            rows, cols = d["rows"], d["cols"]
            res = self.m_group.element_at(index)
        else:
            rows, cols = d["cols"], d["rows"]
            res = self.gamma_group.element_at(index)
        return [list(res[r * cols:(r + 1) * cols]) for r in range(rows)]


def _chunks(total: int, per_x: int):
    step = max(1, _CHUNK_ELEMS // max(per_x, 1))
    for lo in range(0, total, step):
        yield lo, min(lo + step, total)


def _witness(names, idx) -> dict:
    return {n: int(i) for n, i in zip(names, idx)}


def _scan_equal(lhs_fn, rhs_fn, outer: int, inner_shape: tuple, names) -> Optional[dict]:
    """Compare two chunked array builders; return the lex-least differing tuple."""
    per_x = int(np.prod(inner_shape, dtype=np.int64))
    for lo, hi in _chunks(outer, per_x):
        lhs = lhs_fn(lo, hi)
        rhs = rhs_fn(lo, hi)
        neq = lhs != rhs
        if neq.any():
            flat = int(np.argmax(neq.reshape(-1)))
            idx = np.unravel_index(flat, (hi - lo,) + inner_shape)
            idx = (idx[0] + lo,) + idx[1:]
            return _witness(names, idx)
    return None


def _guard(count: int, axiom: str):
    if count > AXIOM_EVAL_CAP:
        raise BudgetExceededError(
            f"{axiom}: {count} evaluations exceed the exact-scan cap {AXIOM_EVAL_CAP}"
        )


def _right_distrib(ring) -> tuple[Optional[dict], int]:
    # (x+y) a z == x a z + y a z
    mu, addm = ring.mu, ring.m_group.add_table
    m, g = ring.m_order, ring.gamma_order
    count = m * m * g * m
    _guard(count, "distributivity")
    w = _scan_equal(
        lambda lo, hi: mu[addm[lo:hi]],
        lambda lo, hi: addm[mu[lo:hi, None], mu[None, :]],
        m, (m, g, m), ("x", "y", "alpha", "z"))
    return w, count


def _left_distrib(ring) -> tuple[Optional[dict], int]:
    # x a (y+z) == x a y + x a z
    mu, addm = ring.mu, ring.m_group.add_table
    m, g = ring.m_order, ring.gamma_order
    count = m * g * m * m
    _guard(count, "distributivity")
    w = _scan_equal(
        lambda lo, hi: mu[lo:hi][:, :, addm],
        lambda lo, hi: addm[mu[lo:hi][:, :, :, None], mu[lo:hi][:, :, None, :]],
        m, (g, m, m), ("x", "alpha", "y", "z"))
    return w, count


def _gamma_distrib(ring) -> tuple[Optional[dict], int]:
    # x (a+b) y == x a y + x b y
    mu, addm = ring.mu, ring.m_group.add_table
    addg = ring.gamma_group.add_table
    m, g = ring.m_order, ring.gamma_order
    count = m * g * g * m
    _guard(count, "gamma-distributivity")
    w = _scan_equal(
        lambda lo, hi: mu[lo:hi][:, addg, :],
        lambda lo, hi: addm[mu[lo:hi][:, :, None, :], mu[lo:hi][:, None, :, :]],
        m, (g, g, m), ("x", "alpha", "beta", "y"))
    return w, count


def _associativity(ring) -> tuple[Optional[dict], int]:
    # (x a y) b z == x a (y b z)
    mu = ring.mu
    m, g = ring.m_order, ring.gamma_order
    count = m * g * m * g * m
    _guard(count, "associativity")
    w = _scan_equal(
        lambda lo, hi: mu[mu[lo:hi]],
        lambda lo, hi: mu[lo:hi][:, :, mu],
        m, (g, m, g, m), ("x", "alpha", "y", "beta", "z"))
    return w, count


def check_barnes_axioms(ring: GammaRing) -> list[AxiomReport]:
    """One exhaustive report per Barnes axiom; closure holds by table construction."""
    reports = []

    w1, c1 = _right_distrib(ring)
    if w1 is None:
        w2, c2 = _left_distrib(ring)
        witness = w2
        identity = "x.a.(y+z) = x.a.y + x.a.z" if w2 else "m-distributivity"
    else:
        witness, c2 = w1, 0
        identity = "(x+y).a.z = x.a.z + y.a.z"
    reports.append(AxiomReport("barnes-ii", identity, witness is None, witness, c1 + c2))

    w, c = _gamma_distrib(ring)
    reports.append(AxiomReport(
        "barnes-iii", "x.(a+b).y = x.a.y + x.b.y", w is None, w, c))

    w, c = _associativity(ring)
    reports.append(AxiomReport(
        "barnes-iv", "(x.a.y).b.z = x.a.(y.b.z)", w is None, w, c))
    return reports


def check_nobusawa(ring: GammaRing) -> list[AxiomReport]:
    """Verify the stronger (Nobusawa) conditions, using the Gamma-valued product.

    The faithfulness condition is reported under both readings of its
    quantifier: strict (any single vanishing product kills gamma) and
    annihilator (only a gamma annihilating every product must vanish).
    """
    if ring.nu is None:
        raise ValueError("Nobusawa check needs the Gamma-valued product table nu")
    mu, nu = ring.mu, ring.nu
    m, g = ring.m_order, ring.gamma_order
    reports = []

    witness = None
    identity = "distributivity"
    checked = 0
    for fn, ident in ((_right_distrib, "(x+y).a.z = x.a.z + y.a.z"),
                      (_left_distrib, "x.a.(y+z) = x.a.y + x.a.z"),
                      (_gamma_distrib, "x.(a+b).y = x.a.y + x.b.y")):
        w, c = fn(ring)
        checked += c
        if w is not None:
            witness, identity = w, ident
            break
    reports.append(AxiomReport("nobusawa-i", identity, witness is None, witness, checked))

    w, checked = _associativity(ring)
    identity = "(x.a.y).b.z = x.a.(y.b.z)"
    if w is None:
        # x a (y b z) == x (a y b) z with the middle product taken in Gamma
        count = m * g * m * g * m
        _guard(count, "nobusawa-ii")
        flat_mu = mu.reshape(-1)
        arange_m = np.arange(m)

        def rhs(lo, hi):
            idx = (np.arange(lo, hi)[:, None, None, None, None] * g
                   + nu[None, :, :, :, None]) * m + arange_m[None, None, None, None, :]
            return flat_mu[idx]

        w = _scan_equal(lambda lo, hi: mu[lo:hi][:, :, mu], rhs,
                        m, (g, m, g, m), ("x", "alpha", "y", "beta", "z"))
        checked += count
        if w is not None:
            identity = "x.a.(y.b.z) = x.(a.y.b).z"
    reports.append(AxiomReport("nobusawa-ii", identity, w is None, w, checked))

    zero_prod = mu == 0                      # [x, gamma, y]
    gamma_nonzero = np.zeros((1, g, 1), dtype=bool)
    gamma_nonzero[0, 1:, 0] = True
    strict_bad = zero_prod & gamma_nonzero
    if strict_bad.any():
        flat = int(np.argmax(strict_bad.reshape(-1)))
        w = _witness(("x", "gamma", "y"), np.unravel_index(flat, strict_bad.shape))
    else:
        w = None
    reports.append(AxiomReport(
        "nobusawa-iii-strict", "x.gamma.y = 0 implies gamma = 0 (any x, y)",
        w is None, w, m * g * m))

    annih = zero_prod.all(axis=(0, 2))       # per gamma
    annih[0] = False
    if annih.any():
        w = {"gamma": int(np.argmax(annih))}
    else:
        w = None
    reports.append(AxiomReport(
        "nobusawa-iii-annihilator", "x.gamma.y = 0 for all x, y implies gamma = 0",
        w is None, w, m * g * m))
    return reports


def build_table_ring(m_group: FiniteAbelianGroup, gamma_group: FiniteAbelianGroup,
                     mu, nu=None, descriptor: Optional[dict] = None) -> GammaRing:
    """Wrap an explicit product table; axioms are NOT checked here."""
    mo, go = m_group.order, gamma_group.order
    mu = np.ascontiguousarray(np.asarray(mu, dtype=np.int32))
    if mu.shape != (mo, go, mo):
        raise ValueError(f"mu shape {mu.shape} != {(mo, go, mo)}")
    if mu.size and (mu.min() < 0 or mu.max() >= mo):
        raise ValueError("mu entries out of M index range")
    if nu is not None:
        nu = np.ascontiguousarray(np.asarray(nu, dtype=np.int32))
        if nu.shape != (go, mo, go):
            raise ValueError(f"nu shape {nu.shape} != {(go, mo, go)}")
        if nu.size and (nu.min() < 0 or nu.max() >= go):
            raise ValueError("nu entries out of Gamma index range")
    return GammaRing(m_group, gamma_group, mu, nu, descriptor)


def trivial_ring(m_group: FiniteAbelianGroup, gamma_group: FiniteAbelianGroup) -> GammaRing:
    """All products zero.  Satisfies every Barnes axiom and almost nothing else."""
    mo, go = m_group.order, gamma_group.order
    mu = np.zeros((mo, go, mo), dtype=np.int32)
    nu = np.zeros((go, mo, go), dtype=np.int32)
    return GammaRing(m_group, gamma_group, mu, nu, {"type": "table"})


def build_matrix_ring(mod: int, rows: int, cols: int) -> GammaRing:
    """m x n matrices over Z_mod with Gamma the n x m matrices, product = matmul.

    M is enumerated row-major, so index(E11) = mod**(rows*cols-1) etc.  The
    Gamma-valued product (gamma, x, delta) -> gamma.x.delta is attached, and
    the Barnes axioms are re-verified even though they hold by construction.
    """
    if mod < 2:
        raise ValueError("matrix entries need modulus >= 2")
    if rows < 1 or cols < 1:
        raise ValueError("matrix dimensions must be >= 1")
    mo = mod ** (rows * cols)
    go = mod ** (cols * rows)
    if mo * mo * go > 2**28:
        raise ValueError(f"mu table with {mo * mo * go} entries exceeds order budget")
    m_group = make_group([mod] * (rows * cols))
    gamma_group = make_group([mod] * (cols * rows))

    em = m_group.residues.reshape(mo, rows, cols)
    eg = gamma_group.residues.reshape(go, cols, rows)
    pv_m = m_group._place_values
    pv_g = gamma_group._place_values

    xg = np.einsum("xij,gjk->xgik", em, eg) % mod            # (mo, go, rows, rows)
    xgy = np.einsum("xgij,yjk->xgyik", xg, em) % mod          # (mo, go, mo, rows, cols)
    mu = (xgy.reshape(mo, go, mo, rows * cols) * pv_m).sum(axis=3).astype(np.int32)

    gx = np.einsum("gij,xjk->gxik", eg, em) % mod             # (go, mo, cols, cols)
    gxd = np.einsum("gxij,djk->gxdik", gx, eg) % mod          # (go, mo, go, cols, rows)
    nu = (gxd.reshape(go, mo, go, cols * rows) * pv_g).sum(axis=3).astype(np.int32)

    ring = GammaRing(m_group, gamma_group, mu, nu,
                     {"type": "matrix", "mod": mod, "rows": rows, "cols": cols})
    if not ring.barnes_verified:
        raise InternalInconsistencyError(
            "matrix ring failed Barnes re-verification; table construction is buggy")
    return ring


def direct_product(r1: GammaRing, r2: GammaRing) -> GammaRing:
    """Componentwise product ring on M1 + M2 and Gamma1 + Gamma2."""
    m_group = make_group(r1.m_group.factors + r2.m_group.factors)
    gamma_group = make_group(r1.gamma_group.factors + r2.gamma_group.factors)
    m2, g2 = r2.m_order, r2.gamma_order
    mu = (r1.mu[:, None, :, None, :, None].astype(np.int64) * m2
          + r2.mu[None, :, None, :, None, :])
    mu = mu.reshape(m_group.order, gamma_group.order, m_group.order).astype(np.int32)
    nu = None
    if r1.nu is not None and r2.nu is not None:
        nu = (r1.nu[:, None, :, None, :, None].astype(np.int64) * g2
              + r2.nu[None, :, None, :, None, :])
        nu = nu.reshape(gamma_group.order, m_group.order, gamma_group.order).astype(np.int32)
    return GammaRing(m_group, gamma_group, mu, nu, {"type": "table"})


def find_unities(ring: GammaRing) -> list[UnityRecord]:
    """All (one, gamma) with one.gamma.x = x.gamma.one = x for every x."""
    mu = ring.mu
    m = ring.m_order
    idx = np.arange(m)
    # left[e, g]: mu[e, g, y] == y for all y
    left = (mu == idx[None, None, :]).all(axis=2)
    # right[e, g]: mu[x, g, e] == x for all x
    right = (np.moveaxis(mu, 2, 0) == idx[None, :, None]).all(axis=1)
    mask = left & right
    if m > 1:
        mask[0, :] = False
    out = []
    for e, g in np.argwhere(mask):
        out.append(UnityRecord(int(e), int(g)))
    return out


def find_idempotents(ring: GammaRing) -> list[IdempotentRecord]:
    """All nonzero (e, gamma) with e.gamma.e = e, flagged nontrivial unless e is a gamma-unity."""
    mu = ring.mu
    m, g = ring.m_order, ring.gamma_order
    idx = np.arange(m)
    diag = mu[idx[:, None], np.arange(g)[None, :], idx[:, None]]   # [e, g] = e.g.e
    mask = diag == idx[:, None]
    mask[0, :] = False
    unities = {(u.one, u.gamma) for u in find_unities(ring)}
    out = []
    for e, gam in np.argwhere(mask):
        out.append(IdempotentRecord(int(e), int(gam), (int(e), int(gam)) not in unities))
    return out


def ideal_generated(ring: GammaRing, seeds, sidedness: str = "two-sided") -> IdealSubset:
    """Least subset containing the seeds closed under +, -, and Gamma-products on the declared side(s)."""
    if sidedness not in ("left", "right", "two-sided"):
        raise ValueError(f"unknown sidedness {sidedness!r}")
    m = ring.m_order
    members = np.zeros(m, dtype=bool)
    members[0] = True
    for s in seeds:
        s = int(s)
        if not 0 <= s < m:
            raise ValueError(f"seed {s} is not an M index")
        members[s] = True
    addm, negm, mu = ring.m_group.add_table, ring.m_group.neg_table, ring.mu
    while True:
        idx = np.flatnonzero(members)
        new = np.zeros(m, dtype=bool)
        new[addm[np.ix_(idx, idx)].ravel()] = True
        new[negm[idx]] = True
        if sidedness in ("right", "two-sided"):
            new[mu[idx].ravel()] = True
        if sidedness in ("left", "two-sided"):
            new[mu[:, :, idx].ravel()] = True
        grown = new & ~members
        if not grown.any():
            return IdealSubset(tuple(int(i) for i in idx), sidedness)
        members |= new


def _all_ideals(ring: GammaRing) -> list[np.ndarray]:
    """Full two-sided ideal lattice as sorted index arrays (small rings only)."""
    m = ring.m_order
    addm = ring.m_group.add_table
    principal = {ideal_generated(ring, [a]).members for a in range(m)}
    ideals = {(0,)} | principal
    work = list(ideals)
    while work:
        cur = work.pop()
        ci = np.asarray(cur)
        for other in list(ideals):
            oi = np.asarray(other)
            joined = tuple(sorted(set(addm[np.ix_(ci, oi)].ravel().tolist())))
            if joined not in ideals:
                ideals.add(joined)
                work.append(joined)
    return [np.asarray(i) for i in sorted(ideals)]


def is_prime(ring: GammaRing) -> PrimenessReport:
    """Elementwise primeness test, cross-checked against the ideal-pair definition.

    The two routes agree by theorem; a disagreement can only mean a bug and is
    raised as an internal inconsistency rather than returned.
    """
    ring.require_barnes()
    mu = ring.mu
    m = ring.m_order
    witness = None
    for a in range(1, m):
        reach = np.unique(mu[a].ravel())                    # all a.gamma.m
        dead_b = (mu[reach] == 0).all(axis=(0, 1))          # per b: a.G.M.G.b = 0
        dead_b[0] = False
        if dead_b.any():
            witness = (a, int(np.argmax(dead_b)))
            break
    prime_elementwise = witness is None

    cross = m <= 64
    ideal_count = None
    if cross:
        ideals = _all_ideals(ring)
        ideal_count = len(ideals)
        prime_ideals = True
        for ai in ideals:
            if ai.size == 1:
                continue
            for bi in ideals:
                if bi.size == 1:
                    continue
                if (mu[np.ix_(ai, np.arange(ring.gamma_order), bi)] == 0).all():
                    prime_ideals = False
                    break
            if not prime_ideals:
                break
        if prime_ideals != prime_elementwise:
            raise InternalInconsistencyError(
                f"primeness tests disagree: elementwise={prime_elementwise} "
                f"ideal-pair={prime_ideals}")
    return PrimenessReport(prime_elementwise, witness, cross, ideal_count)
