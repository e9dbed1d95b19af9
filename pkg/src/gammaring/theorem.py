"""Replays of the vanishing theorem on concrete defect maps, plus end-to-end pipelines.

The main result being exercised: if the ring carries a qualifying idempotent
family and a three-slot map f satisfies the zero-argument, left-absorption
and right-absorption hypotheses, then f vanishes identically.  Pipelines
build f as the additivity defect of a verified multiplicative map, replay the
hypothesis checks, conclude f = 0, and cross-check against the direct
additivity scan; the two routes agreeing is a hard invariant, so divergence
raises InternalInconsistencyError rather than reporting a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BudgetExceededError, InternalInconsistencyError, PreconditionError
from .multmaps import (DEFAULT_BUDGET, _SAMPLE_CAP, DefectMap, DerivationTable, MapPair,
                       SearchConfig, VerifyReport, defect_of_derivation, defect_of_iso,
                       search_n_derivations, search_n_multiplicative_isos,
                       verify_additive, verify_n_derivation, verify_n_multiplicative)
from .peirce import (IdempotentFrame, MartindaleReport, PeirceComponents,
                     canonical_frames, check_martindale_family, peirce_decompose)
from .rings import GammaRing, build_matrix_ring, make_group, trivial_ring


@dataclass
class HypothesisReport:
    k: int
    zero_slots: VerifyReport
    left_absorption: VerifyReport
    right_absorption: VerifyReport

    @property
    def all_passed(self) -> bool:
        return (self.zero_slots.passed and self.left_absorption.passed
                and self.right_absorption.passed)

    @property
    def all_exact(self) -> bool:
        return (self.zero_slots.exact and self.left_absorption.exact
                and self.right_absorption.exact)


@dataclass
class ClaimTrace:
    frame: IdempotentFrame
    claims: dict

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.claims.values())


@dataclass
class TheoremVerdict:
    confirmed: bool
    family: MartindaleReport
    hypotheses: HypothesisReport


@dataclass
class PipelineReport:
    kind: str
    n: int
    k: int
    family: MartindaleReport
    verified: VerifyReport
    hypotheses: HypothesisReport
    defect_zero: bool
    additive: VerifyReport
    agreement: bool


def _length_k_products(ring: GammaRing, k: int) -> np.ndarray:
    """All values realized by products of k elements (k >= 1)."""
    p = np.arange(ring.m_order)
    for _ in range(k - 1):
        p = np.unique(ring.mu[p].ravel())
    return p


def check_hypotheses(defect: DefectMap, k: int,
                     budget: int = DEFAULT_BUDGET, seed: int = 0) -> HypothesisReport:
    """Verify the three vanishing-theorem hypotheses for f at chain length k.

    The absorption identities quantify over k extra element slots and k+1
    gamma slots; associativity collapses every such chain onto a composite
    (length-k product, final gamma) action, so the exhaustive scan covers all
    raw tuples by checking each composite once.  Witnesses are reported as
    raw tuples, least in the order (u1, g1, ..., uk, gk, x, gamma, y) for the
    left identity and (g1, u1, ..., gk, uk, x, gamma, y) for the right one.
    """
    if k < 1:
        raise ValueError("chain length k must be >= 1")
    ring = defect.ring
    f = defect.f
    m, g = ring.m_order, ring.gamma_order

    bad = np.argwhere(f[:, :, 0] != 0)
    if bad.size:
        zr = VerifyReport(False, True, 2 * m * g,
                          {"side": "right-zero", "x": int(bad[0][0]), "gamma": int(bad[0][1])})
    else:
        bad = np.argwhere(f[0, :, :] != 0)
        if bad.size:
            zr = VerifyReport(False, True, 2 * m * g,
                              {"side": "left-zero", "gamma": int(bad[0][0]), "x": int(bad[0][1])})
        else:
            zr = VerifyReport(True, True, 2 * m * g)

    raw_count = m**(k + 2) * g**(k + 1)
    if raw_count <= budget:
        left = _absorption_exact(defect, k, side="left")
        right = _absorption_exact(defect, k, side="right")
    else:
        left = _absorption_sampled(defect, k, budget, seed, side="left")
        right = _absorption_sampled(defect, k, budget, seed + 1, side="right")
    return HypothesisReport(k, zr, left, right)


def _absorption_exact(defect: DefectMap, k: int, side: str) -> VerifyReport:
    ring = defect.ring
    f = defect.f
    mu = ring.mu
    m, g = ring.m_order, ring.gamma_order
    raw_count = m**(k + 2) * g**(k + 1)
    pk = _length_k_products(ring, k)

    if side == "left":
        act = mu[pk]                                   # [p, gk, w] = p gk w
    else:
        act = np.moveaxis(mu[:, :, pk], 0, 2)          # [g1, q, w] = w g1 q
    a, b = act.shape[0], act.shape[1]
    flat = act.reshape(a * b, m)
    fail = np.zeros((a, b), dtype=bool)
    first_xy = {}
    step = max(1, (1 << 22) // (m * g * m))
    for lo in range(0, a * b, step):
        hi = min(lo + step, a * b)
        lhs = flat[lo:hi][:, f]                                        # [c, x, gamma, y]
        rhs = f[flat[lo:hi][:, :, None, None],
                np.arange(g)[None, None, :, None],
                flat[lo:hi][:, None, None, :]]
        neq = (lhs != rhs).reshape(hi - lo, -1)
        badc = neq.any(axis=1)
        for c in np.flatnonzero(badc):
            xyz = np.unravel_index(int(np.argmax(neq[c])), (m, g, m))
            first_xy[lo + int(c)] = tuple(int(v) for v in xyz)
        fail.reshape(-1)[lo:hi] = badc
    if not fail.any():
        return VerifyReport(True, True, raw_count)

    witness = _absorption_witness(ring, k, side, pk, fail, first_xy)
    return VerifyReport(False, True, raw_count, witness)


def _absorption_witness(ring, k, side, pk, fail, first_xy) -> dict:
    """Least raw chain tuple whose composite action fails."""
    m, g = ring.m_order, ring.gamma_order
    mu = ring.mu
    pk_pos = -np.ones(m, dtype=np.int64)
    pk_pos[pk] = np.arange(pk.size)

    if side == "left":
        # chains (u1, g1, ..., uk, gk): composite product u1 g1 ... uk, action gamma gk
        prod = np.arange(m)
        for _ in range(k - 1):
            prod = mu[prod]                   # appends (g, m) axes per step
        prod_flat = prod.reshape(-1)          # lex over (u1, g1, u2, ..., uk)
        fail_rows = fail[pk_pos[prod_flat]]   # [chain, gk]
        idx = int(np.argmax(fail_rows.reshape(-1)))
        chain, gk = divmod(idx, g)
        dims = (m,) + (g, m) * (k - 1)
        parts = np.unravel_index(chain, dims) if k > 1 else (chain,)
        names = []
        for i in range(1, k):
            names += [f"u{i}", f"g{i}"]
        names += [f"u{k}", f"g{k}"]
        vals = [int(v) for v in parts] + [int(gk)]
        comp = (int(pk_pos[prod_flat[chain]]), int(gk))
    else:
        # chains (g1, u1, g2, u2, ..., gk, uk): composite (g1, q = u1 g2 u2 ... gk uk)
        prod = np.arange(m)
        for _ in range(k - 1):
            prod = mu[prod]
        q_flat = prod.reshape(-1)             # lex over (u1, g2, u2, ..., uk)
        per_g1 = fail[:, pk_pos[q_flat]]      # [g1, chain]
        idx = int(np.argmax(per_g1.reshape(-1)))
        g1, chain = divmod(idx, q_flat.size)
        dims = (m,) + (g, m) * (k - 1)
        parts = np.unravel_index(chain, dims) if k > 1 else (chain,)
        names = ["g1", "u1"]
        vals = [int(g1), int(parts[0])]
        for i in range(1, k):
            names += [f"g{i+1}", f"u{i+1}"]
            vals += [int(parts[2 * i - 1]), int(parts[2 * i])]
        comp = (int(g1), int(pk_pos[q_flat[chain]]))

    x, gamma, y = first_xy[comp[0] * fail.shape[1] + comp[1]]
    w = dict(zip(names, vals))
    w.update({"x": x, "gamma": gamma, "y": y})
    return w


def _absorption_sampled(defect: DefectMap, k: int, budget: int, seed: int, side: str) -> VerifyReport:
    ring = defect.ring
    f = defect.f
    mu = ring.mu
    m, g = ring.m_order, ring.gamma_order
    rng = np.random.default_rng(seed)
    samples = int(min(budget, _SAMPLE_CAP))
    us = rng.integers(0, m, size=(k, samples))
    gs = rng.integers(0, g, size=(k, samples))
    xs = rng.integers(0, m, size=samples)
    ys = rng.integers(0, m, size=samples)
    gammas = rng.integers(0, g, size=samples)

    prod = us[0]
    for i in range(1, k):
        prod = mu[prod, gs[i - 1], us[i]]
    if side == "left":
        lhs = mu[prod, gs[k - 1], f[xs, gammas, ys]]
        rhs = f[mu[prod, gs[k - 1], xs], gammas, mu[prod, gs[k - 1], ys]]
    else:
        q = us[k - 1]
        for i in range(k - 1, 0, -1):
            q = mu[us[i - 1], gs[i], q]
        lhs = mu[f[xs, gammas, ys], gs[0], q]
        rhs = f[mu[xs, gs[0], q], gammas, mu[ys, gs[0], q]]
    neq = lhs != rhs
    if neq.any():
        j = int(np.argmax(neq))
        w = {f"u{i+1}": int(us[i, j]) for i in range(k)}
        w.update({f"g{i+1}": int(gs[i, j]) for i in range(k)})
        w.update({"x": int(xs[j]), "gamma": int(gammas[j]), "y": int(ys[j])})
        return VerifyReport(False, False, samples, w)
    return VerifyReport(True, False, samples)


def check_claims(defect: DefectMap, frame: IdempotentFrame,
                 components: Optional[PeirceComponents] = None) -> ClaimTrace:
    """Exhaustively evaluate the five staged vanishing identities for f.

    claim1: products scale through f from either side.  claim2: f kills
    (diagonal, off-diagonal) block pairs.  claim3/claim4: f kills the (1,2)
    and (1,1) blocks against themselves.  claim5: f kills corner products
    e.gamma.x in both arguments.
    """
    ring = defect.ring
    f = defect.f
    mu = ring.mu
    m, g = ring.m_order, ring.gamma_order
    if components is None:
        components = peirce_decompose(frame)
    comps = components.components
    gam = np.arange(g)
    claims = {}

    lhs = mu[:, :, f.reshape(-1)].reshape(m, g, m, g, m)       # [u, b, x, gamma, y]
    rhs = f[mu[:, :, :, None, None], gam[None, None, None, :, None], mu[:, :, None, None, :]]
    neq = lhs != rhs
    witness = None
    if neq.any():
        u, b, x, gm_, y = np.unravel_index(int(np.argmax(neq.reshape(-1))), neq.shape)
        witness = {"side": "left", "u": int(u), "beta": int(b),
                   "x": int(x), "gamma": int(gm_), "y": int(y)}
    else:
        lhs = mu[f]                                            # [x, gamma, y, b, u]
        rhs = f[mu[:, None, None, :, :], gam[None, :, None, None, None], mu[None, None, :, :, :]]
        neq = lhs != rhs
        if neq.any():
            x, gm_, y, b, u = np.unravel_index(int(np.argmax(neq.reshape(-1))), neq.shape)
            witness = {"side": "right", "x": int(x), "gamma": int(gm_),
                       "y": int(y), "beta": int(b), "u": int(u)}
    claims["claim1"] = VerifyReport(witness is None, True, 2 * m**3 * g**2, witness)

    witness = None
    checked = 0
    for i in (1, 2):
        for jk in ((1, 2), (2, 1)):
            diag = np.asarray(comps[(i, i)])
            off = np.asarray(comps[jk])
            checked += 2 * diag.size * g * off.size
            for a, b_, names in ((diag, off, ("x_ii", "gamma", "x_jk")),
                                 (off, diag, ("x_jk", "gamma", "x_ii"))):
                block = f[np.ix_(a, gam, b_)]
                if block.any() and witness is None:
                    p, q, r = np.unravel_index(int(np.argmax(block.reshape(-1) != 0)), block.shape)
                    witness = {names[0]: int(a[p]), "gamma": int(q), names[2]: int(b_[r]),
                               "blocks": ((i, i), jk)}
    claims["claim2"] = VerifyReport(witness is None, True, checked, witness)

    for name, ij in (("claim3", (1, 2)), ("claim4", (1, 1))):
        blk = np.asarray(comps[ij])
        block = f[np.ix_(blk, gam, blk)]
        witness = None
        if block.any():
            p, q, r = np.unravel_index(int(np.argmax(block.reshape(-1) != 0)), block.shape)
            witness = {"x": int(blk[p]), "gamma": int(q), "u": int(blk[r])}
        claims[name] = VerifyReport(witness is None, True, block.size, witness)

    corner = np.unique(mu[frame.e])          # e.lambda.x values
    block = f[np.ix_(corner, gam, corner)]
    witness = None
    if block.any():
        p, q, r = np.unravel_index(int(np.argmax(block.reshape(-1) != 0)), block.shape)
        witness = {"x": int(corner[p]), "gamma": int(q), "y": int(corner[r])}
    claims["claim5"] = VerifyReport(witness is None, True, block.size, witness)

    return ClaimTrace(frame, claims)


def conclude_main_theorem(ring: GammaRing, frames, defect: DefectMap, k: int,
                          budget: int = DEFAULT_BUDGET) -> TheoremVerdict:
    """Gate on the structural conditions and hypotheses, then assert f = 0.

    A gate failure raises PreconditionError.  With all gates exactly passed,
    a nonzero f would contradict the theorem and therefore raises an internal
    inconsistency: it cannot arise from input data.
    """
    family = check_martindale_family(ring, frames)
    if not family.overall:
        raise PreconditionError("ring/frame family fails the structural conditions; "
                                "the vanishing theorem does not apply")
    hyp = check_hypotheses(defect, k, budget)
    if not hyp.all_exact:
        raise BudgetExceededError("hypothesis verdicts are partial; raise the budget "
                                  "for an exact conclusion")
    if not hyp.all_passed:
        raise PreconditionError("defect map fails the theorem hypotheses")
    if not defect.is_zero:
        raise InternalInconsistencyError(
            "hypotheses and conditions hold but the defect map is nonzero")
    return TheoremVerdict(True, family, hyp)


def run_additivity_pipeline(pair: MapPair, n: int, frames,
                            budget: int = DEFAULT_BUDGET, k: Optional[int] = None) -> PipelineReport:
    """Defect route vs direct additivity scan for an n-multiplicative pair."""
    if k is None:
        k = n - 1
    family = check_martindale_family(pair.source, frames)
    if not family.overall:
        raise PreconditionError("source ring fails the structural conditions")
    verified = verify_n_multiplicative(pair, n, budget)
    if not verified.exact:
        raise BudgetExceededError("multiplicativity verdict is partial; raise the budget")
    if not verified.passed:
        raise ValueError(f"pair is not {n}-multiplicative: witness {verified.witness}")
    defect = defect_of_iso(pair, n, budget)
    hyp = check_hypotheses(defect, k, budget)
    if not hyp.all_exact:
        raise BudgetExceededError("hypothesis verdicts are partial; raise the budget")
    if not hyp.all_passed:
        raise InternalInconsistencyError(
            "iso defect violates the theorem hypotheses; defect construction is buggy")
    if not defect.is_zero:
        raise InternalInconsistencyError(
            "hypotheses hold on a qualifying ring but the defect is nonzero")
    additive = verify_additive(pair)
    agreement = additive.passed and defect.is_zero
    if not agreement:
        raise InternalInconsistencyError(
            "defect vanished but the direct additivity scan disagrees")
    return PipelineReport("iso", n, k, family, verified, hyp, True, additive, True)


def run_derivation_pipeline(ring: GammaRing, deriv: DerivationTable, n: int, frames,
                            budget: int = DEFAULT_BUDGET, k: Optional[int] = None) -> PipelineReport:
    """Defect route vs direct additivity scan for an n-multiplicative derivation."""
    if k is None:
        k = n - 1
    family = check_martindale_family(ring, frames)
    if not family.overall:
        raise PreconditionError("ring fails the structural conditions")
    verified = verify_n_derivation(deriv, n, budget)
    if not verified.exact:
        raise BudgetExceededError("derivation verdict is partial; raise the budget")
    if not verified.passed:
        raise ValueError(f"map is not an {n}-derivation: witness {verified.witness}")
    defect = defect_of_derivation(deriv, n, budget)
    hyp = check_hypotheses(defect, k, budget)
    if not hyp.all_exact:
        raise BudgetExceededError("hypothesis verdicts are partial; raise the budget")
    if not hyp.all_passed:
        raise InternalInconsistencyError(
            "derivation defect violates the theorem hypotheses")
    if not defect.is_zero:
        raise InternalInconsistencyError(
            "hypotheses hold on a qualifying ring but the defect is nonzero")
    additive = verify_additive(deriv)
    if not additive.passed:
        raise InternalInconsistencyError(
            "defect vanished but the derivation additivity scan disagrees")
    return PipelineReport("derivation", n, k, family, verified, hyp, True, additive, True)


@dataclass
class RingSurvey:
    name: str
    conditions: dict
    qualifying: bool
    frame_count: int
    iso_found: int
    iso_additive: int
    iso_complete: bool
    deriv_found: int
    deriv_additive: int
    deriv_complete: bool
    witnesses: list = field(default_factory=list)


@dataclass
class SurveyReport:
    n: int
    entries: list
    complete: bool


def hunt_counterexamples(rings, n: int = 2, budget: int = DEFAULT_BUDGET,
                         witness_cap: int = 8) -> SurveyReport:
    """Sweep a ring family for hypothesis-necessity witnesses.

    Qualifying rings (all structural conditions hold) admitting a non-additive
    multiplicative map would contradict the theorem, so that combination
    raises an internal inconsistency.  On non-qualifying rings, non-additive
    finds are recorded as evidence the failed hypothesis cannot be dropped.
    """
    entries = []
    complete = True
    for name, ring in rings:
        frames = canonical_frames(ring)
        fam = check_martindale_family(ring, frames)
        conditions = {
            "frame-family": bool(frames) and all(not v for v in fam.frame_violations),
            "ii": fam.cond_ii.holds,
            "iii": fam.cond_iii.holds if fam.cond_iii is not None else False,
            "iv": all(r.holds for r in fam.cond_iv) if fam.cond_iv else False,
        }
        qualifying = fam.overall

        config = SearchConfig(n=n, budget=budget)
        isos = search_n_multiplicative_isos(ring, ring, config)
        derivs = search_n_derivations(ring, config)
        complete = complete and isos.complete and derivs.complete

        witnesses = []
        iso_additive = 0
        for p in isos.found:
            if verify_additive(p).passed:
                iso_additive += 1
            elif len(witnesses) < witness_cap:
                witnesses.append(("iso", p))
        deriv_additive = 0
        for d in derivs.found:
            if verify_additive(d).passed:
                deriv_additive += 1
            elif len(witnesses) < witness_cap:
                witnesses.append(("derivation", d))

        nonadd = (len(isos.found) - iso_additive) + (len(derivs.found) - deriv_additive)
        if qualifying and nonadd:
            raise InternalInconsistencyError(
                f"ring {name!r} satisfies all conditions yet carries "
                f"{nonadd} non-additive multiplicative maps")

        entries.append(RingSurvey(
            name, conditions, qualifying, len(frames),
            len(isos.found), iso_additive, isos.complete,
            len(derivs.found), deriv_additive, derivs.complete,
            witnesses))
    return SurveyReport(n, entries, complete)


def _factor_sequences(order: int):
    """Descending factor sequences with the given product, all entries >= 2."""
    if order == 1:
        return [()]
    out = []

    def rec(remaining, cap, acc):
        if remaining == 1:
            out.append(tuple(acc))
            return
        d = min(remaining, cap)
        while d >= 2:
            if remaining % d == 0:
                rec(remaining // d, d, acc + [d])
            d -= 1

    rec(order, order, [])
    return out


def trivial_ring_family(max_order: int, gamma_factors=(2,)) -> list:
    """All-zero-product rings over every abelian presentation of order <= max_order."""
    out = []
    gamma = make_group(gamma_factors)
    for order in range(2, max_order + 1):
        for factors in _factor_sequences(order):
            m = make_group(factors)
            label = "x".join(f"Z{d}" for d in factors)
            out.append((f"trivial({label})", trivial_ring(m, gamma)))
    return out


def matrix_ring_family(mod: int, max_cells: int) -> list:
    """Matrix rings (mod, rows, cols) with rows*cols <= max_cells."""
    out = []
    shapes = [(r, c) for r in range(1, max_cells + 1) for c in range(1, max_cells + 1)
              if r * c <= max_cells]
    shapes.sort(key=lambda rc: (rc[0] * rc[1], rc[0]))
    for r, c in shapes:
        out.append((f"matrix({mod},{r},{c})", build_matrix_ring(mod, r, c)))
    return out
