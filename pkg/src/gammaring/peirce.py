"""Idempotent frames, Peirce decomposition, and the structural conditions.

The complement of an idempotent e relative to a unity-like action is never
materialized as a ring element: it exists only as the pair of operator tables
left_f (complement acting from the left through a Gamma slot) and right_f
(from the right).  This keeps rings without a unity in scope, at the price of
validating the operator identities explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import FrameValidationError, InternalInconsistencyError
from .rings import GammaRing, find_unities


@dataclass
class FrameViolation:
    invariant: str
    witness: dict

    def describe(self) -> str:
        return f"{self.invariant} at {self.witness}"


@dataclass
class IdempotentFrame:
    """A nontrivial idempotent e plus complement-operator tables.

    left_f[beta, a] realizes "complement beta a", right_f[a, beta] realizes
    "a beta complement"; together with e they realize the formal unity
    1 = e + complement.  Build through canonical_frame or custom_frame only.
    """
    ring: GammaRing
    e: int
    gamma1: int
    left_f: np.ndarray
    right_f: np.ndarray
    provenance: str = "user-supplied"
    unity: Optional[int] = None

    def __post_init__(self):
        self.left_f = np.ascontiguousarray(np.asarray(self.left_f, dtype=np.int32))
        self.right_f = np.ascontiguousarray(np.asarray(self.right_f, dtype=np.int32))
        self.left_f.setflags(write=False)
        self.right_f.setflags(write=False)


@dataclass
class PeirceComponents:
    frame: IdempotentFrame
    projections: dict
    components: dict

    def sizes(self) -> dict:
        return {ij: len(c) for ij, c in self.components.items()}


@dataclass
class ConditionReport:
    condition: str
    holds: bool
    witness: Optional[dict]
    checked: int


@dataclass
class PeirceRelationsReport:
    holds: bool
    violations: list


@dataclass
class MartindaleReport:
    overall: bool
    frame_violations: list
    cond_ii: ConditionReport
    cond_iii: Optional[ConditionReport]
    cond_iv: list
    reason: Optional[str] = None


def _is_unity(ring: GammaRing, e: int, gamma: int) -> bool:
    mu = ring.mu
    idx = np.arange(ring.m_order)
    return bool((mu[e, gamma] == idx).all() and (mu[:, gamma, e] == idx).all())


def _is_nontrivial_idempotent(ring: GammaRing, e: int, gamma: int) -> bool:
    return e != 0 and ring.prod(e, gamma, e) == e and not _is_unity(ring, e, gamma)


def validate_frame(frame: IdempotentFrame) -> list[FrameViolation]:
    """All violated frame invariants, each with a reproducible witness."""
    ring, e, g1 = frame.ring, frame.e, frame.gamma1
    mu = ring.mu
    mg = ring.m_group
    m, g = ring.m_order, ring.gamma_order
    lf, rf = frame.left_f, frame.right_f
    out = []

    if lf.shape != (g, m) or rf.shape != (m, g):
        raise ValueError(f"frame tables have shapes {lf.shape}, {rf.shape}; "
                         f"expected {(g, m)}, {(m, g)}")
    if lf.min(initial=0) < 0 or lf.max(initial=0) >= m or \
       rf.min(initial=0) < 0 or rf.max(initial=0) >= m:
        raise ValueError("frame table entries out of M index range")

    if not _is_nontrivial_idempotent(ring, e, g1):
        out.append(FrameViolation("nontrivial-idempotent", {"e": e, "gamma1": g1}))

    idx = np.arange(m)
    want_left = mg.sub_index_array(idx, mu[e, g1])
    bad = np.flatnonzero(lf[g1] != want_left)
    if bad.size:
        out.append(FrameViolation("left-specialization", {"a": int(bad[0])}))

    want_right = mg.sub_index_array(idx, mu[:, g1, e])
    bad = np.flatnonzero(rf[:, g1] != want_right)
    if bad.size:
        out.append(FrameViolation("right-specialization", {"a": int(bad[0])}))

    addm = mg.add_table
    lhs = lf[:, addm]                                   # [b, x, y]
    rhs = addm[lf[:, :, None], lf[:, None, :]]
    neq = lhs != rhs
    if neq.any():
        b, x, y = np.unravel_index(int(np.argmax(neq.reshape(-1))), neq.shape)
        out.append(FrameViolation("left-additivity",
                                  {"beta": int(b), "x": int(x), "y": int(y)}))

    lhs = rf[addm, :]                                   # [x, y, b]
    rhs = addm[rf[:, None, :], rf[None, :, :]]
    neq = lhs != rhs
    if neq.any():
        x, y, b = np.unravel_index(int(np.argmax(neq.reshape(-1))), neq.shape)
        out.append(FrameViolation("right-additivity",
                                  {"x": int(x), "y": int(y), "beta": int(b)}))

    # (a beta complement) gamma b == a beta (complement gamma b)
    lhs = mu[rf]                                        # [a, beta, gamma, b]
    rhs = mu[:, :, lf]
    neq = lhs != rhs
    if neq.any():
        a, b_, c, d = np.unravel_index(int(np.argmax(neq.reshape(-1))), neq.shape)
        out.append(FrameViolation("frame-associativity",
                                  {"a": int(a), "beta": int(b_), "gamma": int(c), "b": int(d)}))
    return out


def canonical_frame(ring: GammaRing, e: int, gamma1: int, unity: int) -> IdempotentFrame:
    """Frame induced by an actual unity: complement actions 1.b.a - e.b.a and a.b.1 - a.b.e."""
    ring.require_barnes()
    if not _is_unity(ring, unity, gamma1):
        raise ValueError(f"({unity}, {gamma1}) is not a gamma-unity")
    if not _is_nontrivial_idempotent(ring, e, gamma1):
        raise ValueError(f"({e}, {gamma1}) is not a nontrivial idempotent")
    mg = ring.m_group
    mu = ring.mu
    left_f = mg.sub_index_array(mu[unity], mu[e])            # [b, a]
    right_f = mg.sub_index_array(mu[:, :, unity], mu[:, :, e])  # [a, b]
    frame = IdempotentFrame(ring, e, gamma1, left_f, right_f, "canonical-from-unity", unity)
    bad = validate_frame(frame)
    if bad:
        # ring associativity + distributivity make these identities theorems
        raise InternalInconsistencyError(
            f"canonical frame failed validation: {bad[0].describe()}")
    return frame


def custom_frame(ring: GammaRing, e: int, gamma1: int, left_f, right_f) -> IdempotentFrame:
    """Validate user-supplied complement tables; reject with all violations."""
    ring.require_barnes()
    frame = IdempotentFrame(ring, e, gamma1, left_f, right_f, "user-supplied")
    bad = validate_frame(frame)
    if bad:
        raise FrameValidationError(bad)
    return frame


_BLOCKS = ((1, 1), (1, 2), (2, 1), (2, 2))


def peirce_decompose(frame: IdempotentFrame, validate: bool = True) -> PeirceComponents:
    """Materialize the four projections and their images.

    The projection identities (sum to identity, idempotent, orthogonal) are
    consequences of the ring axioms for any valid frame, so after the frame
    itself is validated their violation is raised as an internal
    inconsistency rather than reported.
    """
    if validate:
        bad = validate_frame(frame)
        if bad:
            raise FrameValidationError(bad)
    ring = frame.ring
    mg = ring.m_group
    mu = ring.mu
    e, g1 = frame.e, frame.gamma1
    idx = np.arange(ring.m_order)

    ega = mu[e, g1]                      # e g1 a
    age = mu[:, g1, e]                   # a g1 e
    p11 = mu[ega, g1, e]                 # e g1 a g1 e
    p12 = mg.sub_index_array(ega, p11)
    p21 = mg.sub_index_array(age, p11)
    p22 = mg.add_table[mg.sub_index_array(mg.sub_index_array(idx, ega), age), p11]

    proj = {(1, 1): p11, (1, 2): p12, (2, 1): p21, (2, 2): p22}

    total = mg.add_table[mg.add_table[p11, p12], mg.add_table[p21, p22]]
    if not (total == idx).all():
        raise InternalInconsistencyError("Peirce projections do not sum to the identity")
    for ij in _BLOCKS:
        for kl in _BLOCKS:
            expect = proj[ij] if ij == kl else np.zeros_like(idx)
            if not (proj[ij][proj[kl]] == expect).all():
                raise InternalInconsistencyError(
                    f"Peirce projections P{ij}/P{kl} are not orthogonal idempotents")

    comps = {ij: tuple(int(v) for v in np.unique(p)) for ij, p in proj.items()}
    return PeirceComponents(frame, proj, comps)


def check_peirce_relations(components: PeirceComponents) -> PeirceRelationsReport:
    """Exhaustively verify the two multiplicative relations between blocks."""
    frame = components.frame
    ring = frame.ring
    mu = ring.mu
    g1 = frame.gamma1
    gam_idx = np.arange(ring.gamma_order)
    violations = []

    for ij in _BLOCKS:
        for kl in _BLOCKS:
            a = np.asarray(components.components[ij])
            b = np.asarray(components.components[kl])
            prods = mu[np.ix_(a, gam_idx, b)]
            il = (ij[0], kl[1])
            inside = components.projections[il][prods] == prods
            if not inside.all():
                x, gg, y = np.unravel_index(int(np.argmax(~inside.reshape(-1))), inside.shape)
                violations.append({
                    "relation": "block-product-containment",
                    "blocks": (ij, kl), "x": int(a[x]), "gamma": int(gg),
                    "y": int(b[y]), "product": int(prods[x, gg, y])})
            if ij[1] != kl[0]:
                mid = mu[np.ix_(a, [g1], b)][:, 0, :]
                if (mid != 0).any():
                    x, y = np.unravel_index(int(np.argmax(mid.reshape(-1) != 0)), mid.shape)
                    violations.append({
                        "relation": "gamma1-orthogonality",
                        "blocks": (ij, kl), "x": int(a[x]), "y": int(b[y]),
                        "product": int(mid[x, y])})
    return PeirceRelationsReport(not violations, violations)


def check_condition_ii(ring: GammaRing) -> ConditionReport:
    """x.Gamma.M = 0 forces x = 0."""
    mu = ring.mu
    dead = (mu == 0).all(axis=(1, 2))
    dead[0] = False
    witness = {"x": int(np.argmax(dead))} if dead.any() else None
    return ConditionReport("ii", witness is None, witness, mu.size)


def check_condition_iii(ring: GammaRing, frames) -> ConditionReport:
    """e_a.Gamma.M.Gamma.x = 0 for every frame forces x = 0."""
    frames = list(frames)
    if not frames:
        raise ValueError("condition (iii) needs a nonempty frame family")
    mu = ring.mu
    reach = np.zeros(ring.m_order, dtype=bool)
    checked = 0
    for fr in frames:
        left = np.unique(mu[fr.e].ravel())       # e.delta.m values
        reach |= (mu[left] != 0).any(axis=(0, 1))
        checked += left.size * ring.gamma_order * ring.m_order
    dead = ~reach
    dead[0] = False
    witness = {"x": int(np.argmax(dead))} if dead.any() else None
    return ConditionReport("iii", witness is None, witness, checked)


def check_condition_iv(frame: IdempotentFrame) -> ConditionReport:
    """(e.g1.x.g1.e).Gamma.M.Gamma-complement = 0 forces the corner part to vanish.

    The formal right factor m.beta.(1 - e) is realized as right_f[m, beta].
    """
    ring = frame.ring
    mu = ring.mu
    e, g1 = frame.e, frame.gamma1
    corner = mu[mu[e, g1], g1, e]                 # per x: e g1 x g1 e
    rvals = np.unique(frame.right_f)
    uniq = np.unique(corner)
    dead = (mu[np.ix_(uniq, np.arange(ring.gamma_order), rvals)] == 0).all(axis=(1, 2))
    bad_p = set(int(p) for p, d in zip(uniq, dead) if d and p != 0)
    witness = None
    if bad_p:
        for x in range(ring.m_order):
            if int(corner[x]) in bad_p:
                witness = {"x": x, "corner": int(corner[x])}
                break
    checked = int(uniq.size) * ring.gamma_order * int(rvals.size)
    return ConditionReport("iv", witness is None, witness, checked)


def check_martindale_family(ring: GammaRing, frames) -> MartindaleReport:
    """Aggregate frame validity plus the three annihilation conditions."""
    frames = list(frames)
    cond_ii = check_condition_ii(ring)
    if not frames:
        return MartindaleReport(False, [], cond_ii, None, [],
                                reason="empty idempotent family")
    frame_violations = [validate_frame(fr) for fr in frames]
    cond_iii = check_condition_iii(ring, frames)
    cond_iv = [check_condition_iv(fr) for fr in frames]
    overall = (cond_ii.holds and cond_iii.holds and all(r.holds for r in cond_iv)
               and all(not v for v in frame_violations))
    return MartindaleReport(overall, frame_violations, cond_ii, cond_iii, cond_iv)


def canonical_frames(ring: GammaRing) -> list[IdempotentFrame]:
    """All frames derivable from a unity and a nontrivial idempotent sharing its gamma."""
    from .rings import find_idempotents
    out = []
    unity_by_gamma = {}
    for u in find_unities(ring):
        unity_by_gamma.setdefault(u.gamma, u.one)
    for rec in find_idempotents(ring):
        if not rec.nontrivial:
            continue
        one = unity_by_gamma.get(rec.gamma)
        if one is not None:
            out.append(canonical_frame(ring, rec.e, rec.gamma, one))
    return out
