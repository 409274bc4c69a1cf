"""Spectral action: closed-form sectors and brute-force operator traces.

All "Tr" in the closed forms below are traces of operators on the matrix
Hilbert space M_N (x) M_n, i.e. traces of (Nn)^2 x (Nn)^2 superoperator
representations; that is the reading under which the quadratic and quartic
trace formulas reproduce the brute-force Tr D^2 and Tr D^4 exactly.  Index
raising uses the constant signature eta = diag(e_0..e_3).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import build_gammas
from .dirac import GaugeTriple
from .errors import DimensionMismatch, NotFlat, NotRiemannian, NotSelfAdjoint
from .fluct import Fluctuation, assemble_fluctuated, covariant_ops, higgs_field
from .superop import SuperOp, gen_comm

_EIG_CUTOFF = 4096


@dataclass(frozen=True)
class ActionPolynomial:
    """f(x) = (1/2) sum_i a_i x^i with real coefficients a_1..a_m."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("need at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def coefficient(self, i: int) -> float:
        """a_i, zero outside the stored range (i >= 1)."""
        return self.coeffs[i - 1] if 1 <= i <= len(self.coeffs) else 0.0

    @property
    def a2(self) -> float:
        return self.coefficient(2)

    @property
    def a4(self) -> float:
        return self.coefficient(4)

    def evaluate_sum(self, eigenvalues: np.ndarray) -> float:
        """sum_k f(lambda_k)."""
        out = 0.0
        for i, a in enumerate(self.coeffs, start=1):
            if a:
                out += 0.5 * a * np.sum(eigenvalues ** i)
        return float(out)

    def confining(self) -> bool:
        """Even top degree with positive coefficient (normalizable weight)."""
        return self.degree % 2 == 0 and self.coeffs[-1] > 0


@dataclass(frozen=True)
class ActionBreakdown:
    s_ym: float
    s_h: float
    s_gh: float
    s_theta: float
    total_closed: float
    total_direct: float | None = None

    @property
    def rest(self) -> float | None:
        """Degree >= 5 contribution: direct total minus the four sectors."""
        if self.total_direct is None:
            return None
        return self.total_direct - self.total_closed


@dataclass(frozen=True)
class FieldStrength:
    """F_super[mu][nu] = [d_mu, d_nu]; F_matrix only in flat (0,4) data."""

    F_super: tuple
    F_matrix: tuple | None


def _require_flat(gt: GaugeTriple, fl: Fluctuation):
    if gt.fuzzy.has_triples:
        raise NotFlat("fuzzy data carries nonzero triple-index blocks")
    if fl.S is not None and max(np.abs(Sm).max() for Sm in fl.S) > 0:
        raise NotFlat("fluctuation carries nonzero S matrices")


def _require_riemannian(gt: GaugeTriple):
    if (gt.sig.p, gt.sig.q) != (0, 4):
        raise NotRiemannian(f"signature ({gt.sig.p}, {gt.sig.q}); need (0, 4)")


def field_strength(gt: GaugeTriple, fl: Fluctuation) -> FieldStrength:
    """F_{mu nu} = [d_mu, d_nu] as superops; matrix avatar when Riemannian flat."""
    d = covariant_ops(gt, fl)
    F = tuple(tuple(d[mu] @ d[nu] - d[nu] @ d[mu] for nu in range(4)) for mu in range(4))
    F_mat = None
    if (gt.sig.p, gt.sig.q) == (0, 4) and not gt.fuzzy.has_triples \
            and (fl.S is None or max(np.abs(Sm).max() for Sm in fl.S) == 0):
        from .clifford import single
        M = [np.kron(gt.fuzzy.block(single(mu)), np.eye(gt.n)) + fl.A[mu] for mu in range(4)]
        F_mat = tuple(tuple(M[mu] @ M[nu] - M[nu] @ M[mu] for nu in range(4))
                      for mu in range(4))
    return FieldStrength(F_super=F, F_matrix=F_mat)


def theta(gt: GaugeTriple, fl: Fluctuation) -> SuperOp:
    """theta = sum eta^{mu nu} d_mu o d_nu; positive semidefinite always."""
    _require_flat(gt, fl)
    d = covariant_ops(gt, fl)
    out = gt.sig.e[0] * (d[0] @ d[0])
    for mu in range(1, 4):
        out = out + gt.sig.e[mu] * (d[mu] @ d[mu])
    return out


def trace_d2_closed(gt: GaugeTriple, fl: Fluctuation) -> float:
    """(1/4) Tr D_omega^2 = Tr(theta + Phi^2) in flat data."""
    _require_flat(gt, fl)
    th = theta(gt, fl)
    Phi = higgs_field(fl, gt)
    return float(np.trace(th.rep + Phi.rep @ Phi.rep).real)


def trace_d4_closed(gt: GaugeTriple, fl: Fluctuation) -> float:
    """(1/4) Tr D_omega^4 in flat data.

    -1/2 sum Tr(F_{mu nu} F^{mu nu}) + Tr((theta + Phi^2)^2)
    - sum eta^{mu nu} Tr([d_mu, Phi][d_nu, Phi]).
    """
    _require_flat(gt, fl)
    e = gt.sig.e
    d = covariant_ops(gt, fl)
    th = theta(gt, fl)
    Phi = higgs_field(fl, gt)
    F = field_strength(gt, fl).F_super
    acc = 0.0 + 0j
    for mu in range(4):
        for nu in range(4):
            acc += e[mu] * e[nu] * np.trace(F[mu][nu].rep @ F[mu][nu].rep)
    tp = th.rep + Phi.rep @ Phi.rep
    out = -0.5 * acc + np.trace(tp @ tp)
    for mu in range(4):
        c = d[mu].rep @ Phi.rep - Phi.rep @ d[mu].rep
        out -= e[mu] * np.trace(c @ c)
    return float(out.real)


def gauge_higgs_sector(gt: GaugeTriple, fl: Fluctuation, a4: float) -> float:
    """a4 [Tr(Phi^2 theta) - 1/2 sum eta Tr([d_mu, Phi][d_nu, Phi])].

    This bracket is the exact coefficient grouping that, together with the
    other three sectors, reproduces (1/4) Tr f(D) for degree <= 4.
    """
    e = gt.sig.e
    d = covariant_ops(gt, fl)
    th = theta(gt, fl)
    Phi = higgs_field(fl, gt)
    out = np.trace(Phi.rep @ Phi.rep @ th.rep)
    for mu in range(4):
        c = d[mu].rep @ Phi.rep - Phi.rep @ d[mu].rep
        out -= 0.5 * e[mu] * np.trace(c @ c)
    return float(a4 * out.real)


def gauge_higgs_identity_sides(gt: GaugeTriple, fl: Fluctuation, a4: float):
    """Both candidate forms of the gauge-Higgs sector, evaluated independently.

    Left: the exact bracket a4 [Tr(Phi^2 theta) - 1/2 eta Tr([d, Phi][d, Phi])].
    Right: the integration-by-parts style shortcut
    -a4 sum eta^{mu nu} Tr(d_mu Phi d_nu Phi), operator composition
    throughout.  For matrix traces the two differ by 2 a4 Tr(theta Phi^2):
    the smooth analogue of that term is a total derivative, but a trace has
    no boundary to drop it over, so only the bracket reproduces the direct
    quartic trace.
    """
    lhs = gauge_higgs_sector(gt, fl, a4)
    e = gt.sig.e
    d = covariant_ops(gt, fl)
    Phi = higgs_field(fl, gt)
    rhs = 0.0 + 0j
    for mu in range(4):
        rhs -= e[mu] * np.trace(d[mu].rep @ Phi.rep @ d[mu].rep @ Phi.rep)
    return lhs, float(a4 * rhs.real)


def sectors(gt: GaugeTriple, fl: Fluctuation, f: ActionPolynomial,
            include_direct: bool = False) -> ActionBreakdown:
    """Sector decomposition of (1/4) Tr f(D_omega), flat Riemannian only.

    S_YM = -(a4/4) Tr(F_{mu nu} F^{mu nu}), S_H = Tr f_e(Phi),
    S_theta = (a2/2) Tr theta + (a4/2) Tr theta^2, and the gauge-Higgs
    sector is the exact bracket of `gauge_higgs_sector`.  For f of degree
    <= 4 the four sectors sum to the direct trace.
    """
    _require_riemannian(gt)
    _require_flat(gt, fl)
    a2, a4 = f.a2, f.a4
    e = gt.sig.e
    F = field_strength(gt, fl).F_super
    th = theta(gt, fl)
    Phi = higgs_field(fl, gt)

    acc = 0.0 + 0j
    for mu in range(4):
        for nu in range(4):
            acc += e[mu] * e[nu] * np.trace(F[mu][nu].rep @ F[mu][nu].rep)
    s_ym = float((-a4 / 4 * acc).real)

    P2 = Phi.rep @ Phi.rep
    s_h = float((0.5 * (a2 * np.trace(P2) + a4 * np.trace(P2 @ P2))).real)
    s_th = float((0.5 * (a2 * np.trace(th.rep) + a4 * np.trace(th.rep @ th.rep))).real)
    s_gh = gauge_higgs_sector(gt, fl, a4)
    total = s_ym + s_h + s_gh + s_th

    direct = None
    if include_direct:
        mod = build_gammas(gt.sig)
        direct = spectral_action_direct(assemble_fluctuated(gt, fl, mod), f)
    return ActionBreakdown(s_ym=s_ym, s_h=s_h, s_gh=s_gh, s_theta=s_th,
                           total_closed=total, total_direct=direct)


def spectral_action_direct(D: np.ndarray, f: ActionPolynomial) -> float:
    """(1/4) Tr f(D) by eigenvalues (small dims) or repeated multiplication."""
    if D.shape[0] != D.shape[1]:
        raise DimensionMismatch(f"operator not square: {D.shape}")
    dev = np.abs(D - D.conj().T).max()
    if dev > 1e-9 * max(1.0, np.abs(D).max()):
        raise NotSelfAdjoint(f"operator deviates from self-adjointness by {dev:.3e}")
    if D.shape[0] <= _EIG_CUTOFF:
        ev = np.linalg.eigvalsh(D)
        return 0.25 * f.evaluate_sum(ev)
    out = 0.0
    power = np.eye(D.shape[0], dtype=complex)
    for i, a in enumerate(f.coeffs, start=1):
        power = power @ D
        if a:
            out += 0.5 * a * np.trace(power).real
    return 0.25 * float(out)


def tetrahedral(K, sig=None) -> float:
    """-(1/2) sum_{mu != nu} Tr(k_mu k_nu k^mu k^nu) with k_mu = {K_mu, .}.

    Defaults to the (0, 4) signature (all commutators, trivial index
    raising); pass a Signature for other adjointness/raising conventions.
    """
    if sig is None:
        from .clifford import build_signature
        sig = build_signature(0, 4)
    if len(K) != 4:
        raise DimensionMismatch("need exactly four matrices")
    shape = K[0].shape
    if any(Km.shape != shape for Km in K):
        raise DimensionMismatch("matrices must share one size")
    k = [gen_comm(np.ascontiguousarray(Km, dtype=complex), sig.e[mu])
         for mu, Km in enumerate(K)]
    out = 0.0 + 0j
    for mu in range(4):
        for nu in range(4):
            if mu == nu:
                continue
            out += sig.e[mu] * sig.e[nu] * np.trace(
                k[mu].rep @ k[nu].rep @ k[mu].rep @ k[nu].rep)
    return float((-0.5 * out).real)
