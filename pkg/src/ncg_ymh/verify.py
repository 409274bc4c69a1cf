"""The identity suite behind the CLI verify subcommand.

Each entry evaluates one algebraic statement numerically (usually against a
brute-force oracle) and reports the worst deviation together with the
tolerance pinned for it.  Signature-independent statements run per
signature; sector/covariance statements are Riemannian only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import action as action_mod
from . import clifford, dirac, fluct, gauge
from .action import ActionPolynomial
from .dirac import FiniteData, GaugeTriple, random_hermitian


@dataclass(frozen=True)
class IdentityResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation <= self.tolerance)

    def as_dict(self) -> dict:
        return {"identity": self.name, "max_deviation": float(self.max_deviation),
                "tolerance": float(self.tolerance), "pass": self.passed}


def _rel(diff: float, scale: float) -> float:
    return diff / max(scale, 1e-300)


def _random_triple(p, q, N, n, seed, include_X, with_DF):
    sig = clifford.build_signature(p, q)
    fz = dirac.random_fuzzy(N, sig, seed=seed, include_X=include_X)
    rng = np.random.default_rng(seed + 1000)
    DF = random_hermitian(n, rng) if with_DF else np.zeros((n, n), dtype=complex)
    return GaugeTriple(fuzzy=fz, finite=FiniteData(n=n, D_F=DF))


def signature_suite(p: int, q: int, N: int = 2, n: int = 2, seed: int = 0):
    """Identities valid in any 4d signature, for one (p, q)."""
    results = []
    sig = clifford.build_signature(p, q)
    mod = clifford.build_gammas(sig)

    inv = clifford.verify_module_invariants(mod)
    for name, dev in inv.items():
        results.append(IdentityResult(f"clifford/{name}", dev, 1e-12))
    rep = clifford.verify_gamma_identities(mod)
    for name, dev in rep.items():
        results.append(IdentityResult(f"gamma/{name}", dev, 1e-12))

    # axioms on a random flat Yang-Mills triple (JD sign needs D_F = 0)
    gt0 = _random_triple(p, q, N, n, seed, include_X=True, with_DF=False)
    ax = dirac.check_axioms(gt0, mod, seed=seed, pairs=20)
    for name, dev in ax.items():
        if name.startswith("informational_"):
            continue
        results.append(IdentityResult(f"axioms/{name}", dev, 1e-10))

    # Lichnerowicz, five seeds, N in {2, 3}
    worst = 0.0
    for NN in (2, 3):
        for sd in range(5):
            fz = dirac.random_fuzzy(NN, sig, seed=seed + sd, include_X=True)
            D = dirac.assemble_fuzzy_dirac(fz, mod)
            D2 = D @ D
            rhs = dirac.lichnerowicz_rhs(fz, mod)
            worst = max(worst, _rel(np.linalg.norm(D2 - rhs), np.linalg.norm(D2)))
    results.append(IdentityResult("lichnerowicz/square_equals_rhs", worst, 1e-10))

    # fluctuation dual path (with D_F and Higgs content when available)
    worst = 0.0
    for sd in range(3):
        gt = _random_triple(p, q, N, n, seed + sd, include_X=True, with_DF=True)
        rng = np.random.default_rng(seed + sd)
        m = gt.m
        pairs = [(np.kron(rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)),
                          rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))),
                  np.kron(rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N)),
                          rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))))
                 for _ in range(3)]
        omega = fluct.connes_one_form(gt, mod, pairs)
        S = dirac.real_structure(mod, m)
        D = dirac.assemble_product_dirac(gt, mod)
        D_fl = fluct.fluctuate(D, omega, S, sig.eps_prime, symmetrize=True)
        fl = fluct.extract_fluctuation(gt, mod, (omega + omega.conj().T) / 2)
        closed = fluct.assemble_fluctuated(gt, fl, mod)
        worst = max(worst, _rel(np.linalg.norm(D_fl - closed), np.linalg.norm(D_fl)))
    results.append(IdentityResult("fluctuation/dual_path", worst, 1e-10))

    # full Weitzenboeck: X, S nonzero, Higgs off
    worst = 0.0
    for sd in range(2):
        gt = _random_triple(p, q, N, n, seed + sd, include_X=True, with_DF=False)
        fl = fluct.random_fluctuation(gt, seed=seed + sd)
        D = fluct.assemble_fluctuated(gt, fl, mod)
        k = fluct.covariant_ops(gt, fl)
        x = fluct.triple_ops(gt, fl)
        rhs = dirac._weitzenbock_core(sig, mod, k, x, gt.m * gt.m)
        D2 = D @ D
        worst = max(worst, _rel(np.linalg.norm(D2 - rhs), np.linalg.norm(D2)))
    results.append(IdentityResult("weitzenbock/full", worst, 1e-10))

    # field strength adjointness in the flat setting
    gt = _random_triple(p, q, N, n, seed, include_X=False, with_DF=False)
    fl = fluct.random_fluctuation(gt, seed=seed)
    F = action_mod.field_strength(gt, fl).F_super
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            worst = max(worst, np.abs(F[mu][nu].rep + F[nu][mu].rep).max())
            expect = -sig.e[mu] * sig.e[nu] * F[mu][nu].rep
            worst = max(worst, np.abs(F[mu][nu].adjoint().rep - expect).max())
    results.append(IdentityResult("field_strength/antisymmetry_adjointness", worst, 1e-10))

    # trace lemmas against brute force (flat, with D_F and Higgs)
    gt = _random_triple(p, q, N, n, seed, include_X=False, with_DF=True)
    flh = fluct.random_fluctuation(gt, seed=seed)
    D = fluct.assemble_fluctuated(gt, flh, mod)
    D2 = D @ D
    lhs2 = 0.25 * np.trace(D2).real
    lhs4 = 0.25 * np.trace(D2 @ D2).real
    results.append(IdentityResult(
        "trace/quadratic", _rel(abs(lhs2 - action_mod.trace_d2_closed(gt, flh)), abs(lhs2)), 1e-9))
    results.append(IdentityResult(
        "trace/quartic", _rel(abs(lhs4 - action_mod.trace_d4_closed(gt, flh)), abs(lhs4)), 1e-9))
    ev = np.linalg.eigvalsh(D)
    odd1 = abs(np.sum(ev)) / max(np.sum(np.abs(ev)), 1e-300)
    odd3 = abs(np.sum(ev ** 3)) / max(np.sum(np.abs(ev) ** 3), 1e-300)
    results.append(IdentityResult("trace/odd_powers_vanish", max(odd1, odd3), 1e-9))
    return results


def riemannian_suite(N: int = 2, n: int = 2, seed: int = 0):
    """Sector decomposition, positivity and gauge covariance, (0, 4) only."""
    results = []
    sig = clifford.build_signature(0, 4)
    mod = clifford.build_gammas(sig)
    poly = ActionPolynomial((0.0, 1.0, 0.0, 1.0))

    # flat Weitzenboeck with Higgs on
    worst = 0.0
    for sd in range(3):
        gt = _random_triple(0, 4, N, n, seed + sd, include_X=False, with_DF=True)
        fl = fluct.random_fluctuation(gt, seed=seed + sd)
        D = fluct.assemble_fluctuated(gt, fl, mod)
        F = action_mod.field_strength(gt, fl).F_super
        th = action_mod.theta(gt, fl)
        Phi = fluct.higgs_field(fl, gt)
        d = fluct.covariant_ops(gt, fl)
        rhs = np.zeros_like(D)
        for mu in range(4):
            for nu in range(4):
                rhs += 0.5 * np.kron(mod.gammas[mu] @ mod.gammas[nu], F[mu][nu].rep)
        rhs += np.kron(np.eye(4), th.rep + Phi.rep @ Phi.rep)
        for mu in range(4):
            dphi = d[mu].rep @ Phi.rep - Phi.rep @ d[mu].rep
            rhs += np.kron(mod.gammas[mu] @ mod.chirality, dphi)
        D2 = D @ D
        worst = max(worst, _rel(np.linalg.norm(D2 - rhs), np.linalg.norm(D2)))
    results.append(IdentityResult("weitzenbock/flat_higgs", worst, 1e-10))

    # sector sum against the direct trace; positivity; theta PSD
    worst_sum = 0.0
    worst_pos = 0.0
    worst_theta = 0.0
    for sd in range(5):
        gt = _random_triple(0, 4, N, n, seed + sd, include_X=False, with_DF=True)
        fl = fluct.random_fluctuation(gt, seed=seed + 17 + sd)
        br = action_mod.sectors(gt, fl, poly, include_direct=True)
        worst_sum = max(worst_sum, _rel(abs(br.total_closed - br.total_direct),
                                        abs(br.total_direct)))
        worst_pos = max(worst_pos, -min(br.s_ym, br.s_h, br.s_theta))
        th = action_mod.theta(gt, fl)
        worst_theta = max(worst_theta, -float(np.linalg.eigvalsh(th.rep).min()))
    results.append(IdentityResult("sectors/sum_equals_direct_trace", worst_sum, 1e-9))
    results.append(IdentityResult("sectors/positivity", worst_pos, 1e-10))
    results.append(IdentityResult("theta/positive_semidefinite", worst_theta, 1e-10))

    # gauge covariance and invariance (Yang-Mills data: action invariance
    # needs J-compatibility of all of D, which left-mult D_F breaks)
    worst_cov = 0.0
    worst_inv = 0.0
    worst_ts = 0.0
    for sd in range(3):
        gt = _random_triple(0, 4, N, n, seed + sd, include_X=False, with_DF=False)
        fl = fluct.random_fluctuation(gt, seed=seed + 31 + sd)
        for product_form in (True, False):
            g = gauge.random_unitary(N, n, product_form=product_form, seed=seed + sd)
            rep = gauge.covariance_report(gt, fl, g, poly)
            worst_cov = max(worst_cov, rep["field_strength_covariance"])
            worst_inv = max(worst_inv, rep["action_invariance_rel"])
            worst_ts = max(worst_ts, rep["ts_identity"])
    results.append(IdentityResult("gauge/field_strength_covariance", worst_cov, 1e-10))
    results.append(IdentityResult("gauge/action_invariance", worst_inv, 1e-9))
    results.append(IdentityResult("gauge/ts_identity", worst_ts, 1e-10))

    gt = _random_triple(0, 4, N, n, seed, include_X=False, with_DF=True)
    fl = fluct.random_fluctuation(gt, seed=seed)
    lam = np.exp(0.37j)
    central = gauge.GaugeElement(u=lam * np.eye(gt.m))
    fl_c = gauge.transform(gt, fl, central)
    dev = max(np.abs(fl_c.A[mu] - fl.A[mu]).max() for mu in range(4))
    dev = max(dev, np.abs(fl_c.phi - fl.phi).max())
    results.append(IdentityResult("gauge/central_unitary_trivial", dev, 1e-12))
    return results


def run_identity_suite(p: int, q: int, N: int = 2, n: int = 2, seed: int = 0):
    results = signature_suite(p, q, N, n, seed)
    if (p, q) == (0, 4):
        results.extend(riemannian_suite(N, n, seed))
    return results
