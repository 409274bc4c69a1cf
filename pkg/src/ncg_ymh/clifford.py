"""Signature data, gamma matrices, chirality and charge conjugation for d = 4.

Conventions (fixed once, used everywhere):

* eta = diag(e_0, ..., e_3) with e_mu = +1 for mu < p and -1 for mu >= p;
  gamma^mu is Hermitian and squares to +1 in the first case, anti-Hermitian
  squaring to -1 in the second.
* The representation starts from a chiral Euclidean set of four Hermitian,
  pairwise anticommuting, square-one 4x4 matrices built from Pauli blocks;
  gamma^mu is multiplied by i for every mu >= p.
* hat indices: gamma^{hat mu} is the increasing-order product of the three
  gammas with index != mu; its adjointness sign is e_{hat mu} = e_mu (-1)^{q+1}.
* chirality gamma = sigma_eta * gamma^0 gamma^1 gamma^2 gamma^3 with
  sigma_eta = (-i)^{s(s+1)/2 mod 4}, s = (q - p) mod 8.
* charge conjugation C = U_C o (entrywise conjugation), U_C found by a
  deterministic search over the 16 Pauli tensor monomials.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConjugationNotFound, NonFourDimensional

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# KO sign table, s -> (eps, eps', eps'')
_KO_TABLE = {
    0: (+1, +1, +1),
    1: (+1, -1, +1),
    2: (-1, +1, -1),
    3: (-1, +1, +1),
    4: (-1, +1, +1),
    5: (-1, -1, +1),
    6: (+1, +1, -1),
    7: (+1, +1, +1),
}

# (-i)^k for k = 0..3, kept exact (no float powers)
_MINUS_I_POW = (1.0 + 0j, -1j, -1.0 + 0j, 1j)


@dataclass(frozen=True)
class Signature:
    """The (p, q) data with every derived sign."""

    p: int
    q: int
    d: int
    s: int
    e: tuple
    e_hat: tuple
    eps: int
    eps_prime: int
    eps_dblprime: int
    sigma_eta: complex

    @property
    def eta(self) -> np.ndarray:
        return np.diag(np.array(self.e, dtype=float))

    def det_eta(self) -> int:
        out = 1
        for x in self.e:
            out *= x
        return out


@dataclass(frozen=True)
class MultiIndex:
    """A single index mu, or the triple omitting mu (written 'hat mu')."""

    mu: int
    hat: bool = False

    def sign(self, sig: Signature) -> int:
        return sig.e_hat[self.mu] if self.hat else sig.e[self.mu]

    def __repr__(self):
        return f"hat{self.mu}" if self.hat else f"mu{self.mu}"


def single(mu: int) -> MultiIndex:
    return MultiIndex(mu, hat=False)


def hat(mu: int) -> MultiIndex:
    return MultiIndex(mu, hat=True)


def build_signature(p: int, q: int) -> Signature:
    """All derived signs of a four-dimensional signature (p, q)."""
    if p < 0 or q < 0 or p + q != 4:
        raise NonFourDimensional(f"(p, q) = ({p}, {q}) but the pipeline needs p + q = 4")
    s = (q - p) % 8
    e = tuple(+1 if mu < p else -1 for mu in range(4))
    e_hat = tuple(e[mu] * (-1) ** (q + 1) for mu in range(4))
    eps, eps_prime, eps_dblprime = _KO_TABLE[s]
    sigma_eta = _MINUS_I_POW[(s * (s + 1) // 2) % 4]
    return Signature(p=p, q=q, d=4, s=s, e=e, e_hat=e_hat, eps=eps,
                     eps_prime=eps_prime, eps_dblprime=eps_dblprime,
                     sigma_eta=sigma_eta)


@dataclass(frozen=True)
class CliffordModule:
    """Concrete gammas, chirality and conjugation unitary on V = C^4."""

    signature: Signature
    dimV: int
    gammas: tuple
    chirality: np.ndarray
    conj_unitary: np.ndarray

    def gamma_hat(self, mu: int) -> np.ndarray:
        others = [nu for nu in range(4) if nu != mu]
        return self.gammas[others[0]] @ self.gammas[others[1]] @ self.gammas[others[2]]


def _euclidean_base():
    # four Hermitian, pairwise anticommuting matrices squaring to +1
    return (
        np.kron(_PAULI[1], _PAULI[0]),
        np.kron(_PAULI[2], _PAULI[0]),
        np.kron(_PAULI[3], _PAULI[1]),
        np.kron(_PAULI[3], _PAULI[2]),
    )


def _search_conjugation(sig: Signature, gammas, chirality) -> np.ndarray:
    """First Pauli monomial U with C = U o conj satisfying the C relations.

    The search order (tensor factors in Pauli order 1, x, y, z) is fixed so
    the output is reproducible.  The phase of U is irrelevant to every
    relation, so plain monomials suffice.
    """
    eye = np.eye(4)
    for a in range(4):
        for b in range(4):
            U = np.kron(_PAULI[a], _PAULI[b])
            if not np.allclose(U @ U.conj(), sig.eps * eye, atol=1e-12):
                continue
            if not all(np.allclose(U @ g.conj(), sig.eps_prime * g @ U, atol=1e-12)
                       for g in gammas):
                continue
            if not np.allclose(U @ chirality.conj(),
                               sig.eps_dblprime * chirality @ U, atol=1e-12):
                continue
            return U
    raise ConjugationNotFound(
        f"no monomial U_C satisfies the C relations for (p, q) = ({sig.p}, {sig.q})")


def build_gammas(sig: Signature) -> CliffordModule:
    """Explicit 4x4 representation for the given signature."""
    base = _euclidean_base()
    gammas = tuple(base[mu] if mu < sig.p else 1j * base[mu] for mu in range(4))
    chirality = sig.sigma_eta * gammas[0] @ gammas[1] @ gammas[2] @ gammas[3]
    U = _search_conjugation(sig, gammas, chirality)
    return CliffordModule(signature=sig, dimV=4, gammas=gammas,
                          chirality=chirality, conj_unitary=U)


def build_module(p: int, q: int) -> CliffordModule:
    return build_gammas(build_signature(p, q))


def gamma_product(mod: CliffordModule, I: MultiIndex) -> np.ndarray:
    """gamma^I: the stored gamma for singles, increasing triple product for hats."""
    if I.hat:
        return mod.gamma_hat(I.mu)
    return mod.gammas[I.mu]


def _eta_entry(sig: Signature, mu: int, nu: int) -> int:
    return sig.e[mu] if mu == nu else 0


def trace4(sig: Signature, mu: int, nu: int, alpha: int, rho: int) -> float:
    """Closed form of Tr_V(gamma^mu gamma^nu gamma^alpha gamma^rho)."""
    return 4.0 * (_eta_entry(sig, mu, nu) * _eta_entry(sig, alpha, rho)
                  - _eta_entry(sig, mu, alpha) * _eta_entry(sig, nu, rho)
                  + _eta_entry(sig, mu, rho) * _eta_entry(sig, nu, alpha))


def _delta4(*idx) -> int:
    return 1 if len(set(idx)) == 4 else 0


def verify_gamma_identities(mod: CliffordModule) -> dict:
    """Max absolute deviation of each gamma-algebra identity.

    Covers the single/triple product expansions over all index pairs, the
    trace-of-four-gammas formula over all 256 tuples, and the vanishing of
    odd-product traces.
    """
    sig = mod.signature
    g = mod.gammas
    eye = np.eye(4)
    g0123 = g[0] @ g[1] @ g[2] @ g[3]
    report = {}

    dev = 0.0
    for mu in range(4):
        for nu in range(4):
            rhs = np.zeros((4, 4), dtype=complex)
            if mu == nu:
                rhs += g0123
            acc = np.zeros((4, 4), dtype=complex)
            for al in range(4):
                for sgm in range(al + 1, 4):
                    if _delta4(mu, nu, al, sgm):
                        acc += sig.e[mu] * g[al] @ g[sgm]
            rhs += float(np.sign(nu - mu)) * acc
            rhs *= (-1) ** mu
            dev = max(dev, np.abs(g[mu] @ mod.gamma_hat(nu) - rhs).max())
    report["single_times_triple"] = dev

    dev = 0.0
    for mu in range(4):
        dev = max(dev, np.abs(mod.gamma_hat(mu) @ g[mu] + g[mu] @ mod.gamma_hat(mu)).max())
    report["triple_single_anticommute"] = dev

    dev = 0.0
    for mu in range(4):
        for nu in range(4):
            if nu == mu:
                continue
            dev = max(dev, np.abs(mod.gamma_hat(nu) @ g[mu] - g[mu] @ mod.gamma_hat(nu)).max())
    report["triple_single_commute"] = dev

    dev = 0.0
    det = sig.det_eta()
    for mu in range(4):
        for nu in range(4):
            rhs = np.zeros((4, 4), dtype=complex)
            for lam in range(4):
                for rho in range(4):
                    if _delta4(mu, nu, lam, rho):
                        rhs += 0.5 * (-1) ** (1 + abs(mu - nu)) * sig.e[lam] * sig.e[rho] \
                            * g[mu] @ g[nu]
            if mu == nu:
                rhs -= sig.e[mu] * det * eye
            dev = max(dev, np.abs(mod.gamma_hat(mu) @ mod.gamma_hat(nu) - rhs).max())
    report["triple_times_triple"] = dev

    dev = 0.0
    for mu in range(4):
        for nu in range(4):
            for al in range(4):
                for rho in range(4):
                    direct = np.trace(g[mu] @ g[nu] @ g[al] @ g[rho])
                    dev = max(dev, abs(direct - trace4(sig, mu, nu, al, rho)))
    report["trace_four_gammas"] = dev

    dev = 0.0
    for mu in range(4):
        dev = max(dev, abs(np.trace(g[mu])))
        for nu in range(4):
            for rho in range(4):
                dev = max(dev, abs(np.trace(g[mu] @ g[nu] @ g[rho])))
                dev = max(dev, abs(np.trace(g[mu] @ g[nu] @ g[rho] @ mod.chirality)))
    report["odd_traces"] = dev

    return report


def verify_module_invariants(mod: CliffordModule) -> dict:
    """Max deviation of the defining Clifford/chirality/conjugation relations."""
    sig = mod.signature
    g = mod.gammas
    eye = np.eye(4)
    report = {}

    dev = 0.0
    for mu in range(4):
        for nu in range(4):
            target = 2.0 * _eta_entry(sig, mu, nu) * eye
            dev = max(dev, np.abs(g[mu] @ g[nu] + g[nu] @ g[mu] - target).max())
    report["anticommutation"] = dev

    report["unitarity"] = max(np.abs(gm @ gm.conj().T - eye).max() for gm in g)
    report["adjointness"] = max(
        np.abs(g[mu].conj().T - sig.e[mu] * g[mu]).max() for mu in range(4))

    c = mod.chirality
    report["chirality_square"] = np.abs(c @ c - eye).max()
    report["chirality_selfadjoint"] = np.abs(c - c.conj().T).max()
    report["chirality_anticommutes"] = max(
        np.abs(c @ gm + gm @ c).max() for gm in g)

    U = mod.conj_unitary
    report["conj_square"] = np.abs(U @ U.conj() - sig.eps * eye).max()
    report["conj_gamma"] = max(
        np.abs(U @ gm.conj() - sig.eps_prime * gm @ U).max() for gm in g)
    report["conj_chirality"] = np.abs(U @ c.conj() - sig.eps_dblprime * c @ U).max()

    dev = 0.0
    for mu in range(4):
        for h in (False, True):
            I = MultiIndex(mu, h)
            gI = gamma_product(mod, I)
            dev = max(dev, np.abs(gI.conj().T - I.sign(sig) * gI).max())
    report["multiindex_adjointness"] = dev

    return report
