import numpy as np
import pytest

from ncg_ymh import clifford, dirac
from ncg_ymh.clifford import build_module, build_signature, hat, single
from ncg_ymh.dirac import FiniteData, FuzzyData, GaugeTriple

ALL_SIGS = [(0, 4), (1, 3), (2, 2), (3, 1)]


def make_triple(p, q, N=2, n=2, seed=0, include_X=True, with_DF=False):
    sig = build_signature(p, q)
    fz = dirac.random_fuzzy(N, sig, seed=seed, include_X=include_X)
    if with_DF:
        DF = dirac.random_hermitian(n, np.random.default_rng(seed + 99))
    else:
        DF = np.zeros((n, n), dtype=complex)
    return GaugeTriple(fuzzy=fz, finite=FiniteData(n=n, D_F=DF))


def test_random_fuzzy_adjointness_types():
    sig = build_signature(1, 3)
    fz = dirac.random_fuzzy(3, sig, seed=1)
    H0 = fz.block(single(0))
    assert np.allclose(H0.conj().T, H0)
    for mu in (1, 2, 3):
        L = fz.block(single(mu))
        assert np.allclose(L.conj().T, -L)
        # triples hat(1..3) are anti-Hermitian in (1, 3); hat(0) Hermitian
        X = fz.block(hat(mu))
        assert np.allclose(X.conj().T, -X)
    assert np.allclose(fz.block(hat(0)).conj().T, fz.block(hat(0)))


def test_riemannian_fuzzy_types():
    sig = build_signature(0, 4)
    flat = dirac.random_fuzzy(2, sig, seed=0, include_X=False)
    assert not flat.has_triples
    full = dirac.random_fuzzy(2, sig, seed=0, include_X=True)
    for mu in range(4):
        assert np.allclose(full.block(single(mu)).conj().T, -full.block(single(mu)))
        assert np.allclose(full.block(hat(mu)).conj().T, full.block(hat(mu)))


def test_fuzzy_block_type_rejected():
    sig = build_signature(0, 4)
    H = np.array([[1.0, 0.0], [0.0, 2.0]], dtype=complex)  # Hermitian, needs anti
    with pytest.raises(ValueError):
        FuzzyData(N=2, sig=sig, K={single(0): H})


def test_assemble_zero_and_single_block():
    sig = build_signature(0, 4)
    mod = build_module(0, 4)
    assert np.abs(dirac.assemble_fuzzy_dirac(dirac.zero_fuzzy(2, sig), mod)).max() == 0

    rng = np.random.default_rng(3)
    L0 = 1j * dirac.random_hermitian(2, rng)
    fz = FuzzyData(N=2, sig=sig, K={single(0): L0})
    D = dirac.assemble_fuzzy_dirac(fz, mod)
    expected = np.kron(mod.gammas[0],
                       np.kron(np.eye(2), L0) - np.kron(L0.T, np.eye(2)))
    np.testing.assert_allclose(D, expected, atol=1e-14)
    assert np.abs(D - D.conj().T).max() <= 1e-12


@pytest.mark.parametrize("p,q", ALL_SIGS)
def test_product_dirac_selfadjoint(p, q):
    mod = build_module(p, q)
    gt = make_triple(p, q, with_DF=True, seed=7)
    D = dirac.assemble_product_dirac(gt, mod)
    assert np.abs(D - D.conj().T).max() <= 1e-12


def test_product_reduces_to_fuzzy_when_df_zero():
    mod = build_module(0, 4)
    gt = make_triple(0, 4, N=2, n=2, seed=5, with_DF=False)
    D = dirac.assemble_product_dirac(gt, mod)
    # same assembly with every K replaced by K (x) 1_n
    n = gt.n
    expected = np.zeros_like(D)
    for mu in range(4):
        from ncg_ymh.superop import gen_comm
        expected += np.kron(mod.gammas[mu],
                            gen_comm(np.kron(gt.fuzzy.block(single(mu)), np.eye(n)),
                                     gt.sig.e[mu]).rep)
        expected += np.kron(mod.gamma_hat(mu),
                            gen_comm(np.kron(gt.fuzzy.block(hat(mu)), np.eye(n)),
                                     gt.sig.e_hat[mu]).rep)
    np.testing.assert_allclose(D, expected, atol=1e-14)


def test_gamma_part_anticommutes():
    # the D_F part of the product Dirac anticommutes with gamma^mu (x) 1
    mod = build_module(0, 4)
    gt = make_triple(0, 4, with_DF=True, seed=2)
    from ncg_ymh.superop import left_mult
    m = gt.m
    dfpart = np.kron(mod.chirality, left_mult(np.kron(np.eye(gt.N), gt.finite.D_F)).rep)
    for mu in range(4):
        gmu = np.kron(mod.gammas[mu], np.eye(m * m))
        assert np.abs(dfpart @ gmu + gmu @ dfpart).max() <= 1e-12


@pytest.mark.parametrize("p,q", ALL_SIGS)
def test_axioms_flat_yang_mills(p, q):
    mod = build_module(p, q)
    gt = make_triple(p, q, seed=11, with_DF=False)
    report = dirac.check_axioms(gt, mod, seed=3, pairs=20)
    for name, dev in report.items():
        assert dev <= 1e-10, f"({p},{q}) {name}: {dev}"
    assert "J_D_sign" in report  # asserted, not informational, when D_F = 0


def test_axioms_with_finite_dirac_informational():
    mod = build_module(0, 4)
    gt = make_triple(0, 4, seed=11, with_DF=True)
    report = dirac.check_axioms(gt, mod, seed=3, pairs=10)
    assert "informational_J_D_sign" in report
    # the rest still holds with D_F != 0
    for name, dev in report.items():
        if not name.startswith("informational_"):
            assert dev <= 1e-10, f"{name}: {dev}"


def test_order_one_central_element_exact():
    mod = build_module(0, 4)
    gt = make_triple(0, 4, seed=4, with_DF=False)
    m = gt.m
    D = dirac.assemble_product_dirac(gt, mod)
    S = dirac.real_structure(mod, m)
    rho_a = dirac.represent_algebra(2.5 * np.eye(m), m)
    rng = np.random.default_rng(0)
    b = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    b_op = dirac.conjugate_by_J(dirac.represent_algebra(b.conj().T, m), S)
    inner = D @ rho_a - rho_a @ D
    assert np.abs(inner @ b_op - b_op @ inner).max() == 0.0


def test_j_square_branch_22():
    # s = 0 row of the sign table: J^2 = +1
    mod = build_module(2, 2)
    gt = make_triple(2, 2, seed=1, with_DF=False)
    S = dirac.real_structure(mod, gt.m)
    assert np.abs(S @ S.conj() - np.eye(gt.hilbert_dim)).max() <= 1e-12


def test_sign_s_t_values():
    sig = build_signature(0, 4)
    assert dirac.sign_s(sig, 0, 0, 1, 2) == 0
    assert dirac.sign_t(sig, 1, 1) == 0
    # frozen: substitute into the definitions
    assert dirac.sign_s(sig, 0, 1, 2, 3) == -1
    assert dirac.sign_t(sig, 0, 1) == 1
    for mu in range(4):
        for nu in range(4):
            assert dirac.sign_t(sig, mu, nu) in (-1, 0, 1)
            for al in range(4):
                for sg in range(4):
                    assert dirac.sign_s(sig, mu, nu, al, sg) in (-1, 0, 1)


def test_lichnerowicz_zero_and_flat_reduction():
    sig = build_signature(0, 4)
    mod = build_module(0, 4)
    assert np.abs(dirac.lichnerowicz_rhs(dirac.zero_fuzzy(2, sig), mod)).max() == 0

    # X = 0: only the eta k k and commutator terms survive
    fz = dirac.random_fuzzy(2, sig, seed=8, include_X=False)
    rhs = dirac.lichnerowicz_rhs(fz, mod)
    from ncg_ymh.superop import gen_comm
    k = [gen_comm(fz.block(single(mu)), sig.e[mu]) for mu in range(4)]
    expected = np.zeros_like(rhs)
    for mu in range(4):
        expected += sig.e[mu] * np.kron(np.eye(4), (k[mu] @ k[mu]).rep)
        for nu in range(4):
            expected += 0.5 * np.kron(mod.gammas[mu] @ mod.gammas[nu],
                                      (k[mu] @ k[nu] - k[nu] @ k[mu]).rep)
    np.testing.assert_allclose(rhs, expected, atol=1e-13)


def test_lichnerowicz_equals_square():
    sig = build_signature(0, 4)
    mod = build_module(0, 4)
    fz = dirac.random_fuzzy(3, sig, seed=21, include_X=True)
    D = dirac.assemble_fuzzy_dirac(fz, mod)
    D2 = D @ D
    rhs = dirac.lichnerowicz_rhs(fz, mod)
    assert np.linalg.norm(D2 - rhs) <= 1e-10 * np.linalg.norm(D2)
