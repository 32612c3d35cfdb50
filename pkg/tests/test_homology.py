import pytest
from hypothesis import given, settings, strategies as st

from overnerve.homology import (
    Certificate,
    CertificateError,
    Tag,
    cylinder_ends,
    diagonal,
    homology,
    matmul,
    normalized_chains,
    pi0,
    smith_normal_form,
    we_evidence,
)
from overnerve.sset import (
    FinSSet,
    SimpMap,
    boundary,
    compose,
    constant_map,
    enumerate_maps,
    horn,
    nondeg,
    simplex,
    SimplexRef,
    to_point,
    vertex_inclusion,
)
from tests.oracles import all_faces, horn_faces, simplicial_complex_betti


def _det(M):
    if not M:
        return 1
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(len(M)))


def test_snf_examples():
    assert diagonal(smith_normal_form([[2]])[0]) == [2]
    assert diagonal(smith_normal_form([[1, 0], [0, 2]])[0]) == [1, 2]
    assert diagonal(smith_normal_form([[2, 0], [0, 3]])[0]) == [1, 6]
    assert diagonal(smith_normal_form([[0, 0], [0, 0]])[0]) == [0, 0]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(M):
    D, U, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0
    d = diagonal(D)
    assert all(v >= 0 for v in d)
    nz = [v for v in d if v]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[len(nz):] == [0] * (len(d) - len(nz))


@pytest.mark.parametrize("n", range(5))
def test_spheres_and_points(n):
    assert homology(simplex(n)).betti == (1,) + (0,) * n
    if n >= 1:
        h = homology(boundary(n))
        expected = [0] * n
        expected[0] += 1
        expected[n - 1] += 1
        assert list(h.betti) == expected
        assert all(t == () for t in h.torsion)
        assert list(h.betti) == simplicial_complex_betti(n + 1, all_faces(n, lambda s: len(s) < n + 1))
        for k in range(n + 1):
            assert list(homology(horn(n, k)).betti) == simplicial_complex_betti(n + 1, horn_faces(n, k))


def test_boundary_three_report():
    h = homology(boundary(3))
    assert str(h) == "H_0 = Z, H_1 = 0, H_2 = Z"
    assert h.to_json()["2"] == {"betti": 1, "torsion": []}


def test_torsion_projective_plane_like():
    # one vertex, one loop e, one triangle with faces (e, s_0 v, e): ∂t = 2e
    X = FinSSet({0: ["v"], 1: ["e"], 2: ["t"]}, {"e": [nondeg("v", 0)] * 2, "t": [nondeg("e", 1), SimplexRef((0, 0), "v"), nondeg("e", 1)]})
    assert X.is_valid()
    h = homology(X)
    assert h.group(1) == (0, (2,))
    assert h.group(2) == (0, ())


def test_chain_complex_square_zero():
    assert normalized_chains(boundary(3)).check_square_zero()


def test_pi0():
    assert pi0(boundary(1)) == [["0"], ["1"]]
    assert len(pi0(simplex(2))) == 1


def test_verdicts():
    assert we_evidence(SimpMap.identity(boundary(2))).tag is Tag.CERTIFIED_EQ
    v = we_evidence(to_point(boundary(1)))
    assert v.tag is Tag.NOT_EQ and v.witness["invariant"] == "pi0"
    v = we_evidence(to_point(boundary(2)))
    assert v.tag is Tag.NOT_EQ and v.witness["invariant"] == "H_1"
    v = we_evidence(to_point(simplex(2)))
    assert v.tag is Tag.EVIDENCE_EQ


def _contraction_of_interval():
    cyl, i0, i1 = cylinder_ends(simplex(1))
    g = vertex_inclusion(1, 0)
    f = to_point(simplex(1))
    target0 = compose(g, f)
    for H in enumerate_maps(cyl.space, simplex(1)):
        if compose(H, i0).same_as(target0) and compose(H, i1).same_as(SimpMap.identity(simplex(1))):
            return f, g, H
    raise AssertionError("no contraction found")


def test_certificate_accepted_and_rejected():
    f, g, H = _contraction_of_interval()
    assert we_evidence(f, Certificate(g, H, None)).tag is Tag.CERTIFIED_EQ
    cyl, i0, i1 = cylinder_ends(simplex(1))
    bad = constant_map(cyl.space, simplex(1), "1")
    v = we_evidence(f, Certificate(g, bad, None))
    assert v.tag is Tag.EVIDENCE_EQ and "certificate_rejected" in v.witness
    with pytest.raises(CertificateError):
        we_evidence(f, Certificate(SimpMap.identity(simplex(1))))
