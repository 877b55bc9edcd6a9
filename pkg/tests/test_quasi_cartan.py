import itertools
import random

import pytest

from cluster_finite.diagram import Diagram, Edge, diagram_of_quasi_cartan, diagram_of_skew
from cluster_finite.errors import (
    MalformedCycle,
    NotACompanion,
    NotKCompatible,
    NotSymmetrizable,
    SignDomainMismatch,
    SymmetrizerMismatch,
)
from cluster_finite.matrix import SkewSymmetrizableMatrix, Symmetrizer, determinant, matmul, mutate
from cluster_finite.orient import SignAssignment
from cluster_finite.quasi_cartan import (
    CycleShape,
    QuasiCartanMatrix,
    check_cycle_sign_condition,
    classify_cycle_diagram,
    companion_from_signs,
    companion_mutate,
    companion_mutate_entries,
    first_nonpositive_minor,
    gram_equivalent,
    is_companion,
    is_k_compatible,
    is_positive,
    quasi_cartan_from_diagram,
)
from cluster_finite.recognizer import recognize
from cluster_finite.roots import an_companion, bn_matrix, cartan_matrix

from helpers import all_principal_minors_positive, random_k_compatible, random_skew

PATH3 = SkewSymmetrizableMatrix.from_rows([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
TRIANGLE = SkewSymmetrizableMatrix.from_rows([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])


def test_quasi_cartan_validation():
    with pytest.raises(NotSymmetrizable):
        QuasiCartanMatrix.from_rows([[2, 1], [-1, 2]])
    with pytest.raises(NotSymmetrizable):
        QuasiCartanMatrix.from_rows([[1, 0], [0, 2]])
    with pytest.raises(NotSymmetrizable):
        QuasiCartanMatrix(((2, -1), (-2, 2)), Symmetrizer((1, 1)))


def test_companion_from_signs_examples():
    B = SkewSymmetrizableMatrix.from_rows([[0, 1], [-1, 0]])
    cert = companion_from_signs(B, SignAssignment({(0, 1): 1}))
    assert cert.companion.a == ((2, -1), (-1, 2))
    for n in range(1, 9):
        b = bn_matrix(n).b
        signs = SignAssignment({(i, j): -(1 if b[i][j] > 0 else -1) for i in range(n) for j in range(i + 1, n) if b[i][j]})
        assert companion_from_signs(bn_matrix(n), signs).companion == an_companion(n)
    Z = SkewSymmetrizableMatrix.from_rows([[0, 0], [0, 0]])
    assert companion_from_signs(Z, SignAssignment({})).companion.a == ((2, 0), (0, 2))


def test_companion_from_signs_domain():
    B = SkewSymmetrizableMatrix.from_rows([[0, 1], [-1, 0]])
    with pytest.raises(SignDomainMismatch):
        companion_from_signs(B, SignAssignment({}))
    with pytest.raises(SignDomainMismatch):
        companion_from_signs(B, SignAssignment({(0, 1): 1, (0, 2): 1}))


def test_positivity_examples():
    assert is_positive(an_companion(8))
    assert not is_positive(an_companion(9))
    assert first_nonpositive_minor(an_companion(9)) == (9, 0)
    assert not is_positive(QuasiCartanMatrix.from_rows([[2, -2], [-2, 2]]))


def test_positivity_matches_all_principal_minors():
    rng = random.Random(11)
    for _ in range(2000):
        B = random_skew(rng, rng.randint(1, 4), bound=3)
        A = random_k_compatible(rng, B, 0)
        assert is_positive(A) == all_principal_minors_positive(A.symmetrized)


def test_positive_matrices_obey_weight_and_triangle_bounds():
    rng = random.Random(12)
    seen = 0
    for _ in range(4000):
        B = random_skew(rng, rng.randint(2, 5), bound=3)
        A = random_k_compatible(rng, B, 0)
        if not is_positive(A):
            continue
        seen += 1
        a, n = A.a, A.n
        for i, j in itertools.permutations(range(n), 2):
            assert 0 <= a[i][j] * a[j][i] <= 3
        for i, j, k in itertools.permutations(range(n), 3):
            assert a[i][k] * a[k][j] * a[j][i] >= 0
    assert seen > 100


def test_cycle_sign_condition_examples():
    assert check_cycle_sign_condition(cartan_matrix("A", 4)).ok
    for n in range(3, 12):
        assert check_cycle_sign_condition(an_companion(n)).ok
    bad = QuasiCartanMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    res = check_cycle_sign_condition(bad)
    assert not res.ok and res.cycle.vertices == (0, 1, 2)


def test_k_compatibility_examples():
    A = QuasiCartanMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert not is_k_compatible(A, TRIANGLE, 1)
    A2 = QuasiCartanMatrix.from_rows([[2, -1, 1], [-1, 2, -1], [1, -1, 2]])
    assert is_k_compatible(A2, TRIANGLE, 1)
    # vertex 0 of the path has no 2-path through it
    assert is_k_compatible(cartan_matrix("A", 3), PATH3, 0)
    with pytest.raises(NotACompanion):
        is_k_compatible(cartan_matrix("A", 2), PATH3, 0)


def test_companion_mutate_path_to_triangle():
    A = cartan_matrix("A", 3)
    A2, t = companion_mutate(A, PATH3, 1)
    assert is_companion(A2, mutate(PATH3, 1))
    assert is_positive(A2)
    assert abs(determinant(t)) == 1
    assert gram_equivalent(A, A2, t)


def test_companion_mutate_rank_two_flips_signs():
    B = SkewSymmetrizableMatrix.from_rows([[0, 2], [-1, 0]])
    A = QuasiCartanMatrix(((2, -2), (-1, 2)), B.d)
    A2, _ = companion_mutate(A, B, 0)
    assert A2.a == ((2, 2), (1, 2))


def test_companion_mutate_requires_compatibility():
    A = QuasiCartanMatrix.from_rows([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    with pytest.raises(NotKCompatible):
        companion_mutate(A, TRIANGLE, 1)


def test_companion_mutate_randomized():
    rng = random.Random(13)
    for _ in range(500):
        n = rng.randint(2, 6)
        B = random_skew(rng, n, bound=3)
        k = rng.randrange(n)
        A = random_k_compatible(rng, B, k)
        assert is_k_compatible(A, B, k)
        A2, t = companion_mutate(A, B, k)
        B2 = mutate(B, k)
        assert A2.a == companion_mutate_entries(A, B, k)
        assert is_companion(A2, B2)
        assert is_k_compatible(A2, B2, k)
        assert gram_equivalent(A, A2, t)
        if is_positive(A):
            assert is_positive(A2)
        # Eq (3.2) sign pattern on row and column k
        for i in range(n):
            if i != k:
                assert A2.a[i][k] == (1 if B.b[i][k] > 0 else -1 if B.b[i][k] < 0 else 0) * A.a[i][k]


def test_double_companion_mutation_is_equivalent():
    rng = random.Random(14)
    for _ in range(200):
        n = rng.randint(2, 6)
        B = random_skew(rng, n, bound=3)
        k = rng.randrange(n)
        A = random_k_compatible(rng, B, k)
        A1, t1 = companion_mutate(A, B, k)
        A2, t2 = companion_mutate(A1, mutate(B, k), k)
        assert is_companion(A2, B)
        assert gram_equivalent(A, A2, matmul(t1, t2))


def test_gram_equivalent_examples():
    A = cartan_matrix("A", 3)
    assert gram_equivalent(A, A, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    flip = [[1, 0, 0], [0, -1, 0], [0, 0, 1]]
    flipped = QuasiCartanMatrix.from_rows([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
    assert gram_equivalent(A, flipped, flip)
    assert not gram_equivalent(A, flipped, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(SymmetrizerMismatch):
        gram_equivalent(cartan_matrix("B", 2), cartan_matrix("A", 2), [[1, 0], [0, 1]])


def test_finite_type_certificates_are_compatible_everywhere():
    for n in range(1, 9):
        B = bn_matrix(n)
        A = recognize(B).witness.certificate.companion
        for k in range(n):
            assert is_k_compatible(A, B, k)
            assert is_positive(companion_mutate(A, B, k)[0])


def cycle(weights, signs):
    n = len(weights)
    return Diagram(n, tuple(Edge(p, (p + 1) % n, w, sign=s) for p, (w, s) in enumerate(zip(weights, signs))))


def test_classify_cycle_examples():
    assert classify_cycle_diagram(cycle([1, 1, 1], [1, 1, -1])) == (CycleShape.TYPE_A, True)
    assert classify_cycle_diagram(cycle([2, 2, 1], [1, 1, 1])) == (CycleShape.TYPE_B, False)
    assert classify_cycle_diagram(cycle([2, 1, 2, 1], [1, 1, 1, -1])) == (CycleShape.TYPE_C, True)
    assert classify_cycle_diagram(cycle([3, 3, 1], [1, 1, -1])).shape is CycleShape.NOT_POSITIVE_SHAPE
    assert classify_cycle_diagram(cycle([2, 2, 1, 1], [1, 1, 1, -1])).shape is CycleShape.NOT_POSITIVE_SHAPE


def test_classify_cycle_rejects_non_cycles():
    with pytest.raises(MalformedCycle):
        classify_cycle_diagram(Diagram(3, (Edge(0, 1, sign=1), Edge(1, 2, sign=1))))
    with pytest.raises(MalformedCycle):
        classify_cycle_diagram(cycle([1, 1, 1], [1, 1, None]))


def test_quasi_cartan_from_diagram_realizes_weights_and_signs():
    rng = random.Random(15)
    for _ in range(300):
        B = random_skew(rng, rng.randint(1, 6), bound=3)
        g = diagram_of_skew(B)
        signed = Diagram(g.n, tuple(Edge(e.i, e.j, e.weight, sign=rng.choice((-1, 1))) for e in g.edges))
        A = quasi_cartan_from_diagram(signed)
        assert diagram_of_quasi_cartan(A) == signed
