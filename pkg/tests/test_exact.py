from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncextend.exact import (
    GR,
    EchelonSpace,
    Matrix,
    format_rational,
    inner,
    norm2,
    parse_rational,
    rank,
    rank_mod_p,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
gauss = st.builds(GR, small, small)


def test_gaussian_arithmetic():
    z = GR(1, 2)
    assert z * z.conjugate() == GR(5)
    assert z.abs2() == 5
    assert z * z.inverse() == GR(1)
    assert GR(0, 1) * GR(0, 1) == GR(-1)
    assert GR.from_json(GR(Fraction(1, 3), -2).to_json()) == GR(Fraction(1, 3), -2)


@given(gauss, gauss, gauss)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


def test_rational_text():
    assert parse_rational("5/2") == Fraction(5, 2)
    assert format_rational(Fraction(4)) == "4/1"


def test_matrix_products_match_numpy():
    A = Matrix.from_rows([[1, GR(0, 1)], [2, 3]])
    B = Matrix.from_rows([[0, 1, 2], [GR(1, 1), 0, -1]])
    assert np.allclose((A @ B).to_numpy(), A.to_numpy() @ B.to_numpy())
    assert np.allclose(A.kron(B).to_numpy(), np.kron(A.to_numpy(), B.to_numpy()))
    assert np.allclose(A.adjoint().to_numpy(), A.to_numpy().conj().T)


def test_matrix_json_roundtrip():
    A = Matrix.from_rows([[1, GR(0, Fraction(1, 2))], [0, -3]])
    assert Matrix.from_json(A.to_json()) == A
    with pytest.raises(ValueError, match="entries"):
        Matrix.from_json({"rows": 2, "cols": 2, "entries": []})


def test_scalar_identity_detection():
    assert Matrix.identity(3).scale(2).is_scalar_identity() == GR(2)
    assert Matrix.zeros(2, 2).is_scalar_identity() == GR(0)
    assert Matrix.diag([1, 2]).is_scalar_identity() is None


def test_inner_is_antilinear_in_first_argument():
    u, v = [GR(0, 1)], [GR(1)]
    assert inner(u, v) == GR(0, -1)
    assert norm2([GR(1, 1), GR(2)]) == 6


def test_rank_against_numpy():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, GR(0, 1)]]
    M = Matrix.from_rows(rows)
    assert rank(M) == np.linalg.matrix_rank(M.to_numpy()) == 2


def test_rank_mod_p():
    assert rank_mod_p([[1, 1], [1, -1]], 2) == 1
    assert rank_mod_p([[1, 1], [1, -1]], 3) == 2


def test_echelon_space_membership():
    E = EchelonSpace(3)
    assert E.add({0: GR(1), 1: GR(1)})
    assert not E.add({0: GR(2), 1: GR(2)})
    assert E.contains({0: GR(3), 1: GR(3)})
    assert not E.contains({2: GR(1)})
