from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wcpx.fields import QQ, prime_field
from wcpx.linmaps import (LinMap, NotIdempotentError, ObjectShape,
                          ShapeMismatchError, braiding, compose, equals,
                          first_difference, identity, rank, shape,
                          split_idempotent, tensor)

F5 = prime_field(5)
FIELDS = [QQ, F5]


def mk(field, src, tgt, rows):
    return LinMap.from_rows(field, shape(*src), shape(*tgt), rows)


small = st.integers(min_value=-3, max_value=3)


def rows_st(n_rows, n_cols):
    return st.lists(st.lists(small, min_size=n_cols, max_size=n_cols),
                    min_size=n_rows, max_size=n_rows)


# -- composition ------------------------------------------------------------

def test_compose_column_swap():
    f = mk(QQ, (2,), (2,), [[1, 2], [3, 4]])
    g = mk(QQ, (2,), (2,), [[0, 1], [1, 0]])
    assert (f @ g).entries == mk(QQ, (2,), (2,), [[2, 1], [4, 3]]).entries


@pytest.mark.parametrize("field", FIELDS, ids=["Q", "F5"])
def test_compose_identity_law(field):
    f = mk(field, (3,), (2,), [[1, 2, 3], [4, 5, 6]])
    assert equals(f @ identity(field, 3), f)
    assert equals(identity(field, 2) @ f, f)


def test_swap_composes_to_identity():
    assert equals(braiding(QQ, 2, 3) @ braiding(QQ, 3, 2), identity(QQ, 6))


def test_compose_shape_mismatch_names_shapes():
    f = mk(QQ, (2,), (2,), [[1, 0], [0, 1]])
    g = mk(QQ, (3,), (3,), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(ShapeMismatchError) as err:
        compose(f, g)
    assert "3" in str(err.value) and "2" in str(err.value)


@given(f=rows_st(2, 3), g=rows_st(3, 4), h=rows_st(4, 2))
def test_compose_associative(f, g, h):
    a = mk(QQ, (3,), (2,), f)
    b = mk(QQ, (4,), (3,), g)
    c = mk(QQ, (2,), (4,), h)
    assert equals((a @ b) @ c, a @ (b @ c))


# -- tensor ------------------------------------------------------------------

def test_tensor_identities():
    t = tensor(identity(QQ, 2), identity(QQ, 3))
    assert equals(t, identity(QQ, 6))
    assert t.source.factors == (2, 3)


def test_tensor_block_structure():
    swap = mk(QQ, (2,), (2,), [[0, 1], [1, 0]])
    t = tensor(identity(QQ, 2), swap)
    expected = mk(QQ, (2, 2), (2, 2),
                  [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    assert equals(t, expected)


def test_interchange_against_raw_loops():
    # direct entrywise computation of ((f (x) g) o (f' (x) g'))[r, c]
    f = mk(QQ, (2,), (2,), [[1, 2], [0, -1]])
    g = mk(QQ, (2,), (2,), [[3, 1], [1, 1]])
    fp = mk(QQ, (2,), (2,), [[-1, 1], [2, 0]])
    gp = mk(QQ, (2,), (2,), [[0, 2], [1, -2]])
    via_lib = tensor(f, g) @ tensor(fp, gp)
    for r1 in range(2):
        for r2 in range(2):
            for c1 in range(2):
                for c2 in range(2):
                    total = Fraction(0)
                    for j1 in range(2):
                        for j2 in range(2):
                            total += (f.entries[r1][j1] * g.entries[r2][j2]
                                      * fp.entries[j1][c1] * gp.entries[j2][c2])
                    assert via_lib.entries[r1 * 2 + r2][c1 * 2 + c2] == total
    assert equals(via_lib, tensor(f @ fp, g @ gp))


@pytest.mark.parametrize("field", FIELDS, ids=["Q", "F5"])
@given(data=st.data())
@settings(max_examples=30, deadline=None)
def test_interchange_property(field, data):
    f = mk(field, (2,), (2,), data.draw(rows_st(2, 2)))
    g = mk(field, (2,), (2,), data.draw(rows_st(2, 2)))
    fp = mk(field, (2,), (2,), data.draw(rows_st(2, 2)))
    gp = mk(field, (2,), (2,), data.draw(rows_st(2, 2)))
    assert equals(tensor(f, g) @ tensor(fp, gp), tensor(f @ fp, g @ gp))


# -- braiding ----------------------------------------------------------------

def test_braiding_2_2():
    c = braiding(QQ, 2, 2)
    one, zero = Fraction(1), Fraction(0)
    assert c.entries[0][0] == one and c.entries[3][3] == one
    assert c.entries[2][1] == one and c.entries[1][2] == one
    assert c.entries[1][1] == zero and c.entries[2][2] == zero


def test_braiding_with_unit_factor_is_identity():
    assert equals(braiding(QQ, 1, 4), identity(QQ, 4))
    assert equals(braiding(QQ, 4, 1), identity(QQ, 4))


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 4), (1, 5)])
def test_braiding_symmetric(m, n):
    assert equals(braiding(QQ, n, m) @ braiding(QQ, m, n), identity(QQ, m * n))


@pytest.mark.parametrize("field", FIELDS, ids=["Q", "F5"])
@given(data=st.data())
@settings(max_examples=30, deadline=None)
def test_braiding_natural(field, data):
    f = mk(field, (2,), (3,), data.draw(rows_st(3, 2)))
    g = mk(field, (3,), (2,), data.draw(rows_st(2, 3)))
    lhs = braiding(field, 3, 2) @ tensor(f, g)
    rhs = tensor(g, f) @ braiding(field, 2, 3)
    assert equals(lhs, rhs)


# -- shapes --------------------------------------------------------------------

@given(factors=st.lists(st.integers(min_value=1, max_value=5), min_size=0, max_size=4))
def test_flatten_round_trip(factors):
    sh = ObjectShape(tuple(factors))
    for flat in range(sh.total):
        assert sh.flatten(sh.unflatten(flat)) == flat


def test_unit_shape():
    k = ObjectShape(())
    assert k.total == 1
    assert k.unflatten(0) == ()


# -- equality -------------------------------------------------------------------

def test_equals_ignores_unit_factor_bookkeeping():
    assert equals(braiding(QQ, 2, 1), identity(QQ, 2))


def test_first_difference_witness():
    d1 = mk(QQ, (2,), (2,), [[1, 0], [0, 0]])
    d2 = mk(QQ, (2,), (2,), [[1, 0], [0, 1]])
    assert not equals(d1, d2)
    diff = first_difference(d1, d2)
    assert (diff.row, diff.col) == (1, 1)
    assert (diff.left, diff.right) == (Fraction(0), Fraction(1))


# -- idempotent splitting -----------------------------------------------------------

def test_split_diagonal_projector():
    e = mk(QQ, (3,), (3,), [[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    s = split_idempotent(e)
    assert s.mid.total == 2
    assert s.injection.entries == mk(QQ, (2,), (3,), [[1, 0], [0, 1], [0, 0]]).entries
    assert equals(s.projection @ s.injection, identity(QQ, 2))


@pytest.mark.parametrize("n", [1, 2, 4])
def test_split_identity(n):
    s = split_idempotent(identity(QQ, n))
    assert s.mid.total == n
    assert equals(s.injection, identity(QQ, n))
    assert equals(s.projection, identity(QQ, n))


def test_split_rank_one():
    e = mk(QQ, (2,), (2,), [[1, 1], [0, 0]])
    s = split_idempotent(e)
    assert s.mid.total == 1
    assert equals(s.injection @ s.projection, e)
    assert equals(s.projection @ s.injection, identity(QQ, 1))


def test_split_rejects_non_idempotent():
    m = mk(QQ, (2,), (2,), [[0, 1], [1, 0]])
    with pytest.raises(NotIdempotentError) as err:
        split_idempotent(m)
    assert "basis vector" in str(err.value)


def _unit_triangular_inverse(field, t):
    # inverse of a unit triangular map via the terminating nilpotent series
    n = t.source.total
    nil = t - identity(field, n)
    total = identity(field, n)
    term = identity(field, n)
    for _ in range(n - 1):
        term = (term @ nil).scale(-1)
        total = total + term
    return total


@pytest.mark.parametrize("field", FIELDS, ids=["Q", "F5"])
@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_split_random_conjugated_projector(field, data):
    n = data.draw(st.integers(min_value=1, max_value=4))
    r = data.draw(st.integers(min_value=1, max_value=n))
    lower = data.draw(rows_st(n, n))
    upper = data.draw(rows_st(n, n))
    lo = [[lower[i][j] if i > j else (1 if i == j else 0) for j in range(n)]
          for i in range(n)]
    up = [[upper[i][j] if i < j else (1 if i == j else 0) for j in range(n)]
          for i in range(n)]
    basis_change = mk(field, (n,), (n,), lo) @ mk(field, (n,), (n,), up)
    inverse = (_unit_triangular_inverse(field, mk(field, (n,), (n,), up))
               @ _unit_triangular_inverse(field, mk(field, (n,), (n,), lo)))
    diag = mk(field, (n,), (n,),
              [[1 if (i == j and i < r) else 0 for j in range(n)] for i in range(n)])
    e = basis_change @ diag @ inverse
    s = split_idempotent(e)
    assert s.mid.total == r == rank(e)
    assert equals(s.projection @ s.injection, identity(field, s.mid))
    assert equals(s.injection @ s.projection, e)
