"""Arithmetic for the index-2 extension pair GF(q) < GF(q^2), q = p^h.

The big field GF(p^(2h)) is built once as GF(p)[t]/(modulus) and the
subfield GF(q) is realized as the fixed points of the half Frobenius
x -> x^q.  Elements are identified with their integer encoding
enc(x) = sum c_i p^i over the polynomial basis 1, t, ..., t^(k-1), which
gives a total order and a compact wire format.  All operations are
backed by dense numpy tables so bulk enumeration can run on integer
arrays (see trichar._kernels).

Canonical modulus: the monic irreducible polynomial of degree k whose
non-leading coefficient tuple (c_0, ..., c_{k-1}) has the smallest
integer encoding sum c_i p^i.  For GF(9) this is t^2+1, for GF(25) it is
t^2+2 (t^2+1 splits), for GF(16) it is t^4+t+1.

The basis pair (1, eps) used to split GF(q^2) over GF(q):

* q odd:  eps^q = -eps with eps outside GF(q);
* q even: eps^2 + eps + nu = 0 for some nu in GF(q) \ {1} of absolute
  trace 1, which forces eps^q = eps + 1.  No such nu exists for q = 2,
  so that tower is constructed but flagged eps-basis-unavailable.

Both eps and nu are the candidates of smallest integer encoding.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EpsBasisUnavailable, InvalidParameter


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Polynomials over GF(p): coefficient tuples, constant term first.
# ---------------------------------------------------------------------------

def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num mod den (den monic), coefficients mod p."""
    num = list(num)
    dd = len(den) - 1
    while len(num) - 1 >= dd:
        if num[-1] == 0:
            num.pop()
            continue
        lead = num[-1]
        off = len(num) - 1 - dd
        for i in range(dd + 1):
            num[off + i] = (num[off + i] - lead * den[i]) % p
        num.pop()
    return num


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= k/2."""
    k = len(modulus) - 1
    if k == 1:
        return True
    if modulus[0] == 0:
        return False
    for deg in range(1, k // 2 + 1):
        for encv in range(p ** deg):
            coeffs = []
            e = encv
            for _ in range(deg):
                coeffs.append(e % p)
                e //= p
            den = coeffs + [1]
            if not any(_poly_rem(modulus, den, p)):
                return False
    return True


def _canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    for encv in range(p ** k):
        coeffs = []
        e = encv
        for _ in range(k):
            coeffs.append(e % p)
            e //= p
        cand = tuple(coeffs) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise InvalidParameter(f"no irreducible monic polynomial of degree {k} over GF({p})")


@dataclass(frozen=True)
class FieldDescriptor:
    """A concrete model of GF(p^k): prime, degree and defining modulus."""

    p: int
    k: int
    modulus: tuple[int, ...]  # k+1 coefficients, constant term first, monic

    @property
    def order(self) -> int:
        return self.p ** self.k

    def spec_string(self) -> str:
        return f"{self.p}^{self.k}/" + ",".join(str(c) for c in self.modulus)

    @classmethod
    def parse(cls, text: str) -> "FieldDescriptor":
        """Parse 'p^k/c0,c1,...,ck' (e.g. '3^2/1,0,1')."""
        try:
            head, tail = text.split("/")
            p_s, k_s = head.split("^")
            p, k = int(p_s), int(k_s)
            modulus = tuple(int(c) for c in tail.split(","))
        except ValueError as exc:
            raise InvalidParameter(f"bad field spec {text!r}") from exc
        return cls(p, k, modulus)


class Element:
    """A field element, identified by its integer encoding in a tower.

    Arithmetic via the usual operators; operands must come from the same
    tower.  Division and inversion by zero raise ZeroDivisionError.
    """

    __slots__ = ("tower", "enc")

    def __init__(self, tower: "FieldTower", enc: int):
        if not 0 <= enc < tower.order:
            raise InvalidParameter(f"encoding {enc} out of range for {tower}")
        self.tower = tower
        self.enc = int(enc)

    @property
    def coeffs(self) -> tuple[int, ...]:
        p, k = self.tower.p, self.tower.k
        e, out = self.enc, []
        for _ in range(k):
            out.append(e % p)
            e //= p
        return tuple(out)

    def _peer(self, other: "Element") -> int:
        if not isinstance(other, Element):
            raise TypeError(f"cannot combine Element with {type(other).__name__}")
        if other.tower is not self.tower:
            raise InvalidParameter("operands live in different towers")
        return other.enc

    def __add__(self, other):
        return Element(self.tower, int(self.tower.add_table[self.enc, self._peer(other)]))

    def __sub__(self, other):
        o = self._peer(other)
        return Element(self.tower, int(self.tower.add_table[self.enc, self.tower.neg_table[o]]))

    def __mul__(self, other):
        return Element(self.tower, int(self.tower.mul_table[self.enc, self._peer(other)]))

    def __truediv__(self, other):
        o = self._peer(other)
        if o == 0:
            raise ZeroDivisionError("division by zero field element")
        return Element(self.tower, int(self.tower.mul_table[self.enc, self.tower.inv_table[o]]))

    def __neg__(self):
        return Element(self.tower, int(self.tower.neg_table[self.enc]))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise InvalidParameter("exponent must be a non-negative integer")
        return Element(self.tower, self.tower.pow_enc(self.enc, exponent))

    def inverse(self) -> "Element":
        if self.enc == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Element(self.tower, int(self.tower.inv_table[self.enc]))

    def frobenius(self) -> "Element":
        """x -> x^q, the involution fixing exactly the subfield."""
        return Element(self.tower, int(self.tower.frob_table[self.enc]))

    def norm(self) -> "Element":
        """x * x^q, always a subfield element."""
        return Element(self.tower, self.tower.norm_enc(self.enc))

    def rtrace(self) -> "Element":
        """x + x^q, always a subfield element."""
        return Element(self.tower, self.tower.rtrace_enc(self.enc))

    def in_subfield(self) -> bool:
        return int(self.tower.frob_table[self.enc]) == self.enc

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and other.tower is self.tower
            and other.enc == self.enc
        )

    def __hash__(self):
        return hash((id(self.tower), self.enc))

    def __int__(self):
        return self.enc

    def __repr__(self):
        return f"Element({self.enc} in GF({self.tower.order}))"


class FieldTower:
    """The pair GF(q) < GF(q^2) with dense operation tables.

    Public table attributes (all numpy int16):

    ``add_table``, ``mul_table``  -- (Q, Q) with Q = q^2
    ``neg_table``, ``inv_table``, ``frob_table`` -- (Q,)
    ``sub_index``                 -- (Q,) enc -> index in ``subfield`` or -1
    ``sadd_table``, ``smul_table``-- (q, q) over subfield indices
    ``sneg_table``, ``sinv_table``-- (q,)  over subfield indices
    ``dec0_table``, ``dec1_table``-- (Q,) component encodings of x = x0 + eps*x1

    ``inv_table[0]`` is 0 by convention and must never be used.
    """

    def __init__(self, p: int, h: int, modulus_override: Iterable[int] | None = None):
        if not _is_prime(p):
            raise InvalidParameter(f"p = {p} is not prime")
        if h < 1:
            raise InvalidParameter(f"subfield degree h = {h} must be >= 1")
        k = 2 * h
        if modulus_override is not None:
            modulus = tuple(int(c) % p for c in modulus_override)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise InvalidParameter(f"override modulus must be monic of degree {k}")
            if not _is_irreducible(modulus, p):
                raise InvalidParameter("override modulus is reducible")
        else:
            modulus = _canonical_modulus(p, k)

        self.p = p
        self.h = h
        self.k = k
        self.q = p ** h
        self.order = p ** k
        self.descriptor = FieldDescriptor(p, k, modulus)

        self._build_tables(modulus)
        self._locate_subfield()
        self._choose_basis()

    # -- construction ------------------------------------------------------

    def _build_tables(self, modulus: tuple[int, ...]) -> None:
        p, k, Q = self.p, self.k, self.order

        # Reductions of t^j for j = k .. 2k-2.
        red = {}
        tk = [(-m) % p for m in modulus[:k]]
        red[k] = tk
        for j in range(k + 1, 2 * k - 1):
            prev = red[j - 1]
            shifted = [0] + prev[: k - 1]
            red[j] = [(shifted[i] + prev[k - 1] * tk[i]) % p for i in range(k)]

        def dec(e: int) -> list[int]:
            out = []
            for _ in range(k):
                out.append(e % p)
                e //= p
            return out

        def enc(c: Sequence[int]) -> int:
            e = 0
            for ci in reversed(c):
                e = e * p + ci
            return e

        coeffs = [dec(x) for x in range(Q)]
        add = np.zeros((Q, Q), dtype=np.int16)
        mul = np.zeros((Q, Q), dtype=np.int16)
        for x in range(Q):
            cx = coeffs[x]
            for y in range(x, Q):
                cy = coeffs[y]
                s = enc([(a + b) % p for a, b in zip(cx, cy)])
                add[x, y] = s
                add[y, x] = s
                prod = [0] * (2 * k - 1)
                for i, ai in enumerate(cx):
                    if ai:
                        for j, bj in enumerate(cy):
                            if bj:
                                prod[i + j] = (prod[i + j] + ai * bj) % p
                res = prod[:k]
                for j in range(k, 2 * k - 1):
                    if prod[j]:
                        rj = red[j]
                        for i in range(k):
                            res[i] = (res[i] + prod[j] * rj[i]) % p
                m = enc(res)
                mul[x, y] = m
                mul[y, x] = m
        self.add_table = add
        self.mul_table = mul
        self.neg_table = np.array(
            [enc([(-c) % p for c in coeffs[x]]) for x in range(Q)], dtype=np.int16
        )
        inv = np.zeros(Q, dtype=np.int16)
        for x in range(1, Q):
            inv[x] = self.pow_enc(x, Q - 2)
        self.inv_table = inv
        self.frob_table = np.array(
            [self.pow_enc(x, self.q) for x in range(Q)], dtype=np.int16
        )

    def _locate_subfield(self) -> None:
        Q, q = self.order, self.q
        fixed = [x for x in range(Q) if int(self.frob_table[x]) == x]
        if len(fixed) != q:
            raise InvalidParameter(
                f"subfield of GF({Q}) has {len(fixed)} fixed points, expected {q}"
            )
        self.subfield = tuple(fixed)
        sub_index = np.full(Q, -1, dtype=np.int16)
        for i, e in enumerate(fixed):
            sub_index[e] = i
        self.sub_index = sub_index

        sadd = np.zeros((q, q), dtype=np.int16)
        smul = np.zeros((q, q), dtype=np.int16)
        for i, x in enumerate(fixed):
            for j, y in enumerate(fixed):
                sadd[i, j] = sub_index[self.add_table[x, y]]
                smul[i, j] = sub_index[self.mul_table[x, y]]
        self.sadd_table = sadd
        self.smul_table = smul
        self.sneg_table = np.array(
            [sub_index[self.neg_table[x]] for x in fixed], dtype=np.int16
        )
        self.sinv_table = np.array(
            [sub_index[self.inv_table[x]] if x else 0 for x in fixed], dtype=np.int16
        )

        # Absolute trace GF(q) -> GF(p): sum of x^(p^i) for i < h.
        at = []
        for x in fixed:
            acc, z = 0, x
            for _ in range(self.h):
                acc = int(self.add_table[acc, z])
                z = self.pow_enc(z, self.p)
            if acc >= self.p:
                raise InvalidParameter("absolute trace left the prime field")
            at.append(acc)
        self._abs_trace = tuple(at)

    def _choose_basis(self) -> None:
        Q = self.order
        self.eps: int | None = None
        self.nu: int | None = None
        if self.p != 2:
            for e in range(Q):
                if int(self.sub_index[e]) >= 0:
                    continue
                if int(self.frob_table[e]) == int(self.neg_table[e]):
                    self.eps = e
                    break
        else:
            for e in range(Q):
                if int(self.sub_index[e]) >= 0:
                    continue
                nu = int(self.add_table[self.mul_table[e, e], e])  # e^2 + e
                i = int(self.sub_index[nu])
                if i < 0 or nu == 1:
                    continue
                if self._abs_trace[i] == 1:
                    self.eps = e
                    self.nu = nu
                    break
        self.eps_basis = self.eps is not None

        Qn = self.order
        dec0 = np.zeros(Qn, dtype=np.int16)
        dec1 = np.zeros(Qn, dtype=np.int16)
        if self.eps_basis:
            eps = self.eps
            d = int(self.add_table[self.frob_table[eps], self.neg_table[eps]])  # eps^q - eps
            d_inv = int(self.inv_table[d])
            for x in range(Qn):
                x1 = int(
                    self.mul_table[
                        self.add_table[self.frob_table[x], self.neg_table[x]], d_inv
                    ]
                )
                x0 = int(self.add_table[x, self.neg_table[self.mul_table[eps, x1]]])
                if int(self.sub_index[x0]) < 0 or int(self.sub_index[x1]) < 0:
                    raise InvalidParameter("eps-basis decomposition left the subfield")
                dec0[x] = x0
                dec1[x] = x1
        self.dec0_table = dec0
        self.dec1_table = dec1

    # -- integer-encoding arithmetic helpers --------------------------------

    def pow_enc(self, x: int, e: int) -> int:
        """x^e by repeated squaring on encodings; 0^0 = 1."""
        r, b = 1, x
        while e:
            if e & 1:
                r = int(self.mul_table[r, b])
            b = int(self.mul_table[b, b])
            e >>= 1
        return r

    def norm_enc(self, x: int) -> int:
        return int(self.mul_table[x, self.frob_table[x]])

    def rtrace_enc(self, x: int) -> int:
        return int(self.add_table[x, self.frob_table[x]])

    # -- public API ----------------------------------------------------------

    def element(self, enc: int) -> Element:
        return Element(self, enc)

    def from_coeffs(self, coeffs: Sequence[int]) -> Element:
        e = 0
        for c in reversed([c % self.p for c in coeffs]):
            e = e * self.p + c
        return Element(self, e)

    def elements(self) -> Iterable[Element]:
        return (Element(self, x) for x in range(self.order))

    def subfield_elements(self) -> Iterable[Element]:
        return (Element(self, x) for x in self.subfield)

    def absolute_trace(self, x: Element | int) -> int:
        """Absolute trace GF(q) -> GF(p) of a subfield element, as 0..p-1."""
        e = x.enc if isinstance(x, Element) else int(x)
        i = int(self.sub_index[e])
        if i < 0:
            raise InvalidParameter(f"encoding {e} is not in the subfield")
        return self._abs_trace[i]

    def is_square_in_subfield(self, x: Element | int) -> bool:
        """True iff x = y^2 for some y in GF(q); q must be odd."""
        if self.p == 2:
            raise InvalidParameter("squareness test is only meaningful for odd q")
        e = x.enc if isinstance(x, Element) else int(x)
        if int(self.sub_index[e]) < 0:
            raise InvalidParameter(f"encoding {e} is not in the subfield")
        return e == 0 or self.pow_enc(e, (self.q - 1) // 2) == 1

    def decompose(self, x: Element | int) -> tuple[int, int]:
        """Split x = x0 + eps*x1; returns the two subfield encodings."""
        if not self.eps_basis:
            raise EpsBasisUnavailable(f"{self} has no (1, eps) basis")
        e = x.enc if isinstance(x, Element) else int(x)
        return int(self.dec0_table[e]), int(self.dec1_table[e])

    def recompose(self, x0: int, x1: int) -> int:
        if not self.eps_basis:
            raise EpsBasisUnavailable(f"{self} has no (1, eps) basis")
        return int(self.add_table[x0, self.mul_table[self.eps, x1]])

    def prime_scalar(self, n: int) -> int:
        """The image of the integer n in the prime field, as an encoding."""
        return n % self.p

    def dump_tables(self) -> str:
        """Addition and multiplication tables as CSV (op,x,y,result rows)."""
        lines = [f"# field {self.descriptor.spec_string()}"]
        lines.append("op,x,y,result")
        for x in range(self.order):
            for y in range(self.order):
                lines.append(f"add,{x},{y},{int(self.add_table[x, y])}")
        for x in range(self.order):
            for y in range(self.order):
                lines.append(f"mul,{x},{y},{int(self.mul_table[x, y])}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        flag = "" if self.eps_basis else ", eps-basis-unavailable"
        return f"FieldTower(GF({self.q}) < GF({self.order}){flag})"


def make_tower(p: int, h: int, modulus_override: Iterable[int] | None = None) -> FieldTower:
    """Construct the canonical tower GF(p^h) < GF(p^(2h))."""
    return FieldTower(p, h, modulus_override)


def tower_for_q(q: int) -> FieldTower:
    """Construct the canonical tower from the subfield order q = p^h."""
    if q < 2:
        raise InvalidParameter(f"q = {q} is not a prime power")
    for p in range(2, q + 1):
        if not _is_prime(p):
            continue
        if q % p == 0:
            h = 0
            m = q
            while m > 1:
                if m % p:
                    raise InvalidParameter(f"q = {q} is not a prime power")
                m //= p
                h += 1
            return make_tower(p, h)
    raise InvalidParameter(f"q = {q} is not a prime power")
