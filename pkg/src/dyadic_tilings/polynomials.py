"""Exact polynomials with integer coefficients, one and two variables.

Small and purpose-built: univariate polynomials store ascending coefficient
tuples, bivariate ones a sparse {(deg_q, deg_z): coeff} map. Evaluation at
Fraction points is exact. Nothing here is numerical.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Mapping


class UniPoly:
    """Integer-coefficient polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[k] if k < len(b) else 0) for k, x in enumerate(a)])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for k, x in enumerate(a):
            if x:
                for l, y in enumerate(b):
                    out[k + l] += x * y
        return UniPoly(out)

    def scale(self, c: int) -> "UniPoly":
        return UniPoly([c * x for x in self.coeffs])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = f"{head}p" if k == 1 else f"{head}p^{k}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = (sign if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += sign + body
        return text


def one_minus_p_power(k: int) -> UniPoly:
    """(1-p)^k."""
    return UniPoly([comb(k, l) * (-1) ** l for l in range(k + 1)])


def from_success_counts(m: int, counts: Mapping[int, int]) -> UniPoly:
    """Sum over a of counts[a] * p^a * (1-p)^(m-a), as an expanded polynomial."""
    total = UniPoly(())
    for a, cnt in sorted(counts.items()):
        if not (0 <= a <= m):
            raise ValueError(f"success count {a} outside [0, {m}]")
        if cnt:
            term = one_minus_p_power(m - a).scale(cnt)
            total = total + UniPoly([0] * a + list(term.coeffs))
    return total


class BiPoly:
    """Integer-coefficient polynomial in (q, z), sparse by exponent pair."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int]):
        self.terms = {k: v for k, v in terms.items() if v != 0}

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls({})

    @classmethod
    def var_q(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def var_z(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict[tuple[int, int], int] = {}
        for (dq1, dz1), c1 in self.terms.items():
            for (dq2, dz2), c2 in other.terms.items():
                k = (dq1 + dq2, dz1 + dz2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly(out)

    def pow(self, e: int) -> "BiPoly":
        acc = BiPoly.const(1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def compose(self, q_sub: "BiPoly", z_sub: "BiPoly") -> "BiPoly":
        """Substitute polynomials for q and z."""
        out = BiPoly.zero()
        for (dq, dz), c in self.terms.items():
            out = out + (q_sub.pow(dq) * z_sub.pow(dz)).scale(c)
        return out

    def scale(self, c: int) -> "BiPoly":
        return BiPoly({k: c * v for k, v in self.terms.items()})

    def eval(self, q: Fraction, z: Fraction):
        acc = Fraction(0)
        for (dq, dz), c in self.terms.items():
            acc += c * q**dq * z**dz
        return acc

    def coefficient(self, dq: int, dz: int) -> int:
        return self.terms.get((dq, dz), 0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"

        def mono(dq, dz, c):
            bits = [] if abs(c) == 1 and (dq or dz) else [str(abs(c))]
            for sym, d in (("q", dq), ("z", dz)):
                if d == 1:
                    bits.append(sym)
                elif d > 1:
                    bits.append(f"{sym}^{d}")
            return "*".join(bits) if bits else str(abs(c))

        items = sorted(self.terms.items())
        out = []
        for (dq, dz), c in items:
            sign = "-" if c < 0 else ("+" if out else "")
            out.append(sign + mono(dq, dz, c))
        return "".join(out)
