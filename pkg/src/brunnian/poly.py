"""Sparse Laurent polynomials with exact integer coefficients.

``LaurentPoly`` is univariate in ``A`` (Kauffman bracket / Jones side);
``LaurentPoly2`` is bivariate in ``(v, z)`` (HOMFLY side).  Both store only
nonzero terms and are immutable and hashable.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({-e * -n: c ** -n})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert_variable(self) -> "LaurentPoly":
        """Substitute A -> A^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*A^{e}" for e, c in self.items())

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls((int(e), int(c)) for e, c in data)


class LaurentPoly2:
    """Laurent polynomial in two variables; keys are ``(v_exp, z_exp)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        acc: dict[tuple[int, int], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            if c:
                acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, v: int, z: int, coeff: int = 1) -> "LaurentPoly2":
        return cls({(v, z): coeff})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly2":
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.const(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.const(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: c * other for k, c in self._terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (v1, z1), c1 in self._terms.items():
            for (v2, z2), c2 in other._terms.items():
                k = (v1 + v2, z1 + z2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported")
        result = LaurentPoly2.const(1)
        for _ in range(n):
            result = result * self
        return result

    def substitute(self, v: LaurentPoly, z: LaurentPoly,
                   v_inv: LaurentPoly, z_inv: LaurentPoly | None = None) -> LaurentPoly:
        """Evaluate into ``LaurentPoly`` given images of v, z and their inverses.

        ``z_inv`` is only needed when negative z powers occur.
        """
        cache_v: dict[int, LaurentPoly] = {}
        cache_z: dict[int, LaurentPoly] = {}

        def vpow(k):
            if k not in cache_v:
                cache_v[k] = v ** k if k >= 0 else v_inv ** -k
            return cache_v[k]

        def zpow(k):
            if k not in cache_z:
                if k >= 0:
                    cache_z[k] = z ** k
                else:
                    if z_inv is None:
                        raise ValueError("negative z power without an inverse image")
                    cache_z[k] = z_inv ** -k
            return cache_z[k]

        out = LaurentPoly()
        for (a, b), c in self._terms.items():
            out = out + vpow(a) * zpow(b) * c
        return out

    def map_exponents(self, v_sign: int = 1, z_sign: int = 1) -> "LaurentPoly2":
        """Substitute v -> v^v_sign and z -> (+-)z by flipping signs/exponents.

        ``v_sign=-1`` sends v to v^-1; ``z_sign=-1`` sends z to -z.
        """
        out = {}
        for (a, b), c in self._terms.items():
            coeff = -c if (z_sign < 0 and b % 2) else c
            out[(a * v_sign, b)] = coeff
        return LaurentPoly2(out)

    def __repr__(self):
        return f"LaurentPoly2({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*v^{a}*z^{b}" for (a, b), c in self.items())

    def to_json(self) -> list[list[int]]:
        return [[a, b, c] for (a, b), c in self.items()]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly2":
        return cls(((int(a), int(b)), int(c)) for a, b, c in data)


A = LaurentPoly.monomial(1)
DELTA = LaurentPoly({2: -1, -2: -1})
