"""Integer Laurent polynomials in one variable."""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    """Immutable exponent -> coefficient map with no zero terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coeff})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return isinstance(other, LaurentPolynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return LaurentPolynomial(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self._terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            raise ValueError("negative powers are only defined for monomials; use invert_variable")
        out = LaurentPolynomial({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by the monomial v**k."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def invert_variable(self) -> "LaurentPolynomial":
        """Substitute v -> 1/v."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def evaluate(self, value):
        return sum(c * value**e for e, c in self._terms.items())

    def fingerprint(self) -> str:
        """Canonical ``exponent:coeff`` string, ascending exponents."""
        return ",".join(f"{e}:{c}" for e, c in self._terms.items())

    @classmethod
    def from_fingerprint(cls, text: str) -> "LaurentPolynomial":
        text = text.strip()
        if not text:
            return cls()
        pairs = (item.split(":") for item in text.split(","))
        return cls({int(e): int(c) for e, c in pairs})

    def format(self, var: str = "t") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.format('v')})"
