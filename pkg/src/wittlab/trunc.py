"""Sparse arithmetic in the truncated polynomial ring A(n) = F_p[x]/(x_i^p).

A polynomial is a mapping from exponent vectors (tuples of length n with
entries in [0, p-1]) to nonzero scalars in F_p.  Multiplication drops any
product monomial in which some exponent reaches p; that is the whole content
of the quotient.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Tuple

from .params import Params

Exponent = Tuple[int, ...]


class TruncPoly:
    """Element of A(n), stored as {exponent tuple: coefficient mod p}.

    Canonical form: no zero coefficients, all coefficients reduced to
    [1, p-1].  Two equal polynomials compare equal and hash equal.
    """

    __slots__ = ("params", "terms", "_hash")

    def __init__(self, params: Params, terms: Dict[Exponent, int] | None = None):
        self.params = params
        clean: Dict[Exponent, int] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                params.check_exponents(exp)
                c %= params.p
                if c:
                    clean[exp] = c
        self.terms = clean
        self._hash = None

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, params: Params) -> "TruncPoly":
        return cls(params)

    @classmethod
    def constant(cls, params: Params, c: int) -> "TruncPoly":
        return cls(params, {(0,) * params.n: c})

    @classmethod
    def one(cls, params: Params) -> "TruncPoly":
        return cls.constant(params, 1)

    @classmethod
    def variable(cls, params: Params, i: int) -> "TruncPoly":
        """x_i, 0-based index."""
        if not (0 <= i < params.n):
            raise ValueError(f"variable index {i} outside [0, {params.n - 1}]")
        exp = tuple(1 if k == i else 0 for k in range(params.n))
        return cls(params, {exp: 1})

    @classmethod
    def monomial(cls, params: Params, exp: Iterable[int], c: int = 1) -> "TruncPoly":
        return cls(params, {tuple(exp): c})

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self.params.same(other.params)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) + c
        return TruncPoly(self.params, out)

    def __sub__(self, other: "TruncPoly") -> "TruncPoly":
        self.params.same(other.params)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) - c
        return TruncPoly(self.params, out)

    def __neg__(self) -> "TruncPoly":
        return TruncPoly(self.params, {e: -c for e, c in self.terms.items()})

    def scale(self, c: int) -> "TruncPoly":
        return TruncPoly(self.params, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        """Product in A(n); terms hitting an exponent >= p vanish."""
        self.params.same(other.params)
        p, n = self.params.p, self.params.n
        out: Dict[Exponent, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                prod = tuple(ea[k] + eb[k] for k in range(n))
                if any(e >= p for e in prod):
                    continue
                out[prod] = out.get(prod, 0) + ca * cb
        return TruncPoly(self.params, out)

    def power(self, k: int) -> "TruncPoly":
        if k < 0:
            raise ValueError("negative power")
        acc = TruncPoly.one(self.params)
        for _ in range(k):
            acc = acc * self
            if not acc.terms:
                break
        return acc

    def diff(self, i: int) -> "TruncPoly":
        """Partial derivative by x_i (0-based)."""
        out: Dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            down = list(exp)
            down[i] -= 1
            out[tuple(down)] = out.get(tuple(down), 0) + c * exp[i]
        return TruncPoly(self.params, out)

    # ------------------------------------------------------------------
    # substitution

    def substitute(self, images: "list[TruncPoly]") -> "TruncPoly":
        """Evaluate self at x_i = images[i], truncating products as usual.

        This is the workhorse behind algebra endomorphisms of A(n); images
        need not have zero constant term here, the caller enforces that
        where it matters.
        """
        if len(images) != self.params.n:
            raise ValueError("need one image per variable")
        for im in images:
            self.params.same(im.params)
        # memoize small powers of each image
        pows: list[list[TruncPoly]] = [[TruncPoly.one(self.params)] for _ in images]
        out = TruncPoly.zero(self.params)
        for exp, c in self.terms.items():
            term = TruncPoly.constant(self.params, c)
            for i, e in enumerate(exp):
                while len(pows[i]) <= e:
                    pows[i].append(pows[i][-1] * images[i])
                term = term * pows[i][e]
            out = out + term
        return out

    def shift(self, offsets: Tuple[int, ...]) -> "TruncPoly":
        """Formal substitution x_i -> x_i + offsets[i].

        Degrees can only drop, so no truncation ever triggers; this is a
        plain linear change of basis on the monomial span, used for the
        torus-adapted coordinates z_i = 1 + x_i and their inverse.
        """
        from math import comb

        p, n = self.params.p, self.params.n
        out: Dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            # expand prod_i (x_i + t_i)^{e_i} by binomials
            partial: Dict[Exponent, int] = {(0,) * n: c}
            for i, e in enumerate(exp):
                t = offsets[i] % p
                nxt: Dict[Exponent, int] = {}
                for base, cb in partial.items():
                    if t == 0:
                        up = list(base)
                        up[i] += e
                        key = tuple(up)
                        nxt[key] = (nxt.get(key, 0) + cb) % p
                        continue
                    tp = 1
                    for j in range(e, -1, -1):
                        # coefficient of x_i^j: C(e, j) t^(e-j)
                        up = list(base)
                        up[i] += j
                        key = tuple(up)
                        nxt[key] = (nxt.get(key, 0) + cb * comb(e, j) * tp) % p
                        tp = (tp * t) % p
                partial = nxt
            for key, cb in partial.items():
                out[key] = out.get(key, 0) + cb
        return TruncPoly(self.params, out)

    # ------------------------------------------------------------------
    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.params.n, 0)

    def degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def homogeneous_part(self, d: int) -> "TruncPoly":
        return TruncPoly(self.params, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exp: Iterable[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def sorted_terms(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(sorted(self.terms.items()))

    # ------------------------------------------------------------------
    # dunder plumbing

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncPoly)
            and self.params == other.params
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"TruncPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exp, c in self.sorted_terms():
            vars_part = "".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp)
                if e
            )
            if not vars_part:
                bits.append(str(c))
            elif c == 1:
                bits.append(vars_part)
            else:
                bits.append(f"{c}{vars_part}")
        return " + ".join(bits)

    # ------------------------------------------------------------------
    # serialization

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"exp": list(exp), "coef": c} for exp, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json_dict(cls, params: Params, data: dict) -> "TruncPoly":
        terms: Dict[Exponent, int] = {}
        for t in data.get("terms", []):
            exp = tuple(t["exp"])
            terms[exp] = terms.get(exp, 0) + t["coef"]
        return cls(params, terms)


def poly_mul(f: TruncPoly, g: TruncPoly) -> TruncPoly:
    """Free-function alias for the A(n) product."""
    return f * g
