"""Sparse multivariate polynomials over the rationals.

Small and deliberately dumb: a dict from exponent tuples to Fractions. The
arithmetic operators accept ints and Fractions on either side, so numpy object
arrays of :class:`Poly` can be pushed through the same tensor code as arrays of
plain Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .rational import as_fraction, format_rational


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            c = as_fraction(c)
            if c != 0:
                if len(exps) != nvars:
                    raise ValueError("exponent tuple length does not match nvars")
                clean[tuple(exps)] = c
        self.terms = clean

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: as_fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def variables(cls, nvars: int) -> list["Poly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    @classmethod
    def linear(cls, coeffs: Sequence, constant=0) -> "Poly":
        n = len(coeffs)
        terms = {(0,) * n: as_fraction(constant)}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = as_fraction(c)
        return cls(n, terms)

    # arithmetic -----------------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_fraction(other)
            return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})
        other = self._lift(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.degree() > 0:
                raise TypeError("only division by constants is supported")
            other = other.constant_term()
        return self * (1 / as_fraction(other))

    def __pow__(self, k: int):
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            c = as_fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: c} if c != 0 else {})

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def linear_coefficients(self) -> list[Fraction]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self.coefficient(e))
        return out

    def homogenized_matrix(self) -> list[list[Fraction]]:
        """Symmetric ``(n+1)x(n+1)`` M with ``p(x) = [x,1]^T M [x,1]`` (degree <= 2)."""
        if self.degree() > 2:
            raise ValueError("homogenized_matrix needs degree <= 2")
        n = self.nvars
        m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        for e, c in self.terms.items():
            idx = [i for i in range(n) for _ in range(e[i])]
            if len(idx) == 2:
                i, j = idx
                if i == j:
                    m[i][i] += c
                else:
                    m[i][j] += c / 2
                    m[j][i] += c / 2
            elif len(idx) == 1:
                m[idx[0]][n] += c / 2
                m[n][idx[0]] += c / 2
            else:
                m[n][n] += c
        return m

    def __call__(self, point: Sequence) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            total += v
        return total

    def substitute(self, images: Sequence) -> "Poly":
        """Compose with ``x_i -> images[i]`` (Polys in a common ring, or scalars)."""
        target = next((p.nvars for p in images if isinstance(p, Poly)), None)
        if target is None:
            return Poly.const(0, self.evaluate(images))
        imgs = [p if isinstance(p, Poly) else Poly.const(target, p) for p in images]
        out = Poly(target)
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for p, k in zip(imgs, e):
                if k:
                    term = term * p**k
            out = out + term
        return out

    def substitute_affine(self, base: Sequence, directions: Sequence[Sequence]) -> "Poly":
        """Pull back along ``t -> base + sum_j t_j * directions[j]``."""
        d = len(directions)
        ts = Poly.variables(d)
        images = []
        for i, b in enumerate(base):
            img = Poly.const(d, b)
            for j in range(d):
                if directions[j][i] != 0:
                    img = img + ts[j] * directions[j][i]
            images.append(img)
        return self.substitute(images)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(names) if names is not None else [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), [-k for k in e])):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                pieces.append(format_rational(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{format_rational(c)}*{mono}")
        s = " + ".join(pieces)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_string()})"


def poly_from_string(text: str, names: Sequence[str]) -> Poly:
    """Parse a small polynomial like ``"x^2 + y^2 - 4"`` or ``"1/2*x*y - z"``."""
    n = len(names)
    index = {nm: i for i, nm in enumerate(names)}
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    out = Poly(n)
    i = 0
    while i < len(s):
        sign = -1 if s[i] == "-" else 1
        j = i + 1
        while j < len(s) and s[j] not in "+-":
            j += 1
        term = s[i + 1 : j]
        if not term:
            raise ValueError(f"malformed polynomial: {text!r}")
        coeff = Fraction(sign)
        exps = [0] * n
        for factor in term.split("*"):
            base, _, power = factor.partition("^")
            k = int(power) if power else 1
            if base in index:
                exps[index[base]] += k
            else:
                coeff *= as_fraction(base) ** k
        out = out + Poly(n, {tuple(exps): coeff})
        i = j
    return out


# univariate helpers: coefficient lists, lowest degree first ---------------

def upoly_trim(p: Sequence[Fraction]) -> list[Fraction]:
    p = [as_fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_divmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    a, b = upoly_trim(a), upoly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            r[i + k] -= f * c
        r = upoly_trim(r)
    return upoly_trim(q), r


def upoly_gcd(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic gcd (the zero list when both inputs vanish)."""
    a, b = upoly_trim(a), upoly_trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def upoly_derivative(p: Sequence) -> list[Fraction]:
    p = upoly_trim(p)
    return upoly_trim([i * c for i, c in enumerate(p)][1:])


def upoly_eval(p: Sequence, x) -> Fraction:
    x = as_fraction(x)
    acc = Fraction(0)
    for c in reversed(upoly_trim(p)):
        acc = acc * x + c
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def rational_sqrt(x: Fraction) -> Fraction | None:
    x = as_fraction(x)
    p, q = _isqrt_exact(x.numerator), _isqrt_exact(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def rational_roots(p: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Distinct rational roots of ``p`` and the cofactor left after removing them.

    Degree <= 2 factors are handled with the discriminant; higher degrees fall
    back to the rational root theorem on the integer-scaled polynomial.
    """
    p = upoly_trim(p)
    if not p:
        raise ValueError("the zero polynomial has every number as a root")
    roots: list[Fraction] = []
    rest = p
    # strip the root 0 first
    while len(rest) > 1 and rest[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        rest = rest[1:]

    def peel(r: Fraction) -> None:
        nonlocal rest
        while len(rest) > 1 and upoly_eval(rest, r) == 0:
            rest = upoly_divmod(rest, [-r, Fraction(1)])[0]
        if r not in roots:
            roots.append(r)

    if len(rest) - 1 > 2:
        from math import lcm

        den = lcm(*(c.denominator for c in rest))
        ints = [int(c * den) for c in rest]
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                for s in (1, -1):
                    cand = Fraction(s * a, b)
                    if len(rest) > 1 and upoly_eval(rest, cand) == 0:
                        peel(cand)
                if len(rest) - 1 <= 2:
                    break
            if len(rest) - 1 <= 2:
                break
    if len(rest) - 1 == 1:
        peel(-rest[0] / rest[1])
    elif len(rest) - 1 == 2:
        c0, c1, c2 = rest
        s = rational_sqrt(c1 * c1 - 4 * c0 * c2)
        if s is not None:
            for r in ((-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2)):
                peel(r)
    return sorted(roots), rest


def poly_as_univariate(p: Poly, var: int) -> list[Poly]:
    """Coefficients of ``p`` as a polynomial in ``x_var`` (Polys in the same ring)."""
    deg = p.degree_in(var)
    coeffs = [Poly(p.nvars) for _ in range(max(deg + 1, 0))]
    for e, c in p.terms.items():
        e2 = list(e)
        k = e2[var]
        e2[var] = 0
        coeffs[k] = coeffs[k] + Poly(p.nvars, {tuple(e2): c})
    return coeffs


def _det_generic(m: list[list]):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if isinstance(m[0][j], Poly) and m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det_generic(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def resultant(f: Poly, g: Poly, var: int) -> Poly:
    """Sylvester resultant eliminating ``x_var``."""
    a = poly_as_univariate(f, var)[::-1]
    b = poly_as_univariate(g, var)[::-1]
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return Poly(f.nvars)
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    zero = Poly(f.nvars)
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (n - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (m - 1 - i))
    out = _det_generic(rows)
    return out if isinstance(out, Poly) else Poly.const(f.nvars, out)


def monomials(nvars: int, max_degree: int) -> Iterable[tuple[int, ...]]:
    for e in product(range(max_degree + 1), repeat=nvars):
        if sum(e) <= max_degree:
            yield e
