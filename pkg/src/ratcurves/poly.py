"""Dense homogeneous polynomials in two variables ``s, t``.

A form of degree ``d`` is stored as ``d + 1`` coefficients where ``coeffs[i]``
multiplies ``s**(d - i) * t**i``.  Read as a sequence, the coefficients are
also the coefficients of the dehomogenization ``p(1, x)`` in increasing powers
of ``x = t/s``; products, exact division and gcds all go through that view.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BothZero, DegreeMismatch, ParseError, PreconditionError, SingularMatrix, UnsupportedField
from .field import FieldCtx


@dataclass(frozen=True)
class HomPoly:
    degree: int
    coeffs: tuple
    field: FieldCtx

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeMismatch(f"negative degree {self.degree}")
        if len(self.coeffs) != self.degree + 1:
            raise DegreeMismatch(
                f"degree {self.degree} needs {self.degree + 1} coefficients, got {len(self.coeffs)}")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs, field: FieldCtx) -> HomPoly:
        coeffs = tuple(field(c) for c in coeffs)
        return cls(len(coeffs) - 1, coeffs, field)

    @classmethod
    def zero(cls, degree: int, field: FieldCtx) -> HomPoly:
        return cls(degree, (field.zero,) * (degree + 1), field)

    @classmethod
    def constant(cls, c, field: FieldCtx) -> HomPoly:
        return cls(0, (field(c),), field)

    @classmethod
    def monomial(cls, s_exp: int, t_exp: int, field: FieldCtx, coeff=1) -> HomPoly:
        """``coeff * s**s_exp * t**t_exp``."""
        d = s_exp + t_exp
        coeffs = [field.zero] * (d + 1)
        coeffs[t_exp] = field(coeff)
        return cls(d, tuple(coeffs), field)

    # -- queries --------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coeff(self, s_exp: int, t_exp: int):
        """Coefficient of ``s**s_exp * t**t_exp``."""
        if s_exp + t_exp != self.degree or min(s_exp, t_exp) < 0:
            return self.field.zero
        return self.coeffs[t_exp]

    def t_valuation(self) -> int:
        """Largest ``v`` with ``t**v`` dividing ``self`` (``degree + 1`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.degree + 1

    def s_valuation(self) -> int:
        for i, c in enumerate(reversed(self.coeffs)):
            if c != 0:
                return i
        return self.degree + 1

    def evaluate(self, s, t):
        F = self.field
        s, t = F(s), F(t)
        total = F.zero
        for i, c in enumerate(self.coeffs):
            if c != 0:
                total = F.add(total, F.mul(c, F.mul(_pow(F, s, self.degree - i), _pow(F, t, i))))
        return total

    # -- arithmetic sugar -----------------------------------------------------

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            return poly_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self):
        F = self.field
        return HomPoly(self.degree, tuple(F.neg(c) for c in self.coeffs), F)

    def scale(self, c) -> HomPoly:
        F = self.field
        c = F(c)
        return HomPoly(self.degree, tuple(F.mul(c, a) for a in self.coeffs), F)

    def monic(self) -> HomPoly:
        """Scale so the first nonzero coefficient is one."""
        for c in self.coeffs:
            if c != 0:
                return self.scale(self.field.inv(c))
        return self

    def __str__(self):
        F = self.field
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("s", self.degree - i), ("t", i)) if e)
            coeff = F.to_str(c)
            if not mono:
                terms.append(coeff)
            elif coeff == "1":
                terms.append(mono)
            else:
                terms.append(f"{coeff}*{mono}")
        return " + ".join(terms) if terms else "0"

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {"degree": self.degree, "coeffs": [self.field.to_str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data, field: FieldCtx, where: str = "poly") -> HomPoly:
        if not isinstance(data, dict):
            raise ParseError(f"{where}: expected an object")
        for key in ("degree", "coeffs"):
            if key not in data:
                raise ParseError(f"{where}.{key}: missing")
        degree, coeffs = data["degree"], data["coeffs"]
        if not isinstance(degree, int) or degree < 0:
            raise ParseError(f"{where}.degree: expected a nonnegative integer")
        if not isinstance(coeffs, list) or len(coeffs) != degree + 1:
            raise ParseError(f"{where}.coeffs: expected a list of {degree + 1} entries")
        values = []
        for i, c in enumerate(coeffs):
            if isinstance(c, bool) or not isinstance(c, (str, int)):
                raise ParseError(f"{where}.coeffs[{i}]: expected a decimal string")
            try:
                values.append(field.parse(str(c)))
            except ParseError as exc:
                raise ParseError(f"{where}.coeffs[{i}]: {exc}") from exc
        return cls(degree, tuple(values), field)


def _pow(F, a, k):
    r = F.one
    for _ in range(k):
        r = F.mul(r, a)
    return r


def _check_same_field(a: HomPoly, b: HomPoly):
    if a.field != b.field:
        raise UnsupportedField(f"polynomials over different fields: {a.field} and {b.field}")


def poly_add(a: HomPoly, b: HomPoly) -> HomPoly:
    _check_same_field(a, b)
    if a.degree != b.degree:
        raise DegreeMismatch(f"cannot add forms of degree {a.degree} and {b.degree}")
    F = a.field
    return HomPoly(a.degree, tuple(F.add(x, y) for x, y in zip(a.coeffs, b.coeffs)), F)


def poly_mul(a: HomPoly, b: HomPoly) -> HomPoly:
    _check_same_field(a, b)
    F = a.field
    out = _convolve(a.coeffs, b.coeffs, F)
    return HomPoly(a.degree + b.degree, tuple(out), F)


def _convolve(u, v, F):
    out = [F.zero] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x == 0:
            continue
        for j, y in enumerate(v):
            if y != 0:
                out[i + j] = out[i + j] + x * y
    if F.is_prime:
        p = F.modulus
        out = [c % p for c in out]
    return out


def partial(p: HomPoly, var: str) -> HomPoly:
    """Formal partial derivative with respect to ``"s"`` or ``"t"``."""
    if p.degree == 0:
        raise DegreeMismatch("partial derivative of a constant form")
    F, d = p.field, p.degree
    if var == "s":
        coeffs = tuple(F.mul(F(d - i), p.coeffs[i]) for i in range(d))
    elif var == "t":
        coeffs = tuple(F.mul(F(i), p.coeffs[i]) for i in range(1, d + 1))
    else:
        raise PreconditionError(f"var must be 's' or 't', got {var!r}")
    return HomPoly(d - 1, coeffs, F)


# -- univariate helpers (coefficient lists, increasing powers) -----------------

def _trim(u):
    u = list(u)
    while u and u[-1] == 0:
        u.pop()
    return u


def _divmod_uni(a, b, F):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lead_inv = F.inv(b[-1])
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = F.mul(r[k + len(b) - 1], lead_inv)
        q[k] = c
        if c != 0:
            for j, y in enumerate(b):
                r[k + j] = F.sub(r[k + j], F.mul(c, y))
    return q, _trim(r[:len(b) - 1])


def _gcd_uni(a, b, F):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod_uni(a, b, F)
        a, b = b, r
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(inv, c) for c in a]
    return a


def hom_gcd(a: HomPoly, b: HomPoly) -> HomPoly:
    """Monic greatest common divisor of two forms.

    The common power of ``s`` is split off first; the remaining factor is the
    gcd of the dehomogenizations at ``s = 1`` (which also captures common
    powers of ``t``).  The result is normalized by :meth:`HomPoly.monic`.
    """
    _check_same_field(a, b)
    F = a.field
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero forms")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    s_common = min(a.s_valuation(), b.s_valuation())
    g = _gcd_uni(a.coeffs, b.coeffs, F)
    degree = len(g) - 1 + s_common
    return HomPoly(degree, tuple(g) + (F.zero,) * s_common, F).monic()


def gcd_many(polys) -> HomPoly:
    """gcd of a sequence of forms, skipping zeros; stops early at a constant."""
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g is None else hom_gcd(g, p)
        if g.degree == 0:
            break
    if g is None:
        raise BothZero("gcd of zero forms only")
    return g


def exact_quotient(a: HomPoly, b: HomPoly) -> HomPoly | None:
    """``a / b`` when ``b`` divides ``a`` exactly, otherwise ``None``."""
    _check_same_field(a, b)
    F = a.field
    if b.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if a.degree < b.degree:
        return None
    qdeg = a.degree - b.degree
    if a.is_zero():
        return HomPoly.zero(qdeg, F)
    q, r = _divmod_uni(a.coeffs, b.coeffs, F)
    q = _trim(q)
    if r or len(q) > qdeg + 1:
        return None
    return HomPoly(qdeg, tuple(q) + (F.zero,) * (qdeg + 1 - len(q)), F)


def divides(b: HomPoly, a: HomPoly) -> bool:
    return exact_quotient(a, b) is not None


def is_squarefree(p: HomPoly) -> bool:
    """No repeated linear factor over the algebraic closure."""
    if p.is_zero():
        return False
    if p.degree <= 1:
        return True
    return gcd_many([p, partial(p, "s"), partial(p, "t")]).degree == 0


def random_hompoly(degree: int, field: FieldCtx, seed=None, rng: random.Random | None = None) -> HomPoly:
    """Uniform random form over a prime field, reproducible from ``seed``."""
    if rng is None:
        rng = random.Random(seed)
    return HomPoly(degree, tuple(field.random(rng) for _ in range(degree + 1)), field)


def reparameterize(p: HomPoly, g) -> HomPoly:
    """Substitute ``(s, t) <- (g00 s + g01 t, g10 s + g11 t)``.

    Composition: ``reparameterize(reparameterize(p, g), h)`` equals
    ``reparameterize(p, g @ h)``.
    """
    F = p.field
    (a, b), (c, d) = [[F(x) for x in row] for row in g]
    if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
        raise SingularMatrix("reparameterization matrix is singular")
    L1 = (a, b)  # a s + b t
    L2 = (c, d)
    n = p.degree
    pow1 = [[F.one]]
    pow2 = [[F.one]]
    for _ in range(n):
        pow1.append(_convolve(pow1[-1], L1, F))
        pow2.append(_convolve(pow2[-1], L2, F))
    out = [F.zero] * (n + 1)
    for i, coef in enumerate(p.coeffs):
        if coef == 0:
            continue
        term = _convolve(pow1[n - i], pow2[i], F)
        for j, v in enumerate(term):
            out[j] = F.add(out[j], F.mul(coef, v))
    return HomPoly(n, tuple(out), F)
