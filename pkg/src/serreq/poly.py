"""Sparse polynomials over Q in a Z^r-graded polynomial ring.

Monomials are exponent tuples, coefficients are :class:`fractions.Fraction`.
The monomial order is degree reverse lexicographic on total exponent degree;
module terms ``(component, exponent)`` are ordered position over term with the
lower component index first.
"""

import ast
from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError


def mono_key(e):
    """Sort key for degrevlex: larger key means larger monomial."""
    return (sum(e), tuple(-a for a in reversed(e)))


def term_key(t):
    """Position over term: lower component wins, then degrevlex."""
    c, e = t
    return (-c, sum(e), tuple(-a for a in reversed(e)))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class GradedRing:
    """``Q[variables]`` with a degree vector in Z^r per variable."""
    variables: tuple
    degrees: tuple

    def __post_init__(self):
        if len(self.variables) != len(self.degrees):
            raise UsageError("one degree vector per variable is required")
        if len(set(self.variables)) != len(self.variables):
            raise UsageError("variable names must be distinct")
        if len({len(d) for d in self.degrees}) > 1:
            raise UsageError("degree vectors must share one length")
        for name in self.variables:
            if not name.isidentifier():
                raise UsageError(f"bad variable name {name!r}")

    @classmethod
    def standard(cls, variables):
        if isinstance(variables, str):
            variables = variables.replace(",", " ").split()
        return cls(tuple(variables), tuple((1,) for _ in variables))

    @classmethod
    def create(cls, variables, degrees=None):
        if degrees is None:
            return cls.standard(variables)
        if isinstance(variables, str):
            variables = variables.replace(",", " ").split()
        return cls(tuple(variables),
                   tuple((d,) if isinstance(d, int) else tuple(d) for d in degrees))

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def grading_rank(self):
        return len(self.degrees[0]) if self.degrees else 1

    def is_standard(self):
        return all(d == (1,) for d in self.degrees)

    def zero_degree(self):
        return (0,) * self.grading_rank

    def degree_of(self, e):
        deg = [0] * self.grading_rank
        for a, d in zip(e, self.degrees):
            if a:
                for k, x in enumerate(d):
                    deg[k] += a * x
        return tuple(deg)

    def one_exp(self):
        return (0,) * self.nvars

    # -- element construction --------------------------------------------

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self.one_exp(): Fraction(1)})

    def constant(self, c):
        c = Fraction(c)
        return Poly(self, {self.one_exp(): c} if c else {})

    def var(self, i):
        if isinstance(i, str):
            i = self.variables.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e, c=1):
        return Poly(self, {tuple(e): Fraction(c)})

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.ring != self:
                raise UsageError("polynomial from a different ring")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)):
            return self.constant(x)
        raise UsageError(f"cannot interpret {x!r} as a polynomial")

    def extend(self, name, degree=None):
        """The ring with one more variable, appended last."""
        degree = degree if degree is not None else self.zero_degree()
        return GradedRing(self.variables + (name,), self.degrees + (tuple(degree),))

    def monomials_of_degree(self, d):
        """All exponents of degree ``d`` (an int for Z-gradings, else a tuple).

        Needs every variable degree to be nonnegative and nonzero, so that each
        graded piece is finite.
        """
        if any(min(x) < 0 or not any(x) for x in self.degrees):
            raise UsageError("monomial enumeration needs nonnegative, nonzero variable degrees")
        d = (d,) if isinstance(d, int) else tuple(d)
        if len(d) != self.grading_rank:
            raise UsageError(f"degree {d} does not match the grading")
        ws = [sum(x) for x in self.degrees]
        out = []

        def rec(i, left, acc):
            if i == len(ws):
                if left == 0:
                    out.append(tuple(acc))
                return
            for a in range(left // ws[i], -1, -1):
                rec(i + 1, left - a * ws[i], acc + [a])

        if min(d, default=0) >= 0:
            rec(0, sum(d), [])
        if self.grading_rank > 1:
            out = [e for e in out if self.degree_of(e) == d]
        return sorted(out, key=mono_key, reverse=True)

    # -- parsing ------------------------------------------------------------

    def parse(self, text):
        """Parse ``+ - * ^`` expressions with integer or ``p/q`` coefficients."""
        if not isinstance(text, str):
            raise UsageError(f"polynomial must be a string, got {text!r}")
        try:
            tree = ast.parse(text.replace("^", "**").strip() or "0", mode="eval")
        except SyntaxError as exc:
            raise UsageError(f"cannot parse polynomial {text!r}") from exc
        return self._eval(tree.body, text)

    def _eval(self, node, text):
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return self.constant(node.value)
        if isinstance(node, ast.Name):
            if node.id not in self.variables:
                raise UsageError(f"unknown variable {node.id!r} in {text!r}")
            return self.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand, text)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = self._eval(node.left, text)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and type(node.right.value) is int
                        and node.right.value >= 0):
                    raise UsageError(f"exponents must be non-negative integers in {text!r}")
                return left ** node.right.value
            right = self._eval(node.right, text)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                c = right.constant_value()
                if c is None or c == 0:
                    raise UsageError(f"division only by nonzero constants in {text!r}")
                return left.scale(1 / c)
        raise UsageError(f"unsupported syntax in polynomial {text!r}")


def _fmt_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _exact(c):
    if type(c) is Fraction:
        return c
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    raise UsageError(f"coefficients must be integers or fractions, got {c!r}")


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: _exact(c) for e, c in terms.items() if c}
        self._hash = None

    # -- basic protocol -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(v if a == 1 else f"{v}^{a}" for v, a in zip(names, e) if a)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(mag)}*{mono}"
            if k == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = Fraction(c)
        return Poly(self.ring, {e: c * a for e, a in self.terms.items()})

    # -- inspection ---------------------------------------------------------

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {self.ring.one_exp()}:
            return self.terms[self.ring.one_exp()]
        return None

    def leading_exponent(self):
        return max(self.terms, key=mono_key)

    def degrees(self):
        return {self.ring.degree_of(e) for e in self.terms}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        """The common degree of a nonzero homogeneous polynomial."""
        ds = self.degrees()
        if len(ds) != 1:
            raise UsageError(f"{self} is zero or not homogeneous")
        return next(iter(ds))

    def set_to_one(self, indices):
        """Substitute 1 for the variables at ``indices`` (same ambient ring)."""
        idx = set(indices)
        out = {}
        for e, c in self.terms.items():
            e2 = tuple(0 if i in idx else a for i, a in enumerate(e))
            out[e2] = out.get(e2, 0) + c
        return Poly(self.ring, out)

    def to_ring(self, ring):
        """Re-embed in ``ring`` whose variables extend this ring's."""
        pad = (0,) * (ring.nvars - self.ring.nvars)
        return Poly(ring, {e + pad: c for e, c in self.terms.items()})


class PolyVector:
    """Element of the free module ``S^rank``; ``terms`` maps (component, exponent)
    to nonzero Fractions."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring, rank, terms):
        self.ring = ring
        self.rank = rank
        self.terms = {t: _exact(c) for t, c in terms.items() if c}

    @classmethod
    def from_polys(cls, ring, polys):
        terms = {}
        for i, p in enumerate(polys):
            for e, c in ring.coerce(p).terms.items():
                terms[(i, e)] = c
        return cls(ring, len(polys), terms)

    def to_polys(self):
        rows = [dict() for _ in range(self.rank)]
        for (i, e), c in self.terms.items():
            rows[i][e] = c
        return [Poly(self.ring, r) for r in rows]

    def __eq__(self, other):
        return (isinstance(other, PolyVector) and self.rank == other.rank
                and self.ring == other.ring and self.terms == other.terms)

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self):
        return "PolyVector([" + ", ".join(str(p) for p in self.to_polys()) + "])"

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self, shifts=None):
        shifts = shifts or [self.ring.zero_degree()] * self.rank
        shifts = [(s,) if isinstance(s, int) else tuple(s) for s in shifts]
        ds = {tuple(a + b for a, b in zip(self.ring.degree_of(e), shifts[i]))
              for (i, e) in self.terms}
        return len(ds) <= 1
