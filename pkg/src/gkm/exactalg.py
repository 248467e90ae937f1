"""Exact rational arithmetic: covectors, sparse polynomials, linear algebra.

Everything here works over the rationals via :class:`fractions.Fraction`.
Linear systems are solved by fraction-free Gauss-Jordan elimination on
integer rows; fractions only appear when reading off solutions.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

from .errors import DependentPair, MalformedInput, NotDivisible, ZeroCovector

Covector = tuple  # tuple of Fraction, length n


# ---------------------------------------------------------------- rationals

def to_fraction(x) -> Fraction:
    """Coerce ``x`` (int, Fraction or a "p/q" string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise MalformedInput(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInput(f"not a rational: {x!r}") from None
    raise MalformedInput(f"not a rational: {x!r}")


def format_rational(q) -> str:
    return str(Fraction(q))


# ---------------------------------------------------------------- covectors

def covector(values: Iterable) -> Covector:
    return tuple(to_fraction(v) for v in values)


def cov_add(a: Covector, b: Covector) -> Covector:
    return tuple(x + y for x, y in zip(a, b))


def cov_sub(a: Covector, b: Covector) -> Covector:
    return tuple(x - y for x, y in zip(a, b))


def cov_scale(t, a: Covector) -> Covector:
    t = Fraction(t)
    return tuple(t * x for x in a)


def cov_is_zero(a: Covector) -> bool:
    return not any(a)


def pairing(a: Covector, xi: Sequence) -> Fraction:
    """Evaluate the covector ``a`` on the vector ``xi``."""
    return sum((x * y for x, y in zip(a, xi)), Fraction(0))


def ratio(a: Covector, b: Covector):
    """Return t with a == t*b, or None if no such t exists.

    ``b`` must be nonzero.
    """
    t = None
    for x, y in zip(a, b):
        if y == 0:
            if x != 0:
                return None
            continue
        s = Fraction(x) / y
        if t is None:
            t = s
        elif s != t:
            return None
    return t


def project_along(sigma: Covector, alpha: Covector, xi: Sequence) -> Covector:
    """Project ``sigma`` onto the annihilator of ``xi`` along ``alpha``.

    Requires alpha(xi) != 0.
    """
    t = pairing(sigma, xi) / pairing(alpha, xi)
    return tuple(s - t * a for s, a in zip(sigma, alpha))


# -------------------------------------------------------------- polynomials

def graded_dim(k: int, n: int) -> int:
    """Dimension of the degree-k part of a polynomial ring in n variables."""
    if k < 0 or n < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    return comb(k + n - 1, n - 1)


def monomials(n: int, m: int) -> list:
    """Exponent tuples of total degree m in n variables, graded-lex descending."""
    if m < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), m):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def _order_key(e):
    return (sum(e), e)


class Polynomial:
    """Sparse polynomial in ``n`` variables with Fraction coefficients.

    Terms are kept in a dict from exponent tuples to nonzero coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(k < 0 for k in e):
                    raise MalformedInput(f"bad exponent {e} for {n} variables")
                c = to_fraction(c)
                if c:
                    c = clean.get(e, 0) + c
                    if c:
                        clean[e] = c
                    else:
                        clean.pop(e, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n, c):
        c = to_fraction(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def one(cls, n):
        return cls.constant(n, 1)

    @classmethod
    def variable(cls, n, i):
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, alpha: Sequence):
        """The linear form sum(alpha_i x_i)."""
        n = len(alpha)
        terms = {}
        for i, a in enumerate(alpha):
            a = to_fraction(a)
            if a:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = a
        return cls._raw(n, terms)

    @classmethod
    def monomial(cls, exps, c=1):
        exps = tuple(exps)
        c = to_fraction(c)
        return cls._raw(len(exps), {exps: c} if c else {})

    # inspection
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms in canonical (graded-lex descending) order."""
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_degree(self):
        """Common degree of all terms, None if inhomogeneous or zero."""
        degs = {sum(e) for e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, m=None) -> bool:
        if not self._terms:
            return True
        d = self.homogeneous_degree()
        return d is not None and (m is None or d == m)

    def to_covector(self) -> Covector:
        """Coefficients of a homogeneous linear polynomial."""
        if not self.is_homogeneous(1):
            raise ValueError("not a linear form")
        out = [Fraction(0)] * self.n
        for e, c in self._terms.items():
            out[e.index(1)] = c
        return tuple(out)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, t):
        t = to_fraction(t)
        if not t:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {e: t * c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e, 0) + c1 * c2
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        return Polynomial._raw(self.n, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(self.n, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # substitution
    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by ``images[i]`` (all in a common ring)."""
        if len(images) != self.n:
            raise ValueError("need one image per variable")
        if not self._terms:
            m = images[0].n if images else 0
            return Polynomial.zero(m)
        target_n = images[0].n if images else 0
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        total = Polynomial.zero(target_n)
        for e, c in self._terms.items():
            term = Polynomial.constant(target_n, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def permute_variables(self, perm: Sequence[int]) -> "Polynomial":
        """Send x_i to x_{perm[i]}."""
        terms = {}
        for e, c in self._terms.items():
            new = [0] * self.n
            for i, k in enumerate(e):
                new[perm[i]] += k
            terms[tuple(new)] = c
        return Polynomial._raw(self.n, terms)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    # display and serialization
    def __repr__(self):
        return f"Polynomial({self.n}, {str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def to_json(self) -> list:
        return [
            {"exponents": list(e), "coeff": format_rational(c)} for e, c in self.items()
        ]

    @classmethod
    def from_json(cls, n: int, data) -> "Polynomial":
        if not isinstance(data, list):
            raise MalformedInput("polynomial must be a list of terms")
        terms = {}
        for t in data:
            try:
                e = tuple(int(k) for k in t["exponents"])
                c = to_fraction(t["coeff"])
            except (KeyError, TypeError, ValueError):
                raise MalformedInput(f"bad polynomial term {t!r}") from None
            if e in terms:
                raise MalformedInput(f"repeated exponent {e}")
            terms[e] = c
        return cls(n, terms)


def _pivot_index(alpha: Sequence) -> int:
    for j, a in enumerate(alpha):
        if a:
            return j
    raise ZeroCovector("covector is zero")


def restrict_to_hyperplane(f: Polynomial, alpha: Sequence) -> Polynomial:
    """Restrict ``f`` to the hyperplane alpha = 0.

    The pivot variable x_j (first j with alpha_j != 0) is eliminated, so the
    result lives in the same ring but never involves x_j.
    """
    j = _pivot_index(alpha)
    n = f.n
    aj = Fraction(alpha[j])
    repl = Polynomial.linear(
        [Fraction(0) if i == j else -Fraction(a) / aj for i, a in enumerate(alpha)]
    )
    images = [repl if i == j else Polynomial.variable(n, i) for i in range(n)]
    return f.substitute(images)


def divide_by_linear(f: Polynomial, alpha: Sequence) -> Polynomial:
    """Exact quotient f / alpha; raises NotDivisible if alpha does not divide f."""
    j = _pivot_index(alpha)
    n = f.n
    aj = Fraction(alpha[j])
    rest = Polynomial.linear([Fraction(0) if i == j else a for i, a in enumerate(alpha)])
    # split f by powers of x_j
    slices = {}
    for e, c in f._terms.items():
        k = e[j]
        e0 = e[:j] + (0,) + e[j + 1:]
        slices.setdefault(k, {})[e0] = c
    coeffs = {k: Polynomial._raw(n, t) for k, t in slices.items()}
    top = max(coeffs, default=0)
    quotient = Polynomial.zero(n)
    carry = coeffs.get(top, Polynomial.zero(n))
    for k in range(top, 0, -1):
        q = carry.scale(1 / aj)
        xe = [0] * n
        xe[j] = k - 1
        quotient = quotient + q * Polynomial.monomial(xe)
        carry = coeffs.get(k - 1, Polynomial.zero(n)) - q * rest
    if carry:
        raise NotDivisible(f"{alpha} does not divide {f}")
    return quotient


def divide_by_product(f: Polynomial, alphas: Iterable[Sequence]) -> Polynomial:
    for a in alphas:
        f = divide_by_linear(f, a)
    return f


# ------------------------------------------------------------ linear algebra

def _int_row(row: Mapping) -> dict:
    """Scale a sparse rational row to primitive integers."""
    items = [(k, Fraction(v)) for k, v in row.items() if v]
    if not items:
        return {}
    den = 1
    for _, v in items:
        den = den * v.denominator // gcd(den, v.denominator)
    out = {k: int(v * den) for k, v in items}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def _as_sparse(row) -> dict:
    if isinstance(row, Mapping):
        return dict(row)
    return {i: v for i, v in enumerate(row) if v}


def _combine(target: dict, pivot_row: dict, col: int) -> dict:
    """Eliminate ``col`` from ``target`` using ``pivot_row`` (integers)."""
    a = target[col]
    p = pivot_row[col]
    g = gcd(a, p)
    ma, mp = p // g, a // g
    out = {k: v * ma for k, v in target.items()}
    for k, v in pivot_row.items():
        w = out.get(k, 0) - mp * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


class Echelon:
    """Incremental fraction-free Gauss-Jordan form of a set of rows."""

    def __init__(self):
        self.rows = {}  # pivot column -> integer row

    def add(self, row) -> bool:
        """Insert a row; returns True when it raised the rank."""
        r = _int_row(_as_sparse(row))
        for col in [c for c in r if c in self.rows]:
            if col in r:
                r = _combine(r, self.rows[col], col)
        if not r:
            return False
        col = min(r)
        if r[col] < 0:
            r = {k: -v for k, v in r.items()}
        for c, other in list(self.rows.items()):
            if col in other:
                self.rows[c] = _combine(other, r, col)
        self.rows[col] = r
        return True

    @property
    def rank(self):
        return len(self.rows)


def _echelon(rows) -> Echelon:
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech


def _ncols(M, ncols):
    if ncols is not None:
        return ncols
    for row in M:
        if not isinstance(row, Mapping):
            return len(row)
    raise ValueError("ncols is required for sparse rows")


def rank(M, ncols=None) -> int:
    return _echelon(M).rank


def kernel_basis(M, ncols=None) -> list:
    """Basis of {x : M x = 0}, as tuples of Fractions.

    One vector per free column, with a 1 in that column.
    """
    ncols = _ncols(M, ncols)
    ech = _echelon(M)
    pivots = ech.rows
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for c, r in pivots.items():
            v = r.get(f)
            if v:
                x[c] = Fraction(-v, r[c])
        basis.append(tuple(x))
    return basis


def solve(M, b, ncols=None, rng=None):
    """One solution of M x = b, or None if inconsistent.

    Free variables are 0, or drawn from ``rng`` (small integers) if given.
    """
    ncols = _ncols(M, ncols)
    aug = []
    for row, rhs in zip(M, b):
        r = _as_sparse(row)
        rhs = Fraction(rhs)
        if rhs:
            r[ncols] = rhs
        aug.append(r)
    ech = _echelon(aug)
    if ncols in ech.rows:
        return None
    free = {}
    for f in range(ncols):
        if f not in ech.rows:
            free[f] = Fraction(rng.randint(-3, 3)) if rng is not None else Fraction(0)
    x = [Fraction(0)] * ncols
    for f, v in free.items():
        x[f] = v
    for c, r in ech.rows.items():
        acc = Fraction(r.get(ncols, 0))
        for k, v in r.items():
            if k != c and k != ncols:
                acc -= v * free[k]
        x[c] = acc / r[c]
    return tuple(x)


def is_independent(vectors: Sequence[Sequence]) -> bool:
    return rank(vectors) == len(vectors)


def annihilator_of_pair(alpha: Sequence, beta: Sequence) -> list:
    """Basis (n-2 vectors) of the common kernel of two covectors."""
    n = len(alpha)
    if rank([alpha, beta]) < 2:
        raise DependentPair(f"{list(alpha)} and {list(beta)} are dependent")
    return kernel_basis([alpha, beta], n)


def plane_key(alpha: Sequence, beta: Sequence) -> tuple:
    """Canonical reduced form of span(alpha, beta); equal keys iff equal planes."""
    ech = _echelon([alpha, beta])
    if ech.rank < 2:
        raise DependentPair("dependent pair")
    out = []
    for c in sorted(ech.rows):
        r = ech.rows[c]
        p = r[c]
        out.append(tuple(sorted((k, Fraction(v, p)) for k, v in r.items())))
    return tuple(out)
