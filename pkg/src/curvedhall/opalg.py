"""Exact operator algebra over Gaussian-rational coefficients.

Everything downstream (metric Hamiltonians, symmetry generators, Casimir
identities, Poisson brackets) is built from four layers:

    GaussianRational  -- complex numbers with Fraction real/imag parts
    LaurentPoly       -- multivariate Laurent polynomials over a Ring
    RationalFunc      -- LaurentPoly divided by a product of monic factors
    DiffOp            -- sums of RationalFunc * (partial-derivative monomial)

All values are immutable after construction and every operation returns a
normalized result, so equality checks reduce to "does the difference
normalize to zero".  Denominators stay in factored form (powers of a few
irreducibles such as 1 - (x^2+y^2)/rho^2), which keeps cancellation cheap
and avoids multivariate GCDs.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


class DeclarationError(ValueError):
    """Raised when operands live over different variable declarations."""


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, v):
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, (int, Fraction)):
            return cls(v)
        if isinstance(v, complex):
            raise TypeError("floats are not exact; build from Fraction instead")
        raise TypeError(f"cannot coerce {v!r} to GaussianRational")

    @classmethod
    def _try(cls, v):
        try:
            return cls.coerce(v)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self.coerce(other) + (-self)

    def __mul__(self, other):
        other = self._try(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * self.coerce(other).inverse()

    def __rtruediv__(self, other):
        return self.coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        im = "+ " + (f"{self.im}*i" if self.im != 1 else "i") if self.im > 0 \
            else "- " + (f"{-self.im}*i" if self.im != -1 else "i")
        return f"({self.re} {im})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def frac(p, q=1):
    return GaussianRational(Fraction(p, q))


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

class Ring:
    """Ordered variable declaration shared by all polynomials of a model.

    ``laurent`` names may carry negative exponents; ``params`` are inert
    under the geometric derivatives of a DiffOp.  ``power_rules`` rewrites
    even powers of a symbol (used for kappa^2 = hbar/(2 m omega_c), which
    keeps square roots out of the coefficient field).
    """

    def __init__(self, variables, laurent=(), params=(), power_rules=None):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise DeclarationError("duplicate variable names")
        self.laurent = frozenset(laurent)
        self.params = frozenset(params)
        unknown = (self.laurent | self.params) - set(self.vars)
        if unknown:
            raise DeclarationError(f"undeclared names: {sorted(unknown)}")
        self.index = {v: k for k, v in enumerate(self.vars)}
        # var -> (delta exponent vector, scalar factor) applied per v^2
        self.power_rules = {}
        for var, (delta, coeff) in (power_rules or {}).items():
            vec = [0] * len(self.vars)
            for name, e in delta.items():
                vec[self.index[name]] = e
            vec[self.index[var]] -= 2
            self.power_rules[self.index[var]] = (tuple(vec), GaussianRational.coerce(coeff))

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Ring)
            and self.vars == other.vars
            and self.laurent == other.laurent
            and self.params == other.params
        )

    def __hash__(self):
        return hash((self.vars, self.laurent, self.params))

    def zero(self):
        return LaurentPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = GaussianRational.coerce(c)
        if not c:
            return self.zero()
        return LaurentPoly(self, {(0,) * len(self.vars): c})

    def var(self, name, power=1):
        vec = [0] * len(self.vars)
        vec[self.index[name]] = power
        return self.monomial(tuple(vec))

    def monomial(self, exps, coeff=1):
        return LaurentPoly(self, {tuple(exps): GaussianRational.coerce(coeff)})

    def poly(self, terms):
        """Build from {(exponents): coeff} or {name-string: coeff} shorthand."""
        out = self.zero()
        for key, coeff in terms.items():
            out = out + self.monomial(key, coeff)
        return out


def _grlex_key(exps):
    return (sum(exps), exps)


class LaurentPoly:
    """Multivariate Laurent polynomial with GaussianRational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        cleaned = {}
        for exps, coeff in terms.items():
            coeff = GaussianRational.coerce(coeff)
            if not coeff:
                continue
            exps, coeff = self._reduce_powers(ring, exps, coeff)
            if exps in cleaned:
                s = cleaned[exps] + coeff
                if s:
                    cleaned[exps] = s
                else:
                    del cleaned[exps]
            else:
                cleaned[exps] = coeff
        for exps in cleaned:
            for k, e in enumerate(exps):
                if e < 0 and ring.vars[k] not in ring.laurent:
                    raise DeclarationError(
                        f"negative power of non-Laurent variable {ring.vars[k]!r}")
        self.terms = cleaned
        self._hash = None

    @staticmethod
    def _reduce_powers(ring, exps, coeff):
        if not ring.power_rules:
            return tuple(exps), coeff
        exps = list(exps)
        for idx, (delta, factor) in ring.power_rules.items():
            while exps[idx] >= 2:
                for k, d in enumerate(delta):
                    exps[k] += d
                coeff = coeff * factor
        return tuple(exps), coeff

    # -- ring ops ----------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise DeclarationError("operands declared over different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            s = out.get(exps, ZERO) + coeff
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return LaurentPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.coerce(other)
            return LaurentPoly(self.ring, {e: k * c for e, k in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    out[e] = out[e] + c
                else:
                    out[e] = c
        return LaurentPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("use RationalFunc for negative polynomial powers")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.ring.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    @property
    def is_zero(self):
        return not self.terms

    def diff(self, var):
        """Formal partial derivative; exponent-weighted shift."""
        k = self.ring.index[var]
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[k]
            if e == 0:
                continue
            ne = exps[:k] + (e - 1,) + exps[k + 1:]
            out[ne] = out.get(ne, ZERO) + coeff * e
        return LaurentPoly(self.ring, out)

    def leading(self):
        """(exponents, coeff) of the graded-lex leading term."""
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def monomial_content(self):
        """Per-variable minimum exponent over all terms."""
        mins = None
        for exps in self.terms:
            if mins is None:
                mins = list(exps)
            else:
                mins = [min(a, b) for a, b in zip(mins, exps)]
        return tuple(mins) if mins else (0,) * len(self.ring.vars)

    def shift(self, delta):
        return LaurentPoly(
            self.ring,
            {tuple(a + b for a, b in zip(e, delta)): c for e, c in self.terms.items()},
        )

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def eval(self, values):
        """Numeric evaluation; every variable present must get a value."""
        out = 0j
        vals = [values.get(v) for v in self.ring.vars]
        for exps, coeff in self.terms.items():
            term = complex(coeff)
            for v, e in zip(vals, exps):
                if e == 0:
                    continue
                if v is None:
                    raise KeyError("unbound variable in eval")
                term *= v ** e
            out += term
        return out

    def substitute(self, images):
        """Map named variables to RationalFunc images (same or new ring)."""
        tgt = next(iter(images.values())).ring
        out = RationalFunc.zero(tgt)
        for exps, coeff in self.terms.items():
            term = RationalFunc.const(tgt, coeff)
            for var, e in zip(self.ring.vars, exps):
                if e == 0:
                    continue
                img = images.get(var)
                if img is None:
                    img = RationalFunc.from_poly(tgt.var(var))
                term = term * img ** e
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms, key=_grlex_key, reverse=True):
            coeff = self.terms[exps]
            factors = []
            for v, e in zip(self.ring.vars, exps):
                if e == 1:
                    factors.append(v)
                elif e != 0:
                    factors.append(f"{v}**{e}")
            cs = str(coeff)
            if factors and cs == "1":
                bits.append("*".join(factors))
            elif factors and cs == "-1":
                bits.append("-" + "*".join(factors))
            else:
                bits.append("*".join([cs] + factors))
        s = " + ".join(bits)
        return s.replace("+ -", "- ")

    __repr__ = __str__


def exact_divide(num, den):
    """Exact multivariate division num/den, or None if not divisible.

    Laurent inputs are shifted to non-negative exponents first; the result
    carries the net shift back.
    """
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero:
        return num
    ring = num.ring
    sn = num.monomial_content()
    sd = den.monomial_content()
    n = dict(num.shift(tuple(-v for v in sn)).terms)
    d = LaurentPoly(ring, dict(den.shift(tuple(-v for v in sd)).terms))
    dl_exps, dl_coeff = d.leading()
    q = {}
    while n:
        exps = max(n, key=_grlex_key)
        coeff = n[exps]
        t = tuple(a - b for a, b in zip(exps, dl_exps))
        if any(e < 0 for e in t):
            return None
        tc = coeff / dl_coeff
        q[t] = tc
        for de, dc in d.terms.items():
            e = tuple(a + b for a, b in zip(t, de))
            s = n.get(e, ZERO) - tc * dc
            if s:
                n[e] = s
            else:
                n.pop(e, None)
    net = tuple(a - b for a, b in zip(sn, sd))
    try:
        return LaurentPoly(ring, q).shift(net)
    except DeclarationError:
        return None


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunc:
    """num / prod(factor^power) with monic non-monomial factors.

    The factored denominator covers everything the model produces (powers
    of phi on the disk, powers of z - zbar after the complex substitution);
    monomial denominators live inside the Laurent numerator instead.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=()):
        factors = {}
        for f, p in den:
            if p == 0:
                continue
            if p < 0:
                raise ValueError("denominator powers must be positive")
            if f.is_zero:
                raise ZeroDivisionError("zero denominator factor")
            if len(f.terms) == 1:
                # monomial factor: fold into the numerator
                exps, coeff = f.leading()
                num = num.shift(tuple(-p * e for e in exps)) * (coeff ** (-p))
                continue
            _, lead = f.leading()
            if lead != ONE:
                f = f * lead.inverse()
                num = num * (lead ** (-p))
            factors[f] = factors.get(f, 0) + p
        self.num = num
        # cancel factors into the numerator where possible
        reduced = []
        for f, p in factors.items():
            while p > 0:
                q = exact_divide(self.num, f)
                if q is None:
                    break
                self.num = q
                p -= 1
            if p > 0:
                reduced.append((f, p))
        if self.num.is_zero:
            reduced = []
        reduced.sort(key=lambda fp: (_grlex_key(fp[0].leading()[0]), sorted(fp[0].terms)))
        self.den = tuple(reduced)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @classmethod
    def const(cls, ring, c):
        return cls(ring.const(c))

    @classmethod
    def zero(cls, ring):
        return cls(ring.zero())

    @property
    def ring(self):
        return self.num.ring

    @property
    def is_zero(self):
        return self.num.is_zero

    def den_poly(self):
        out = self.ring.one()
        for f, p in self.den:
            out = out * f ** p
        return out

    def as_poly(self):
        if self.den:
            raise ValueError(f"not polynomial: {self}")
        return self.num

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other, ring):
        if isinstance(other, RationalFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunc(other)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RationalFunc.const(ring, other)
        return None

    def __add__(self, other):
        other = self._coerce(other, self.ring)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den)
        union = dict(self.den)
        for f, p in other.den:
            union[f] = max(union.get(f, 0), p)
        mine, theirs = dict(self.den), dict(other.den)
        n1, n2 = self.num, other.num
        for f, p in union.items():
            d1 = p - mine.get(f, 0)
            d2 = p - theirs.get(f, 0)
            if d1:
                n1 = n1 * f ** d1
            if d2:
                n2 = n2 * f ** d2
        return RationalFunc(n1 + n2, tuple(union.items()))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other, self.ring)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other, self.ring) + (-self)

    def __mul__(self, other):
        other = self._coerce(other, self.ring)
        if other is None:
            return NotImplemented
        den = dict(self.den)
        for f, p in other.den:
            den[f] = den.get(f, 0) + p
        return RationalFunc(self.num * other.num, tuple(den.items()))

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunc(self.den_poly(), ((self.num, 1),))

    def __truediv__(self, other):
        return self * self._coerce(other, self.ring).inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFunc.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self, var):
        out = RationalFunc(self.num.diff(var), self.den)
        for f, p in self.den:
            df = f.diff(var)
            if df.is_zero:
                continue
            den = dict(self.den)
            den[f] = den.get(f, 0) + 1
            out = out + RationalFunc(self.num * df * (-p), tuple(den.items()))
        return out

    def __eq__(self, other):
        other = self._coerce(other, self.ring)
        if other is None:
            return NotImplemented
        # cross-multiplied comparison: a/b = c/d  <=>  a*d - c*b = 0
        return (self.num * other.den_poly() - other.num * self.den_poly()).is_zero

    def __hash__(self):
        return hash((self.num, self.den))

    def eval(self, values):
        out = self.num.eval(values)
        for f, p in self.den:
            out /= f.eval(values) ** p
        return out

    def substitute(self, images):
        out = self.num.substitute(images)
        for f, p in self.den:
            out = out * f.substitute(images) ** (-p)
        return out

    def __str__(self):
        if not self.den:
            s = str(self.num)
            return f"({s})" if len(self.num.terms) > 1 else s
        dbits = []
        for f, p in self.den:
            dbits.append(f"({f})**{p}" if p > 1 else f"({f})")
        return f"({self.num})/({'*'.join(dbits)})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# differential operators
# ---------------------------------------------------------------------------

class DiffOp:
    """Normal-ordered differential operator: sum of coeff * d^alpha.

    ``geom_vars`` are the variables derivatives act on; every other ring
    variable is inert.  Terms map derivative multi-indices to RationalFunc
    coefficients, with all derivatives to the right of all coefficients.
    """

    __slots__ = ("ring", "geom_vars", "terms")

    def __init__(self, ring, geom_vars, terms):
        self.ring = ring
        self.geom_vars = tuple(geom_vars)
        for v in self.geom_vars:
            if v not in ring.index or v in ring.params:
                raise DeclarationError(f"bad geometric variable {v!r}")
        cleaned = {}
        for alpha, coeff in terms.items():
            if isinstance(coeff, LaurentPoly):
                coeff = RationalFunc(coeff)
            elif not isinstance(coeff, RationalFunc):
                coeff = RationalFunc.const(ring, coeff)
            if coeff.is_zero:
                continue
            alpha = tuple(alpha)
            if len(alpha) != len(self.geom_vars) or any(a < 0 for a in alpha):
                raise DeclarationError(f"bad derivative multi-index {alpha}")
            if alpha in cleaned:
                s = cleaned[alpha] + coeff
                if s.is_zero:
                    del cleaned[alpha]
                else:
                    cleaned[alpha] = s
            else:
                cleaned[alpha] = coeff
        self.terms = cleaned

    # -- builders ----------------------------------------------------------

    @classmethod
    def zero(cls, ring, geom_vars):
        return cls(ring, geom_vars, {})

    @classmethod
    def mult(cls, ring, geom_vars, coeff):
        """Multiplication operator by a polynomial / rational function."""
        return cls(ring, geom_vars, {(0,) * len(geom_vars): coeff})

    @classmethod
    def d(cls, ring, geom_vars, var, coeff=1):
        alpha = [0] * len(geom_vars)
        alpha[geom_vars.index(var)] = 1
        return cls(ring, geom_vars, {tuple(alpha): coeff})

    def _check(self, other):
        if not isinstance(other, DiffOp):
            raise TypeError("expected DiffOp")
        if self.ring != other.ring or self.geom_vars != other.geom_vars:
            raise DeclarationError("operators declared over different variables")

    # -- linear structure --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, LaurentPoly, RationalFunc)):
            other = DiffOp.mult(self.ring, self.geom_vars, other)
        self._check(other)
        out = dict(self.terms)
        for alpha, coeff in other.terms.items():
            s = out.get(alpha)
            s = coeff if s is None else s + coeff
            if s.is_zero:
                out.pop(alpha, None)
            else:
                out[alpha] = s
        return DiffOp(self.ring, self.geom_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(self.ring, self.geom_vars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, LaurentPoly, RationalFunc)):
            other = DiffOp.mult(self.ring, self.geom_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _coeff_derivative(self, coeff, alpha):
        for var, k in zip(self.geom_vars, alpha):
            for _ in range(k):
                coeff = coeff.diff(var)
        return coeff

    def __mul__(self, other):
        """Operator composition self o other, normal ordered via Leibniz."""
        if isinstance(other, (int, Fraction, GaussianRational, LaurentPoly, RationalFunc)):
            other = DiffOp.mult(self.ring, self.geom_vars, other)
        self._check(other)
        out = {}
        for alpha, f in self.terms.items():
            ranges = [range(a + 1) for a in alpha]
            for beta, g in other.terms.items():
                for gamma in itertools.product(*ranges):
                    binom = 1
                    for a, c in zip(alpha, gamma):
                        binom *= math.comb(a, c)
                    dg = self._coeff_derivative(
                        g, tuple(a - c for a, c in zip(alpha, gamma)))
                    if dg.is_zero:
                        continue
                    coeff = f * dg * binom
                    idx = tuple(b + c for b, c in zip(beta, gamma))
                    s = out.get(idx)
                    out[idx] = coeff if s is None else s + coeff
        return DiffOp(self.ring, self.geom_vars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, LaurentPoly, RationalFunc)):
            return DiffOp.mult(self.ring, self.geom_vars, other) * self
        return NotImplemented

    def commutator(self, other):
        return self * other - other * self

    def __pow__(self, k):
        out = DiffOp.mult(self.ring, self.geom_vars, 1)
        for _ in range(k):
            out = out * self
        return out

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, LaurentPoly, RationalFunc)):
            other = DiffOp.mult(self.ring, self.geom_vars, other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        return hash((self.ring, self.geom_vars, frozenset(self.terms)))

    def degree(self):
        return max((sum(a) for a in self.terms), default=0)

    # -- actions -----------------------------------------------------------

    def apply_rf(self, f):
        """Image of a RationalFunc (or LaurentPoly) under the operator."""
        if isinstance(f, LaurentPoly):
            f = RationalFunc(f)
        out = RationalFunc.zero(self.ring)
        for alpha, coeff in self.terms.items():
            g = f
            for var, k in zip(self.geom_vars, alpha):
                for _ in range(k):
                    g = g.diff(var)
            out = out + coeff * g
        return out

    def apply_poly(self, f):
        """Exact image of a LaurentPoly; raises if the image leaves the ring."""
        return self.apply_rf(f).as_poly()

    def substitute(self, coeff_images, deriv_images):
        """Change of variables.

        ``coeff_images`` maps old variable names to RationalFunc images in
        the target ring; ``deriv_images`` maps old geometric variables to
        first-order DiffOps in the target ring (the chain-rule images of
        the partials).  Coefficients are substituted, then composed with
        the mapped derivative monomials.
        """
        some = next(iter(deriv_images.values()))
        tgt_ring, tgt_geom = some.ring, some.geom_vars
        out = DiffOp.zero(tgt_ring, tgt_geom)
        for alpha, coeff in self.terms.items():
            term = DiffOp.mult(tgt_ring, tgt_geom, coeff.substitute(coeff_images))
            for var, k in zip(self.geom_vars, alpha):
                for _ in range(k):
                    term = term * deriv_images[var]
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for alpha in sorted(self.terms, key=lambda a: (sum(a), a), reverse=True):
            coeff = self.terms[alpha]
            dsym = []
            for var, k in zip(self.geom_vars, alpha):
                if k == 1:
                    dsym.append(f"D{var}")
                elif k > 1:
                    dsym.append(f"D{var}**{k}")
            cs = str(coeff)
            bits.append("*".join([cs] + dsym) if dsym else cs)
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__


# ---------------------------------------------------------------------------
# module-level entry points
# ---------------------------------------------------------------------------

def dop_compose(A, B):
    return A * B


def dop_commutator(A, B):
    return A.commutator(B)


def dop_equals(A, B):
    return A == B


def dop_apply_poly(A, f):
    return A.apply_poly(f)


# PhasePoly is a LaurentPoly over a phase-space ring; the bracket only
# needs to know which variables are coordinates and which are momenta.
PHASE_COORDS = ("x", "y")
PHASE_MOMENTA = ("px", "py")


def phase_ring(extra_params=("beta", "a")):
    return Ring(
        PHASE_COORDS + PHASE_MOMENTA + tuple(extra_params),
        laurent=("y",) + tuple(extra_params),
        params=tuple(extra_params),
    )


def poisson_bracket(F, G, coords=PHASE_COORDS, momenta=PHASE_MOMENTA):
    """{F, G} = sum_r dF/dq_r dG/dp_r - dF/dp_r dG/dq_r, exactly."""
    if F.ring != G.ring:
        raise DeclarationError("phase polynomials over different rings")
    out = F.ring.zero()
    for q, p in zip(coords, momenta):
        out = out + F.diff(q) * G.diff(p) - F.diff(p) * G.diff(q)
    return out
