"""Unramified local period factors and the symbolic global L-factor attached to a cuspidal orbit.

Non-archimedean values are exact Fractions whenever every power q^{-s} that
occurs is rational (for instance s + 1/2 an integer in J1); otherwise they are
floats, or complex numbers for complex arguments.  Archimedean values are
always floating point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from scipy.special import gamma as _gamma
from sympy import factorint, integer_nthroot

from .errors import DomainError, PoleError

_EPS = 1e-13


@dataclass(frozen=True)
class LocalField:
    kind: str
    q: int | None = None

    def __post_init__(self):
        if self.kind == "nonarch":
            if self.q is None or int(self.q) < 2 or len(factorint(int(self.q))) != 1:
                raise ValueError(f"residue field size must be a prime power, got {self.q}")
            object.__setattr__(self, "q", int(self.q))
        elif self.kind in ("real", "complex"):
            if self.q is not None:
                raise ValueError("archimedean fields carry no q")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def nonarch(cls, q: int) -> "LocalField":
        return cls("nonarch", q)

    @property
    def is_archimedean(self) -> bool:
        return self.kind != "nonarch"

    def __str__(self):
        return f"nonarch(q={self.q})" if self.q else self.kind


REAL = LocalField("real")
COMPLEX = LocalField("complex")


def _coerce(s):
    if isinstance(s, (Fraction, complex, float)):
        return s
    if isinstance(s, (int, str)):
        return Fraction(s)
    return s


def _real_part(s) -> float:
    return s.real if isinstance(s, complex) else float(s)


def q_power(q: int, s):
    """q^{-s}: a Fraction when it is rational, else a float or complex."""
    s = _coerce(s)
    if isinstance(s, Fraction):
        root, exact = integer_nthroot(q, s.denominator)
        if exact:
            return Fraction(int(root)) ** (-s.numerator)
        return q ** (-float(s))
    if isinstance(s, complex):
        return cmath.exp(-s * math.log(q))
    return q ** (-float(s))


def _near(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(complex(a) - complex(b)) < _EPS


def _is_nonpositive_integer(z) -> bool:
    z = _coerce(z)
    if isinstance(z, Fraction):
        return z.denominator == 1 and z <= 0
    z = complex(z)
    r = round(z.real)
    return abs(z.imag) < _EPS and abs(z.real - r) < _EPS and r <= 0


def _gamma_value(z):
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if isinstance(z, complex):
        return complex(_gamma(z))
    return float(_gamma(float(z)))


def local_L_triv(s, F: LocalField):
    """L(s, 1_F): (1 - q^{-s})^{-1}, pi^{-s/2} Gamma(s/2) or 2 (2 pi)^{-s} Gamma(s)."""
    s = _coerce(s)
    if F.kind == "nonarch":
        X = q_power(F.q, s)
        if _near(X, Fraction(1)):
            raise PoleError(f"L(s, 1) has a pole at s={s} for q={F.q}")
        return 1 / (1 - X)
    if F.kind == "real":
        z = s / 2
        if isinstance(s, complex):
            return cmath.exp(-s / 2 * math.log(math.pi)) * _gamma_value(z)
        return math.pi ** (-float(s) / 2) * _gamma_value(float(z))
    if isinstance(s, complex):
        return 2 * cmath.exp(-s * math.log(2 * math.pi)) * _gamma_value(s)
    return 2 * (2 * math.pi) ** (-float(s)) * _gamma_value(float(s))


def J1(s, F: LocalField, continue_analytically: bool = False):
    """Rank-one unramified period, equal to L(s+1/2)^2 / L(2s+1)."""
    s = _coerce(s)
    if _real_part(s) <= -0.5 and not continue_analytically:
        raise DomainError(f"J1 converges only for Re s > -1/2, got s={s}")
    t = s + Fraction(1, 2) if isinstance(s, Fraction) else s + 0.5
    if F.kind == "nonarch":
        X = q_power(F.q, t)
        if _near(X, Fraction(1)):
            raise PoleError(f"J1 has a pole at s={s}")
        return (1 + X) / (1 - X)
    if F.kind == "real":
        return _gamma_value(t / 2) ** 2 / _gamma_value(t)
    return 2 * _gamma_value(t) ** 2 / _gamma_value(2 * t)


def j1_series(s, q: int, depth: int):
    """Partial sum 1 + 2 sum_{k=1}^{depth} q^{-k(s+1/2)}."""
    s = _coerce(s)
    t = s + Fraction(1, 2) if isinstance(s, Fraction) else s + 0.5
    X = q_power(q, t)
    total, term = 1, 1
    for _ in range(depth):
        term = term * X
        total = total + 2 * term
    return total


def j1_series_limit(s, q: int) -> Fraction:
    """Resummed series 1 + 2X/(1-X) with X = q^{-(s+1/2)}, exact when X is rational."""
    s = _coerce(s)
    X = q_power(q, s + Fraction(1, 2))
    if not isinstance(X, Fraction):
        raise ValueError("resummation is exact only when q^{-(s+1/2)} is rational")
    if not 0 < X < 1:
        raise DomainError("the geometric series diverges")
    return 1 + 2 * X / (1 - X)


def j1_real_quadrature(t: float) -> float:
    """2 * int_0^inf (x / (1 + x^2))^t dx / x, substituted x = e^u."""
    from scipy.integrate import quad

    def integrand(u):
        # log(2 cosh u) = u + log1p(e^{-2u}) for u >= 0
        return math.exp(-t * (u + math.log1p(math.exp(-2 * u))))

    value, _ = quad(integrand, 0, math.inf, epsabs=0, epsrel=1e-12, limit=200)
    return 4 * value


# -- factored local factors ------------------------------------------------


@dataclass(frozen=True)
class LAtom:
    """L(c . lambda + shift, 1_F)^power; power < 0 puts the atom in the denominator."""

    coeffs: tuple
    shift: Fraction
    power: int = 1

    def argument(self, lam):
        total = self.shift
        for c, x in zip(self.coeffs, lam):
            if c:
                total = total + c * x
        return total

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 1:
                terms.append(f"l{i}")
            elif c:
                terms.append(f"{c}*l{i}")
        arg = "+".join(terms) or "0"
        if self.shift:
            arg += f"+{self.shift}" if self.shift > 0 else f"{self.shift}"
        body = f"L({arg})"
        return body if self.power == 1 else f"{body}^{self.power}"


@dataclass(frozen=True)
class LocalFactor:
    atoms: tuple

    def _points(self, lam, F):
        return [(a, _coerce(a.argument(lam))) for a in self.atoms]

    def pole_order(self, lam, F: LocalField) -> int:
        """Net pole multiplicity of the product at lam (negative for a zero)."""
        net = 0
        for a, s in self._points(lam, F):
            if F.kind == "nonarch":
                hit = _near(q_power(F.q, s), Fraction(1))
            elif F.kind == "real":
                hit = _is_nonpositive_integer(s / 2)
            else:
                hit = _is_nonpositive_integer(s)
            if hit:
                net += a.power
        return net

    def evaluate(self, lam, F: LocalField):
        lam = [_coerce(x) for x in lam]
        order = self.pole_order(lam, F)
        if order > 0:
            raise PoleError(f"pole of order {order} at ({', '.join(map(str, lam))})")
        if order < 0:
            return Fraction(0)
        value = Fraction(1)
        for a, s in self._points(lam, F):
            try:
                v = local_L_triv(s, F)
            except PoleError:
                raise PoleError(f"cancelling poles at ({', '.join(map(str, lam))}); evaluate by continuity") from None
            value = value * v**a.power
        return value

    def __str__(self):
        num = [str(a) for a in self.atoms if a.power > 0]
        den = [str(LAtom(a.coeffs, a.shift, -a.power)) for a in self.atoms if a.power < 0]
        return f"[{' '.join(num) or '1'}] / [{' '.join(den) or '1'}]"


def _unit(n, *idx, scale=1):
    c = [0] * n
    for i in idx:
        c[i] += scale
    return tuple(c)


def cw_factor(n: int) -> LocalFactor:
    atoms = []
    for i in range(n):
        for j in range(i + 1, n):
            atoms.append(LAtom(_unit(n, i, j), Fraction(0), 1))
            atoms.append(LAtom(_unit(n, i, j), Fraction(1), -1))
    return LocalFactor(tuple(atoms))


def j1_factor(n: int, i: int) -> tuple:
    return (LAtom(_unit(n, i), Fraction(1, 2), 2), LAtom(_unit(n, i, scale=2), Fraction(1), -1))


def jn_factor(n: int) -> LocalFactor:
    atoms = list(cw_factor(n).atoms)
    for i in range(n):
        atoms.extend(j1_factor(n, i))
    return LocalFactor(tuple(atoms))


def _check_domain(lam, continue_analytically):
    if continue_analytically:
        return
    for i, a in enumerate(lam):
        if _real_part(a) <= -0.5:
            raise DomainError(f"need Re lambda_{i + 1} > -1/2, got {a}")
        for b in lam[i + 1 :]:
            if _real_part(a) + _real_part(b) <= 0:
                raise DomainError(f"need Re(lambda_i + lambda_j) > 0, got {a} + {b}")


def cw(lam: Sequence, F: LocalField, continue_analytically: bool = False):
    """prod_{i<j} L(l_i + l_j) / L(l_i + l_j + 1)."""
    lam = [_coerce(x) for x in lam]
    if not continue_analytically:
        for i, a in enumerate(lam):
            for b in lam[i + 1 :]:
                if _real_part(a) + _real_part(b) <= 0:
                    raise DomainError(f"c_w converges for Re(lambda_i + lambda_j) > 0, got {a} + {b}")
    return cw_factor(len(lam)).evaluate(lam, F)


def Jn(lam: Sequence, F: LocalField, continue_analytically: bool = False):
    """c_w(lambda) prod_j J1(lambda_j)."""
    lam = [_coerce(x) for x in lam]
    if not lam:
        raise ValueError("lambda must be non-empty")
    _check_domain(lam, continue_analytically)
    if continue_analytically:
        return jn_factor(len(lam)).evaluate(lam, F)
    value = cw(lam, F)
    for x in lam:
        value = value * J1(x, F)
    return value


def is_pole(lam: Sequence, F: LocalField) -> bool:
    return jn_factor(len(lam)).pole_order([_coerce(x) for x in lam], F) > 0


# -- symbolic global factor ------------------------------------------------


@dataclass(frozen=True)
class SymbolicAtom:
    """A named L-value: kind is 'L', 'Res' (residue at s=1) or 'Res_zeta'."""

    kind: str
    rep: str = ""
    arg: str = "s"
    twist: str = ""
    power: int = 1

    def __str__(self):
        if self.kind == "Res_zeta":
            body = "Res_{s=1} zeta_F(s)"
        elif self.kind == "Res":
            body = f"Res_{{s=1}} L(s, {self.rep}{', ' + self.twist if self.twist else ''})"
        else:
            body = f"L({self.arg}, {self.rep}{', ' + self.twist if self.twist else ''})"
        return body if self.power == 1 else f"{body}^{self.power}"


@dataclass(frozen=True)
class SymbolicLFactor:
    numerator: tuple = ()
    denominator: tuple = ()

    def __mul__(self, other: "SymbolicLFactor") -> "SymbolicLFactor":
        return SymbolicLFactor(self.numerator + other.numerator, self.denominator + other.denominator)

    @property
    def atoms(self) -> tuple:
        return self.numerator + self.denominator

    def pretty(self) -> str:
        num = " * ".join(map(str, self.numerator)) or "1"
        if not self.denominator:
            return num
        return f"{num} / ({' * '.join(map(str, self.denominator))})"

    def as_dict(self) -> dict:
        return {"numerator": [str(a) for a in self.numerator], "denominator": [str(a) for a in self.denominator]}


def _label_name(label) -> str:
    return str(getattr(label, "id", label))


def _label_size(label):
    return getattr(label, "gl_size", None)


def assemble_L_sigma(orbit, labels: Sequence) -> SymbolicLFactor:
    """Product over pairs and single blocks of the orbit's data.

    labels lists one cuspidal label per (r_i, r_i) pair followed by one per
    s_j block.  A label may be a plain string or any object with id and
    gl_size attributes (sizes are then checked).
    """
    data = orbit.data
    r_list, s_list = data.r_list, data.s_list
    labels = list(labels)
    if len(labels) != len(r_list) + len(s_list):
        raise ValueError(f"expected {len(r_list) + len(s_list)} labels, got {len(labels)}")
    out = SymbolicLFactor()
    for i, (r, sigma) in enumerate(zip(r_list, labels), start=1):
        if _label_size(sigma) not in (None, r):
            raise ValueError(f"label {_label_name(sigma)} does not live on GL_{r}")
        name = _label_name(sigma)
        out = out * SymbolicLFactor(
            (
                SymbolicAtom("L", name, f"l{i}+1/2", power=2),
                SymbolicAtom("L", name, f"2*l{i}", "wedge2"),
                SymbolicAtom("Res", f"{name} x {name}~"),
            ),
            (SymbolicAtom("L", name, f"2*l{i}+1", "sym2"),),
        )
    for s, tau in zip(s_list, labels[len(r_list) :]):
        size = _label_size(tau)
        if size not in (None, s):
            raise ValueError(f"label {_label_name(tau)} does not live on GL_{s}")
        if s == 1:
            if getattr(tau, "is_trivial_char", True) is False:
                raise ValueError("a size-one block must carry the trivial character")
            out = out * SymbolicLFactor((SymbolicAtom("Res_zeta"),))
        elif s % 2 == 0:
            name = _label_name(tau)
            out = out * SymbolicLFactor((SymbolicAtom("L", name, "1/2"), SymbolicAtom("Res", name, twist="wedge2")))
        else:
            raise ValueError(f"odd block size {s} > 1 does not occur in a cuspidal orbit")
    return out
