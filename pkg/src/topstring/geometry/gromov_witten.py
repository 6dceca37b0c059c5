"""Gromov-Witten tables and the generating functions built from them.

Quantum Yukawa coupling (genus 0)::

    C_abc = kappa_abc + sum_n n_a n_b n_c N0_n q^n / (1 - q^n)

Genus-one derivative in the holomorphic limit::

    (i/2pi) dF_1/dt^a = (-1)^chat/24 c2_a
                        - sum_n n_a N1_n sum_m m q^{mn} / (1 - q^{mn})
                        - 1/12 sum_n n_a N0_n q^n / (1 - q^n)

with q^n = prod_a q_a^{n_a} and q_a = exp(2 pi i t^a).  The coefficient views
expand the geometric series: q^n/(1-q^n) = sum_{m>=1} q^{mn} and
sum_m m q^{mn}/(1-q^{mn}) = sum_{k>=1} sigma1(k) q^{kn}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .._precision import DEFAULT_PREC, to_mpc, workprec
from ..exact import sigma1
from ..qseries import TruncatedSeries

__all__ = [
    "GWTable",
    "GWTableError",
    "load_gw_table",
    "quantum_yukawa",
    "quantum_yukawa_coefficients",
    "quantum_yukawa_series",
    "genus1_gw_coefficients",
    "genus1_gw_series",
]

Degree = Tuple[int, ...]

_JSON_FIELDS = {"h11", "chat", "kappa", "c2", "N0", "N1"}


class GWTableError(ValueError):
    pass


def _parse_degree(key: str) -> Degree:
    try:
        return tuple(int(x) for x in key.split(","))
    except ValueError:
        raise GWTableError(f"bad degree vector {key!r}") from None


@dataclass(frozen=True)
class GWTable:
    h11: int
    kappa: np.ndarray
    c2: Tuple[int, ...]
    chat: int = 3
    N0: Mapping[Degree, int] = field(default_factory=dict)
    N1: Mapping[Degree, int] = field(default_factory=dict)

    def __post_init__(self):
        kappa = np.array(self.kappa, dtype=object)
        if kappa.shape != (self.h11,) * 3:
            raise GWTableError(f"kappa must have shape {(self.h11,) * 3}, got {kappa.shape}")
        for idx in np.ndindex(kappa.shape):
            for perm in permutations(idx):
                if kappa[perm] != kappa[idx]:
                    raise GWTableError(f"kappa not symmetric at {idx}")
        if len(self.c2) != self.h11:
            raise GWTableError(f"c2 must have length {self.h11}")
        for name in ("N0", "N1"):
            table = {tuple(k): v for k, v in getattr(self, name).items()}
            for deg in table:
                if len(deg) != self.h11 or any(d < 0 for d in deg) or not any(deg):
                    raise GWTableError(f"{name}: invalid degree vector {deg}")
            object.__setattr__(self, name, table)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "c2", tuple(self.c2))

    @classmethod
    def from_dict(cls, doc: Mapping) -> "GWTable":
        unknown = set(doc) - _JSON_FIELDS
        if unknown:
            raise GWTableError(f"unknown fields: {sorted(unknown)}")
        missing = {"h11", "kappa", "c2"} - set(doc)
        if missing:
            raise GWTableError(f"missing fields: {sorted(missing)}")
        h11 = int(doc["h11"])
        return cls(
            h11=h11,
            kappa=doc["kappa"],
            c2=tuple(doc["c2"]),
            chat=int(doc.get("chat", 3)),
            N0={_parse_degree(k): int(v) for k, v in doc.get("N0", {}).items()},
            N1={_parse_degree(k): int(v) for k, v in doc.get("N1", {}).items()},
        )

    @classmethod
    def from_json(cls, text: str) -> "GWTable":
        return cls.from_dict(json.loads(text))

    @property
    def c2_integrals(self) -> Tuple[int, ...]:
        return self.c2

    def to_dict(self) -> dict:
        enc = lambda tbl: {",".join(map(str, k)): v for k, v in sorted(tbl.items())}
        return {
            "h11": self.h11,
            "chat": self.chat,
            "kappa": self.kappa.tolist(),
            "c2": list(self.c2),
            "N0": enc(self.N0),
            "N1": enc(self.N1),
        }


def load_gw_table(path) -> GWTable:
    with open(path) as fh:
        return GWTable.from_json(fh.read())


def _q_power(q: Sequence, n: Degree):
    out = 1
    for qa, na in zip(q, n):
        if na:
            out = out * qa**na
    return out


def quantum_yukawa(
    T: GWTable,
    q: Optional[Sequence] = None,
    t: Optional[Sequence] = None,
    prec: int = DEFAULT_PREC,
) -> np.ndarray:
    """C_abc at instanton parameters ``q`` (exact if rational) or moduli ``t``."""
    if (q is None) == (t is None):
        raise ValueError("pass exactly one of q or t")
    exact = q is not None and all(isinstance(x, (int, Fraction)) for x in q)
    with workprec(prec):
        if t is not None:
            q = [mpmath.exp(2j * mpmath.pi * to_mpc(x)) for x in t]
        elif not exact:
            q = [to_mpc(x) for x in q]
        else:
            q = [Fraction(x) for x in q]
        C = np.array(T.kappa, dtype=object) * (1 if exact else mpmath.mpf(1))
        for n, N in T.N0.items():
            if not N:
                continue
            qn = _q_power(q, n)
            if qn == 1:
                raise ZeroDivisionError(f"pole: q^{n} = 1")
            w = N * qn / (1 - qn)
            for idx in np.ndindex(C.shape):
                a, b, c = idx
                C[idx] = C[idx] + n[a] * n[b] * n[c] * w
        return C


def _scaled(n: Degree, m: int) -> Degree:
    return tuple(m * x for x in n)


def quantum_yukawa_coefficients(T: GWTable, dmax: int) -> Dict[Degree, np.ndarray]:
    """q^D coefficients of C_abc for total degree |D| <= dmax (D = 0 is kappa)."""
    h = T.h11
    out: Dict[Degree, np.ndarray] = {(0,) * h: np.array(T.kappa, dtype=object)}
    for n, N in T.N0.items():
        if not N:
            continue
        m = 1
        while m * sum(n) <= dmax:
            D = _scaled(n, m)
            tens = out.setdefault(D, np.zeros((h, h, h), dtype=object))
            for a, b, c in np.ndindex(tens.shape):
                tens[a, b, c] += n[a] * n[b] * n[c] * N
            m += 1
    return out


def quantum_yukawa_series(T: GWTable, dmax: int, a: int = 0, b: int = 0, c: int = 0) -> TruncatedSeries:
    """C_abc graded by total degree (all q_a set to one variable q)."""
    coeffs = [0] * (dmax + 1)
    for D, tens in quantum_yukawa_coefficients(T, dmax).items():
        coeffs[sum(D)] += tens[a, b, c]
    return TruncatedSeries(coeffs, dmax, "q")


def genus1_gw_coefficients(T: GWTable, qmax: int) -> List[Dict[Degree, Fraction]]:
    """For each modulus a, q^D coefficients of (i/2pi) dF_1/dt^a, |D| <= qmax."""
    h = T.h11
    zero = (0,) * h
    out: List[Dict[Degree, Fraction]] = []
    for a in range(h):
        coeffs: Dict[Degree, Fraction] = {zero: Fraction((-1) ** T.chat * T.c2[a], 24)}
        for n, N in T.N1.items():
            if not N or not n[a]:
                continue
            k = 1
            while k * sum(n) <= qmax:
                D = _scaled(n, k)
                coeffs[D] = coeffs.get(D, Fraction(0)) - n[a] * N * sigma1(k)
                k += 1
        for n, N in T.N0.items():
            if not N or not n[a]:
                continue
            m = 1
            while m * sum(n) <= qmax:
                D = _scaled(n, m)
                coeffs[D] = coeffs.get(D, Fraction(0)) - Fraction(n[a] * N, 12)
                m += 1
        out.append(coeffs)
    return out


def genus1_gw_series(T: GWTable, qmax: int) -> List[TruncatedSeries]:
    """Per modulus direction, the genus-one series graded by total degree."""
    if qmax < 1:
        raise ValueError(f"qmax must be >= 1, got {qmax}")
    series = []
    for coeffs in genus1_gw_coefficients(T, qmax):
        c = [Fraction(0)] * (qmax + 1)
        for D, v in coeffs.items():
            c[sum(D)] += v
        series.append(TruncatedSeries(c, qmax, "q"))
    return series
