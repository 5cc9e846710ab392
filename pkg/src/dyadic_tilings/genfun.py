"""The chain-tree generating function and decay-rate certificates.

Chain trees of depth n are generated by the two-variable polynomial obtained
from f_0(q, z) = z by iterating the substitution

    f_{n+1}(q, z) = f_n(q*(1 + z), 4*q*z),

where the coefficient of q^beta z^gamma counts depth-n trees whose leaf
chains carry beta bonds and gamma chains in total. The diagonal values

    a_n = f_n(q, q),    a_0 = q,  a_1 = 4q^2

bound the probability that the unit square is blocked when tiles are removed
independently with probability q, and obey a division-free recurrence via the
running ratio Q_1 = 4q, Q_{n+1} = Q_n + a_n, a_{n+1} = a_n * Q_{n+1} (the
ratio form a_{n+1}/a_n = a_n/a_{n-1} + a_n is the same identity).

Two certificate shapes prove geometric decay of a_n, hence lower bounds
1 - X^n on the tiling probability at p = 1 - q:

  ratio    if a_k < a_{k-1} and (1 - Q_k)^2 >= 4*a_k, then a_n decays at rate
           X = (1 + Q_k)/2 from index k on;
  optimal  any rational X with Q_k + a_k/(1 - X) <= X < 1 gives
           a_n < a_0 * X^n for n >= k, and bisection finds the smallest such
           X to any tolerance.

Both run either on exact rationals (bit sizes grow fast in k) or on
outward-rounded dyadic intervals of configurable width, where a certificate
that the interval conditions hold is still an exact proof. The interval
search never reports a certificate that the true values would not satisfy.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .intervals import (
    DEFAULT_BITS,
    MAX_BITS,
    PrecisionError,
    RatInterval,
    _cmp,
    round_down,
    round_up,
)
from .polynomials import BiPoly

Scalar = Union[Fraction, RatInterval]

GENFUN_POLY_MAX_DEPTH = 4


def genfun_eval(depth: int, q: Scalar, z: Scalar) -> Scalar:
    """f_depth(q, z), generic over exact rationals and intervals."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    for _ in range(depth):
        q, z = q * (1 + z), 4 * q * z
    return z


def genfun_poly(depth: int) -> BiPoly:
    """The generating polynomial itself, as a sparse (q, z) polynomial."""
    if not (0 <= depth <= GENFUN_POLY_MAX_DEPTH):
        raise ValueError(f"depth must be in [0, {GENFUN_POLY_MAX_DEPTH}]")
    f = BiPoly.var_z()
    one_plus_z = BiPoly.const(1) + BiPoly.var_z()
    q_sub = BiPoly.var_q() * one_plus_z
    z_sub = (BiPoly.var_q() * BiPoly.var_z()).scale(4)
    for _ in range(depth):
        f = f.compose(q_sub, z_sub)
    return f


def decay_sequence(q: Scalar, k_max: int) -> list[Scalar]:
    """[a_0, ..., a_k_max] along the diagonal z = q."""
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    out = [q]
    if k_max == 0:
        return out
    ratio = 4 * q
    a = q * ratio
    out.append(a)
    for _ in range(2, k_max + 1):
        ratio = ratio + a
        a = a * ratio
        out.append(a)
    return out


def dec_digits(n: int) -> int:
    """Decimal digit count of |n| without forming the decimal string."""
    n = abs(n)
    d = max(1, (n.bit_length() * 30103) // 100000)
    while 10**d <= n:
        d += 1
    return d


def _int_str(n: int) -> str:
    try:
        return str(n)
    except ValueError:
        sys.set_int_max_str_digits(dec_digits(n) + 16)
        return str(n)


def _allow_digits(count: int) -> None:
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is not None and get() < count:
        sys.set_int_max_str_digits(count)


# --------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class DecayCertificate:
    """A verified witness that a_n decays geometrically at rate <= rate_bound.

    kind 'ratio' certifies a_n <= a_k * rate^(n-k) for n >= k via the ratio
    condition; kind 'optimal' certifies a_n < a_0 * rate^n for n >= k. For the
    interval backend, ratio and rate are enclosures and rate_bound is the
    upper endpoint, still an exact certified rate.
    """

    q: Fraction
    k: int
    kind: str
    backend: str
    ratio: Scalar
    rate: Scalar
    a_prev: Optional[Scalar] = None
    a_k: Optional[Scalar] = None
    bits: Optional[int] = None

    @property
    def rate_bound(self) -> Fraction:
        x = self.rate.hi if isinstance(self.rate, RatInterval) else self.rate
        return Fraction(x)


def _validate_q(q: Fraction) -> Fraction:
    q = Fraction(q)
    if not (0 < q < 1):
        raise ValueError("removal probability q must lie strictly in (0, 1)")
    return q


def _ratio_conditions_rational(
    a_prev: Fraction, a_k: Fraction, ratio: Fraction
) -> bool:
    return a_k < a_prev and ratio < 1 and (1 - ratio) ** 2 >= 4 * a_k


def certify_decay(
    q,
    k: int,
    backend: str = "rational",
    bits: int = DEFAULT_BITS,
) -> Optional[DecayCertificate]:
    """Check the ratio conditions at exactly index k.

    Returns a certificate, or None when the conditions fail there (for the
    interval backend: when they cannot be confirmed at this precision).
    """
    q = _validate_q(q)
    if k < 1:
        raise ValueError("ratio certificates start at k = 1")
    if backend == "rational":
        seq = decay_sequence(q, k)
        a_prev, a_k = seq[k - 1], seq[k]
        ratio = a_k / a_prev
        if not _ratio_conditions_rational(a_prev, a_k, ratio):
            return None
        return DecayCertificate(
            q=q,
            k=k,
            kind="ratio",
            backend="rational",
            ratio=ratio,
            rate=(1 + ratio) / 2,
            a_prev=a_prev,
            a_k=a_k,
        )
    if backend == "interval":
        got = _interval_run(q, k, bits, fixed_k=k)
        if got[0] != "certified":
            return None
        return _interval_certificate(q, got)
    raise ValueError(f"unknown backend {backend!r}")


def find_decay_certificate(
    q,
    k_max: int,
    backend: str = "interval",
    bits: int = DEFAULT_BITS,
    escalate: bool = True,
) -> Optional[DecayCertificate]:
    """First index k <= k_max where the ratio conditions can be verified.

    With the interval backend, a precision collapse (the enclosure of some
    a_k ceasing to be positive) doubles the mantissa width and restarts, up
    to the global cap, when escalation is enabled.
    """
    q = _validate_q(q)
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if backend == "rational":
        a_prev = q
        ratio = 4 * q
        a = q * ratio
        for k in range(1, k_max + 1):
            if _ratio_conditions_rational(a_prev, a, ratio):
                return DecayCertificate(
                    q=q,
                    k=k,
                    kind="ratio",
                    backend="rational",
                    ratio=a / a_prev,
                    rate=(1 + a / a_prev) / 2,
                    a_prev=a_prev,
                    a_k=a,
                )
            ratio = ratio + a
            a_prev, a = a, a * ratio
        return None
    if backend == "interval":
        while True:
            got = _interval_run(q, k_max, bits, fixed_k=None)
            if got[0] == "certified":
                return _interval_certificate(q, got)
            if got[0] == "lost" and escalate and bits * 2 <= MAX_BITS:
                bits *= 2
                continue
            if got[0] == "lost":
                raise PrecisionError(
                    f"interval precision exhausted at {bits} bits near k={got[1]}"
                )
            return None
    raise ValueError(f"unknown backend {backend!r}")


def _interval_run(qf: Fraction, k_max: int, bits: int, fixed_k: Optional[int]):
    """Core interval iteration on raw dyadic endpoint pairs.

    Returns ('certified', k, state) at the first index (or exactly fixed_k)
    where the ratio conditions certainly hold, ('lost', k) when the precision
    no longer decides them (the enclosure of a_k loses positivity, or the
    enclosure of Q_k straddles 1), else ('exhausted',). state is a dict of
    endpoint pairs for a_{k-1}, a_k and Q_k.
    """
    qi = RatInterval.from_fraction(qf, bits)
    plo, ple, phi, phe = qi.lo_m, qi.lo_e, qi.hi_m, qi.hi_e  # a_{k-1}
    qlo, qle, qhi, qhe = plo, ple + 2, phi, phe + 2  # Q_k, exactly 4q at k=1
    alo, ale = round_down(plo * qlo, ple + qle, bits)  # a_k = a_0 * Q_1
    ahi, ahe = round_up(phi * qhi, phe + qhe, bits)
    k = 1
    while True:
        if alo <= 0:
            return ("lost", k)
        if fixed_k is None or k == fixed_k:
            # a_k certainly below a_{k-1}, Q_k certainly below 1, and
            # (1 - Q_k)^2 certainly at least 4 a_k
            if _cmp(ahi, ahe, plo, ple) < 0 and _cmp(qhi, qhe, 1, 0) < 0:
                sm, se = (
                    ((1 << -qhe) - qhi, qhe) if qhe <= 0 else (1 - (qhi << qhe), 0)
                )
                if _cmp(sm * sm, 2 * se, ahi, ahe + 2) >= 0:
                    state = {
                        "a_prev": (plo, ple, phi, phe),
                        "a_k": (alo, ale, ahi, ahe),
                        "Q": (qlo, qle, qhi, qhe),
                    }
                    return ("certified", k, state, bits)
            if fixed_k is not None:
                return ("exhausted",)
        # Q_k only grows with k, so once it is certainly at least 1 no later
        # index can certify; once its upper endpoint alone crosses 1 this
        # precision cannot decide (and letting a feed on Q > 1 would blow up
        # the exponents doubly exponentially)
        if _cmp(qlo, qle, 1, 0) >= 0:
            return ("exhausted",)
        if _cmp(qhi, qhe, 1, 0) >= 0:
            return ("lost", k)
        if k == k_max:
            return ("exhausted",)
        # advance: Q <- Q + a, then a <- a * Q, outward at every step
        e = min(qle, ale)
        qlo, qle = round_down((qlo << (qle - e)) + (alo << (ale - e)), e, bits)
        e = min(qhe, ahe)
        qhi, qhe = round_up((qhi << (qhe - e)) + (ahi << (ahe - e)), e, bits)
        plo, ple, phi, phe = alo, ale, ahi, ahe
        alo, ale = round_down(alo * qlo, ale + qle, bits)
        ahi, ahe = round_up(ahi * qhi, ahe + qhe, bits)
        k += 1


def _interval_certificate(q: Fraction, got) -> DecayCertificate:
    _, k, state, bits = got
    ivs = {
        name: RatInterval(lm, le, hm, he, bits)
        for name, (lm, le, hm, he) in state.items()
    }
    Q = ivs["Q"]
    rate = (1 + Q) * Fraction(1, 2)
    return DecayCertificate(
        q=q,
        k=k,
        kind="ratio",
        backend="interval",
        ratio=Q,
        rate=rate,
        a_prev=ivs["a_prev"],
        a_k=ivs["a_k"],
        bits=bits,
    )


def certify_optimal(q, k: int, x) -> Optional[DecayCertificate]:
    """Exact check of the refined rate condition Q_k + a_k/(1-x) <= x < 1."""
    q = _validate_q(q)
    x = Fraction(x)
    if k < 1:
        raise ValueError("optimal certificates start at k = 1")
    if not (0 < x < 1):
        return None
    seq = decay_sequence(q, k)
    a_prev, a_k = seq[k - 1], seq[k]
    ratio = a_k / a_prev
    if ratio + a_k / (1 - x) > x:
        return None
    return DecayCertificate(
        q=q,
        k=k,
        kind="optimal",
        backend="rational",
        ratio=ratio,
        rate=x,
        a_prev=a_prev,
        a_k=a_k,
    )


def optimal_rate(q, k: int, tol) -> Optional[Fraction]:
    """Smallest certifiable rate at index k, to within tol, by bisection.

    Feasible rates form [X-, X+] with X± the roots of (x - Q_k)(1 - x) = a_k;
    the interval is nonempty iff the plain ratio condition holds at k. The
    returned rate always satisfies the exact condition.
    """
    q = _validate_q(q)
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    seq = decay_sequence(q, k)
    a_prev, a_k = seq[k - 1], seq[k]
    ratio = a_k / a_prev
    if not (ratio < 1 and (1 - ratio) ** 2 >= 4 * a_k):
        return None

    def feasible(x: Fraction) -> bool:
        return ratio + a_k / (1 - x) <= x

    lo, hi = ratio, (1 + ratio) / 2  # infeasible .. feasible
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def tiling_bound(p, n: int, cert: DecayCertificate) -> Fraction:
    """Certified lower bound on the order-n tiling probability at p = 1 - q.

    Returns 1 - X^n for ratio certificates and 1 - q * X^n for optimal ones,
    valid for n >= cert.k. A rate whose exact representation is huge is first
    rounded up to a 256-bit dyadic, which keeps the bound valid and the
    output small.
    """
    p = Fraction(p)
    if cert.q != 1 - p:
        raise ValueError(f"certificate is for q={cert.q}, not 1-p={1 - p}")
    if n < cert.k:
        raise ValueError(f"certificate applies from n={cert.k} on")
    x = cert.rate_bound
    if x.numerator.bit_length() > 256 or x.denominator.bit_length() > 256:
        relaxed = RatInterval.from_fraction(x, 256).hi
        if relaxed < 1:
            x = relaxed
    if not (0 < x < 1):
        raise ValueError("certificate rate is not in (0, 1)")
    if cert.kind == "optimal":
        return 1 - cert.q * x**n
    return 1 - x**n


# --------------------------------------------------------------------------
# transcripts


def _enc_scalar(v: Optional[Scalar]):
    if v is None:
        return None
    if isinstance(v, RatInterval):
        return {"type": "interval", "hex": v.to_hex(), "bits": v.bits}
    v = Fraction(v)
    return {
        "type": "rational",
        "value": f"{_int_str(v.numerator)}/{_int_str(v.denominator)}",
    }


def _dec_scalar(obj):
    if obj is None:
        return None
    if obj["type"] == "interval":
        return RatInterval.from_hex(obj["hex"], obj["bits"])
    num, den = obj["value"].split("/")
    _allow_digits(max(len(num), len(den)) + 16)
    return Fraction(int(num), int(den))


def transcript(cert: DecayCertificate, p=None) -> dict:
    """A self-contained, re-checkable record of a certificate."""
    out = {
        "schema": "decay-certificate/1",
        "kind": cert.kind,
        "backend": cert.backend,
        "k": cert.k,
        "bits": cert.bits,
        "q": f"{cert.q.numerator}/{cert.q.denominator}",
        "p": None if p is None else f"{Fraction(p).numerator}/{Fraction(p).denominator}",
        "Q_k": _enc_scalar(cert.ratio),
        "X": _enc_scalar(cert.rate),
        "a_prev": _enc_scalar(cert.a_prev),
        "a_k": _enc_scalar(cert.a_k),
    }
    if cert.backend == "rational" and cert.a_k is not None:
        out["digits"] = {
            "a_k_numerator": dec_digits(cert.a_k.numerator),
            "a_k_denominator": dec_digits(cert.a_k.denominator),
        }
    return out


def verify_transcript(obj: dict) -> tuple[bool, list[str]]:
    """Recompute the certificate a transcript claims and compare fields.

    Returns (ok, messages); any mismatch, failed condition, or malformed
    field appears in messages.
    """
    msgs: list[str] = []
    try:
        if obj.get("schema") != "decay-certificate/1":
            return False, [f"unknown schema {obj.get('schema')!r}"]
        kind, backend, k = obj["kind"], obj["backend"], int(obj["k"])
        qn, qd = obj["q"].split("/")
        q = Fraction(int(qn), int(qd))
        if obj.get("p") is not None:
            pn, pd = obj["p"].split("/")
            if Fraction(int(pn), int(pd)) != 1 - q:
                msgs.append("p and q fields are inconsistent")
        if kind == "ratio":
            cert = certify_decay(
                q, k, backend=backend, bits=obj.get("bits") or DEFAULT_BITS
            )
        elif kind == "optimal":
            x = _dec_scalar(obj["X"])
            cert = certify_optimal(q, k, x)
        else:
            return False, [f"unknown certificate kind {kind!r}"]
        if cert is None:
            msgs.append("recomputation does not certify these parameters")
            return False, msgs
        fresh = transcript(cert, p=None)
        for key in ("Q_k", "X", "a_prev", "a_k", "digits"):
            if key in (set(fresh) | set(obj)) and fresh.get(key) != obj.get(key):
                msgs.append(f"field {key!r} does not match recomputation")
    except (KeyError, ValueError, TypeError) as exc:
        return False, [f"malformed transcript: {exc}"]
    return not msgs, msgs
