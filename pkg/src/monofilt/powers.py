"""Recursive filtration builder for the powers of an ideal, with analyzers.

For each level n the builder produces a prime filtration of R/(T(n) + J) by
splicing along multiplication by a certified superficial element x of order m:
the subquotient filtered by ((J : x), n - m) lifts through x, the quotient by
x recurses at the same n with a larger annihilator, and multiplicities add
exactly.  Three base cases bound the recursion: level 0 or a unit base ideal
is the zero module, a level whose term ideal has fallen inside the
annihilator repeats one fixed filtration forever, and any level the
certificates cannot reach falls back to the greedy construction and is
flagged.  The analyzers summarize the union of prime factors across the
sweep, detect stabilization of the per-level prime sets, and fit the growth
exponent of each prime's multiplicity.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from .decomposition import associated_primes
from .errors import CertificateError
from .filtration import PrimeFiltration, glue, naive_prime_filtration, validate
from .ring import Monomial, MonomialIdeal, RingContext, ideal, zero_ideal
from .superficial import (
    CyclicFilteredModule,
    SuperficialCertificate,
    TermSystem,
    search_certificate,
)


class FiltrationEngine:
    """Shared state for one sweep: term ideals, certificates, and memoized builds."""

    def __init__(
        self,
        I: MonomialIdeal,
        *,
        term_fn: "Callable[[int], MonomialIdeal] | None" = None,
        order_max: int = 3,
        c_max: int = 6,
        verify_to: int = 24,
    ):
        if I.is_zero() or I.is_unit():
            raise ValueError("the filtration ideal must be proper and nonzero")
        self.ts = TermSystem(I, term_fn)
        self.ctx = I.ctx
        self.order_max = order_max
        self.c_max = c_max
        self.verify_to = verify_to
        self._certs = {}
        self._memo = {}
        self._stationary = {}
        self.glue_nodes = {}
        self.fallback_nodes = {}

    def certificate(self, J: MonomialIdeal) -> Optional[SuperficialCertificate]:
        if J not in self._certs:
            self._certs[J] = search_certificate(
                self.ts, J, self.order_max, self.c_max, self.verify_to
            )
        return self._certs[J]

    def root_certificate(self) -> Optional[SuperficialCertificate]:
        return self.certificate(zero_ideal(self.ctx))

    def filtration(self, n: int, J: "MonomialIdeal | None" = None):
        """Filtration of R/(T(n) + J) plus a flag for greedy fallbacks in the subtree."""
        if J is None:
            J = zero_ideal(self.ctx)
        return self._build(J, max(n, 0))

    def _stationary_filtration(self, J: MonomialIdeal) -> PrimeFiltration:
        # One fixed filtration serves every level once T(n) sits inside J.
        if J not in self._stationary:
            self._stationary[J] = naive_prime_filtration(J)
        return self._stationary[J]

    def _build(self, J: MonomialIdeal, n: int):
        key = (J, n)
        if key in self._memo:
            return self._memo[key]
        base = self.ts.term_plus(J, n)
        if base.is_unit():
            result = (PrimeFiltration(base, ()), False)
        elif base == J:
            result = (self._stationary_filtration(J), False)
        else:
            result = self._build_glued(J, n, base)
        self._memo[key] = result
        return result

    def _build_glued(self, J: MonomialIdeal, n: int, base: MonomialIdeal):
        cert = self.certificate(J)
        if cert is None:
            return self._fallback(J, n, base, "no superficial certificate for this module")
        if n < cert.colon_threshold:
            return self._fallback(J, n, base, "level below the certified colon threshold")
        x, m = cert.element, cert.order
        left_ann = J.colon_monomial(x)
        expected = left_ann + self.ts.term(n - m)
        if base.colon_monomial(x) != expected:
            return self._fallback(J, n, base, "colon identity failed on recheck at this level")
        left, left_fb = self._build(left_ann, n - m)
        right, right_fb = self._build(J.add_monomial(x), n)
        glued = glue(base, x, left, right)
        self.glue_nodes[(J, n)] = {
            "multiplier": x,
            "order": m,
            "left": (left_ann, max(n - m, 0)),
            "right": (J.add_monomial(x), n),
        }
        return (glued, left_fb or right_fb)

    def _fallback(self, J: MonomialIdeal, n: int, base: MonomialIdeal, reason: str):
        self.fallback_nodes[(J, n)] = reason
        return (naive_prime_filtration(base), True)


def theorem_filtration(
    module: CyclicFilteredModule,
    n: int,
    engine: "FiltrationEngine | None" = None,
    **bounds,
) -> PrimeFiltration:
    """Certified recursive filtration of R/(I^n + J) for the given module."""
    if engine is None:
        engine = FiltrationEngine(module.filtration_ideal, **bounds)
    filtration, _ = engine.filtration(n, module.annihilator)
    return filtration


@dataclass(frozen=True)
class PowerRecord:
    n: int
    digest: str
    primes: tuple
    ledger: tuple  # sorted tuple of (MonomialPrime, multiplicity)
    ass: tuple
    fallback: bool
    steps: int


@dataclass(frozen=True)
class PowersReport:
    ctx: RingContext
    ideal: MonomialIdeal
    mode: str
    n_max: int
    window: int
    records: tuple
    primes_union: tuple
    stabilization: dict
    growth: tuple  # tuple of (MonomialPrime, exponent or None, points used)
    superficial: Optional[SuperficialCertificate]
    fallback_nodes: tuple
    filtrations: dict  # n -> PrimeFiltration; not serialized
    engine: Optional[FiltrationEngine]  # None in naive mode; not serialized

    def ledger_of(self, n: int) -> Counter:
        for record in self.records:
            if record.n == n:
                return Counter(dict(record.ledger))
        raise KeyError(n)

    def to_document(self) -> dict:
        ctx = self.ctx
        return {
            "ideal": self.ideal.generator_strings(),
            "mode": self.mode,
            "n_max": self.n_max,
            "window": self.window,
            "per_n": [
                {
                    "n": r.n,
                    "digest": r.digest,
                    "primes": [p.names(ctx) for p in r.primes],
                    "ledger": [
                        {"prime": p.names(ctx), "multiplicity": c} for p, c in r.ledger
                    ],
                    "ass": [p.names(ctx) for p in r.ass],
                    "fallback": r.fallback,
                    "steps": r.steps,
                    "validated": True,
                }
                for r in self.records
            ],
            "primes_union": [p.names(ctx) for p in self.primes_union],
            "stabilization": self.stabilization,
            "growth": [
                {
                    "prime": p.names(ctx),
                    "exponent": None if e is None else round(e, 6),
                    "points": k,
                }
                for p, e, k in self.growth
            ],
            "superficial": None if self.superficial is None else self.superficial.serialize(ctx),
            "fallback_nodes": [
                {"annihilator": list(map(ctx.monomial_str, J.generators)), "n": n, "reason": why}
                for J, n, why in self.fallback_nodes
            ],
        }


def filtration_digest(filtration: PrimeFiltration) -> str:
    payload = {
        "base": filtration.base.generator_strings(),
        "steps": filtration.serialize(),
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def fit_growth_exponent(points) -> Optional[float]:
    """Least-squares slope of log(multiplicity) against log(n).

    ``points`` holds (n, multiplicity) pairs with positive multiplicities;
    returns None when fewer than four points are available.
    """
    usable = [(n, mu) for n, mu in points if mu > 0]
    if len(usable) < 4:
        return None
    xs = [math.log(n) for n, _ in usable]
    ys = [math.log(mu) for _, mu in usable]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    denom = sum((x - mean_x) ** 2 for x in xs)
    if denom == 0:
        return None
    return sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / denom


def detect_stabilization(prime_sets, window: int, max_period: int) -> dict:
    """Classify the tail of the per-level prime sets as stable, periodic, or neither.

    Stable means a trailing constant run of at least ``window`` levels;
    failing that, periods up to ``max_period`` are tried over the trailing
    region.
    """
    count = len(prime_sets)
    run = 1
    while run < count and prime_sets[-run - 1] == prime_sets[-1]:
        run += 1
    if run >= window:
        return {"kind": "stable", "onset": count - run + 1, "window": window}
    for period in range(1, max_period + 1):
        span = window + period
        if span > count:
            break
        start = count - span
        if all(prime_sets[i] == prime_sets[i + period] for i in range(start, count - period)):
            return {"kind": "periodic", "period": period, "window": window}
    return {"kind": "none", "window": window}


def powers_report(
    I: MonomialIdeal,
    n_max: int,
    mode: str = "theorem",
    *,
    window: int = 4,
    order_max: int = 3,
    c_max: int = 6,
    verify_to: "int | None" = None,
    jobs: int = 1,
    term_fn: "Callable[[int], MonomialIdeal] | None" = None,
) -> PowersReport:
    """Sweep n = 1..n_max, validate every filtration, and run the analyzers.

    Raises :class:`CertificateError` if any emitted filtration fails
    re-validation, which pipelines surface as exit code 2.
    """
    if mode not in ("naive", "theorem"):
        raise ValueError(f"unknown mode '{mode}'")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if I.is_zero() or I.is_unit():
        raise ValueError("the ideal must be proper and nonzero")
    verify_to = 2 * n_max if verify_to is None else verify_to
    engine = None
    cert = None
    if mode == "theorem":
        engine = FiltrationEngine(
            I, term_fn=term_fn, order_max=order_max, c_max=c_max, verify_to=verify_to
        )
        cert = engine.root_certificate()
    ts = engine.ts if engine is not None else TermSystem(I, term_fn)

    def compute(n: int):
        if engine is not None:
            filtration, fell_back = engine.filtration(n)
        else:
            filtration, fell_back = naive_prime_filtration(ts.term(n)), False
        verdict = validate(filtration)
        if not verdict:
            raise CertificateError(
                f"filtration of level {n} failed validation at step {verdict.step}: {verdict.reason}"
            )
        ass = tuple(sorted(associated_primes(ts.term(n)), key=lambda p: p.support))
        ledger = filtration.ledger()
        record = PowerRecord(
            n=n,
            digest=filtration_digest(filtration),
            primes=filtration.primes(),
            ledger=tuple(sorted(ledger.items(), key=lambda item: item[0].support)),
            ass=ass,
            fallback=fell_back,
            steps=len(filtration.steps),
        )
        return record, filtration

    levels = list(range(1, n_max + 1))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(compute, levels))
    else:
        results = [compute(n) for n in levels]

    records = tuple(record for record, _ in results)
    filtrations = {record.n: f for record, f in results}
    union = sorted({p for r in records for p in r.primes}, key=lambda p: p.support)
    max_period = cert.order if cert is not None else 1
    stabilization = detect_stabilization([r.primes for r in records], window, max_period)
    upper_half = [r for r in records if r.n > n_max // 2]
    growth = []
    for p in union:
        points = [(r.n, dict(r.ledger).get(p, 0)) for r in upper_half]
        exponent = fit_growth_exponent(points)
        used = sum(1 for _, mu in points if mu > 0)
        growth.append((p, exponent, used))
    fallback_nodes = tuple(
        (J, n, reason)
        for (J, n), reason in sorted(
            (engine.fallback_nodes if engine is not None else {}).items(),
            key=lambda item: (item[0][1], item[0][0].generators),
        )
    )
    return PowersReport(
        ctx=I.ctx,
        ideal=I,
        mode=mode,
        n_max=n_max,
        window=window,
        records=records,
        primes_union=tuple(union),
        stabilization=stabilization,
        growth=tuple(growth),
        superficial=cert,
        fallback_nodes=fallback_nodes,
        filtrations=filtrations,
        engine=engine,
    )


@dataclass(frozen=True)
class AssStabilityReport:
    ctx: RingContext
    ideal: MonomialIdeal
    n_max: int
    window: int
    per_n: tuple  # tuple of (n, tuple of primes)
    union: tuple
    onset: Optional[int]

    def to_document(self) -> dict:
        ctx = self.ctx
        return {
            "ideal": self.ideal.generator_strings(),
            "n_max": self.n_max,
            "window": self.window,
            "per_n": [
                {"n": n, "ass": [p.names(ctx) for p in primes]} for n, primes in self.per_n
            ],
            "union": [p.names(ctx) for p in self.union],
            "onset": self.onset,
        }


def ass_stability(I: MonomialIdeal, n_max: int, window: int = 4) -> AssStabilityReport:
    """Associated primes of R/I^n per level, their union, and the detected onset.

    The onset is the first level of the maximal trailing run of constant Ass
    sets, reported only when the run covers at least ``window`` levels.
    """
    if I.is_zero() or I.is_unit():
        raise ValueError("the ideal must be proper and nonzero")
    ts = TermSystem(I)
    per_n = []
    for n in range(1, n_max + 1):
        primes = tuple(sorted(associated_primes(ts.term(n)), key=lambda p: p.support))
        per_n.append((n, primes))
    union = sorted({p for _, primes in per_n for p in primes}, key=lambda p: p.support)
    run = 1
    while run < n_max and per_n[-run - 1][1] == per_n[-1][1]:
        run += 1
    onset = n_max - run + 1 if run >= window else None
    return AssStabilityReport(
        ctx=I.ctx,
        ideal=I,
        n_max=n_max,
        window=window,
        per_n=tuple(per_n),
        union=tuple(union),
        onset=onset,
    )


def bad_filtration_fixture(ctx: RingContext, n: int, f: Monomial) -> PrimeFiltration:
    """A valid but badly chosen filtration of R/(x^n), x the first variable.

    Splicing along the witness f*x^(n-1) drags the minimal primes of (f, x)
    into the factor set, so the prime factors depend on the choices made;
    with f = 1 the construction degenerates to the good filtration.  Negative
    control for the finite-factor-set behavior of the certified builder.
    """
    if n < 1:
        raise ValueError("the power must be at least 1")
    if f[0] != 0:
        raise ValueError("f must avoid the first variable")
    xn = [0] * ctx.num_vars
    xn[0] = n
    base = ideal(ctx, [tuple(xn)])
    lift = list(f)
    lift[0] = n - 1
    w = tuple(lift)
    left = naive_prime_filtration(base.colon_monomial(w))
    right = naive_prime_filtration(base.add_monomial(w))
    return glue(base, w, left, right)
