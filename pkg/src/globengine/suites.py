"""Seeded randomized and exhaustive law suites, shared by the CLI and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import fixtures
from .exactla import identity
from .gpc import (
    GpcFailure,
    check_gpc,
    faithfulness_defect,
    ind_on_morphisms,
    induce,
)
from .globalize import cover_roundtrip, gl, is_proper
from .psets import (
    canonical_bijection,
    coequalizer_globalize,
    globalize_quotient,
    actions_on,
    nonempty_subsets,
    restrict,
    small_groups,
    verify_phi_psi,
)
from .randomdata import random_cover, random_cover_morphism_into
from .verdicts import Verdict

DEFAULT_SEED = 20240611


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)   # (case id, Verdict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, case, verdict: Verdict):
        self.cases += 1
        if not verdict:
            self.failures.append((case, verdict))

    def summary(self) -> dict:
        return {
            "suite": self.name,
            "cases": self.cases,
            "failures": len(self.failures),
            "first_failures": [
                {"case": str(c), "law": v.law, "witness": repr(v.witness), "detail": v.detail}
                for c, v in self.failures[:5]
            ],
        }


def _covers(count: int, seed: int, max_dim: int):
    rng = random.Random(seed)
    cos = fixtures.coalgebras()
    for i in range(count):
        yield i, random_cover(rng, cos, max_dim, f"rand{i}")


def roundtrip_suite(count: int = 200, seed: int = DEFAULT_SEED, max_dim: int = 6) -> SuiteResult:
    out = SuiteResult("cover round trips")
    for i, c in _covers(count, seed, max_dim):
        out.record(i, cover_roundtrip(c))
    return out


def gp_regression_suite(count: int = 500, seed: int = DEFAULT_SEED, max_dim: int = 6) -> SuiteResult:
    """Every induced datum passes both GP checks (re-run on the bare datum)."""
    out = SuiteResult("induced data are geometric")
    for i, c in _covers(count, seed, max_dim):
        X, _ = induce(c)
        r = check_gpc(X.datum)
        out.record(i, r.verdict if isinstance(r, GpcFailure) else Verdict.passed("GP"))
    return out


def functor_suite(count: int = 100, seed: int = DEFAULT_SEED, max_dim: int = 5) -> SuiteResult:
    """Identities, composition, and faithfulness on proper targets."""
    out = SuiteResult("Ind functor laws")
    rng = random.Random(seed)
    cos = fixtures.coalgebras()
    for i in range(count):
        target = random_cover(rng, cos, max_dim, f"t{i}")
        Xt, _ = induce(target)
        ident = ind_on_morphisms(identity(target.Y.space), identity(target.X), target, target, (Xt, Xt))
        out.record((i, "identity"), Verdict(
            ident.f_bullet == identity(Xt.XbulletH), "identity", i, "Ind(id) ≠ id"))

        mid, F1, f1 = random_cover_morphism_into(target, rng, max_dim, f"m{i}")
        src, F2, f2 = random_cover_morphism_into(mid, rng, max_dim, f"s{i}")
        Xm, _ = induce(mid)
        Xs, _ = induce(src)
        a = ind_on_morphisms(F1, f1, mid, target, (Xm, Xt))
        b = ind_on_morphisms(F2, f2, src, mid, (Xs, Xm))
        ab = ind_on_morphisms(F1 @ F2, f1 @ f2, src, target, (Xs, Xt))
        out.record((i, "composition"), Verdict(a @ b == ab, "composition", i, "Ind(FG) ≠ Ind(F)Ind(G)"))

        # faithfulness needs a proper target; Gl(Ind(target)) always is one
        proper_target = gl(Xt)
        if not is_proper(proper_target):
            out.record((i, "faithful"), Verdict.failed("faithful", i, "Gl(Ind(c)) not proper"))
            continue
        d = faithfulness_defect(mid.Y, proper_target)
        out.record((i, "faithful"), Verdict(d == 0, "faithful", i, f"{d}-dim space of colinear D with p'D = 0"))
    return out


def pset_cases(max_order: int = 6, max_carrier: int = 5):
    """Every restriction of every action of a small group to a nonempty subset."""
    for G in small_groups(max_order):
        for n in range(1, max_carrier + 1):
            for k, Y in enumerate(actions_on(G, n)):
                for S in nonempty_subsets(range(n)):
                    yield (G.name, n, k, S), restrict(Y, S, f"{Y.name}#{k}/{S}")


def pset_oracle_suite(max_order: int = 6, max_carrier: int = 5, sample: int | None = None,
                      seed: int = DEFAULT_SEED) -> SuiteResult:
    """Quotient and coequalizer constructions agree and the witness maps verify.

    ``sample`` restricts to a seeded uniform sample of that many cases.
    """
    out = SuiteResult("set globalization oracles")
    cases = pset_cases(max_order, max_carrier)
    if sample is not None:
        cases = list(cases)
        rng = random.Random(seed)
        cases = rng.sample(cases, min(sample, len(cases)))
    for case, P in cases:
        A = globalize_quotient(P)
        B = coequalizer_globalize(P, check=False)
        if canonical_bijection(B, A) is None:
            out.record(case, Verdict.failed("agreement", case, "constructions disagree"))
            continue
        out.record(case, verify_phi_psi(P))
    return out
