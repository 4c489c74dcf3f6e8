"""Seeded random formulas for the QE-versus-oracle cross-check."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm

from .algebra.finite_field import FIELD_CAP
from .algebra.poly import CoeffDomain, MultiPoly
from .formula import And, Atom, EQ, Exists, Forall, NE, Not, Or
from .oracle import witness_bound

VARIABLES = ("x", "y", "z")
DEFAULT_SEED = 20240611
WORK_CAP = 4_000_000


@dataclass(frozen=True)
class GenConfig:
    max_vars: int = 3
    max_degree: int = 3
    max_atoms: int = 6
    max_terms: int = 4
    work_cap: int = WORK_CAP
    field_cap: int = FIELD_CAP


def _monomials(caps: dict, max_degree: int):
    out = [()]
    for v, cap in caps.items():
        out = [m + ((v, e),) if e else m for m in out for e in range(cap + 1)]
    return [m for m in out if sum(e for _, e in m) <= max_degree]


def random_poly(rng: random.Random, caps: dict, dom: CoeffDomain, cfg: GenConfig,
                focus: str | None = None) -> MultiPoly:
    """Random polynomial with per-variable degree caps; mentions ``focus`` when given."""
    monos = _monomials(caps, cfg.max_degree)
    lead = [m for m in monos if m and (focus is None or any(v == focus for v, _ in m))]
    char = dom.characteristic

    def coeff():
        c = rng.choice([-3, -2, -1, 1, 1, 2, 3])
        return 1 if char and c % char == 0 else c

    terms = {rng.choice(lead or monos): coeff()}
    for _ in range(rng.randint(0, cfg.max_terms - 1)):
        terms[rng.choice(monos)] = coeff()
    return MultiPoly(terms, dom)


def _bound_caps(rng, p, n_free, bound, cfg):
    """Degree caps for the quantified variables that keep the oracle within its caps."""
    caps = {}
    for v in bound:
        options = [d for d in (3, 2, 1) if d <= cfg.max_degree]
        rng.shuffle(options)
        caps[v] = options[0]
    # shrink the largest caps until the conservative search field fits
    while True:
        m = 2
        for d in caps.values():
            m *= lcm(*range(1, d + 1))
        size = p ** m
        work = (p ** 2) ** n_free * size ** len(caps)
        if size <= cfg.field_cap and work <= cfg.work_cap // 4 or all(d == 1 for d in caps.values()):
            return caps
        v = max(caps, key=caps.get)
        caps[v] -= 1


def random_formula(rng: random.Random, dom: CoeffDomain, cfg: GenConfig = GenConfig()):
    p = dom.characteristic or 5
    n = rng.randint(1, cfg.max_vars)
    vs = list(VARIABLES[:n])
    rng.shuffle(vs)
    n_bound = rng.choice([0] + [b for b in range(1, n + 1) for _ in range(2)])
    bound = vs[:n_bound]
    free = vs[n_bound:]
    caps = {v: cfg.max_degree for v in free}
    caps.update(_bound_caps(rng, p, len(free), bound, cfg))
    n_atoms = rng.randint(1, cfg.max_atoms)
    pending = list(bound)

    def gen(scope, k):
        if pending and (not scope or rng.random() < 0.5 or k == 1):
            v = pending.pop(0)
            q = Exists if rng.random() < 0.6 else Forall
            return q(v, gen(scope + [v], k))
        if k == 1:
            focus = scope[-1] if scope and scope[-1] in bound and rng.random() < 0.8 else None
            a = Atom(random_poly(rng, {v: caps[v] for v in scope}, dom, cfg, focus),
                     EQ if rng.random() < 0.55 else NE)
            return Not(a) if rng.random() < 0.1 else a
        split = rng.randint(1, k - 1)
        conn = And if rng.random() < 0.5 else Or
        node = conn((gen(scope, split), gen(scope, k - split)))
        return Not(node) if rng.random() < 0.15 else node

    return gen(list(free), n_atoms)


def oracle_work(f, p: int, k: int = 2) -> tuple[int, int]:
    """(search-field size, grid points) the oracle needs for all F_{p^k} assignments."""
    from .formula import bound_vars, free_vars
    wb = witness_bound(f)
    size = p ** wb.search_degree(k, p)
    work = (p ** k) ** len(free_vars(f))
    for m in wb.level_degrees(k, p).values():
        work *= p ** m
    return size, work


def formula_stream(p: int, seed: int = DEFAULT_SEED, cfg: GenConfig = GenConfig()):
    """Endless deterministic stream of formulas whose oracle check fits the caps."""
    rng = random.Random(f"{seed}:{p}")
    dom = CoeffDomain(p)
    while True:
        f = random_formula(rng, dom, cfg)
        size, work = oracle_work(f, p)
        if size <= cfg.field_cap and work <= cfg.work_cap:
            yield f
