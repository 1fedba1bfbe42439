"""Randomized simplification of pseudotriangulations by bistellar moves and contractions.

Each step draws a move class with probability proportional to its weight
among the classes that currently have a legal site, then applies a random
legal site of that class. Reducing classes (3-moves, 4-moves, contractions)
carry the larger default weights. When the facet count has not dropped to a
new minimum for ``plateau_patience`` steps, the walk restarts from the
smallest complex seen so far and a burst of random 2-moves (or 0-moves, if
no 2-move exists) shakes it loose. Each restart that fails to beat the
minimum lengthens the next burst by one more multiple of its drawn length,
up to ``burst_growth`` extra multiples.

The random stream is numpy's PCG64 seeded with ``AnnealConfig.seed``; the
same seed and input give the same move log on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .complex import CellComplex
from .moves import CONTRACTION, KINDS, IllegalMove, Move, _bistellar, apply, screened_sites, site_move

TARGET_REACHED = "TargetReached"
STEPS_EXHAUSTED = "StepsExhausted"

DEFAULT_WEIGHTS = {"B0": 1.0, "B1": 2.0, "B2": 6.0, "B3": 10.0, "B4": 10.0, CONTRACTION: 10.0}
REDUCING = ("B3", "B4", CONTRACTION)
INCREASING = ("B0", "B1")


class InvalidConfig(ValueError):
    pass


class ReplayMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class SimpleContracted:
    """Five vertices and ten edges: a simple contracted pseudotriangulation."""

    def __call__(self, C: CellComplex) -> bool:
        f = C.f_vector
        return f[0] == C.dim + 1 and f[1] == (C.dim + 1) * C.dim // 2

    def __str__(self):
        return "simple"


@dataclass(frozen=True)
class FacetCount:
    k: int

    def __call__(self, C: CellComplex) -> bool:
        return C.num_facets == self.k

    def __str__(self):
        return f"facets={self.k}"


def parse_target(text: str):
    if text in ("simple", "SimpleContracted"):
        return SimpleContracted()
    if text.startswith("facets="):
        return FacetCount(int(text.split("=", 1)[1]))
    raise InvalidConfig(f"unknown target {text!r}; use 'simple' or 'facets=K'")


@dataclass
class AnnealConfig:
    seed: int = 0
    max_steps: int = 10_000
    weights: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    plateau_patience: int = 200
    burst: tuple[int, int] = (5, 15)
    burst_growth: int = 8
    target: object = field(default_factory=SimpleContracted)
    budget: int = 100_000

    def validate(self):
        unknown = set(self.weights) - set(KINDS)
        if unknown:
            raise InvalidConfig(f"unknown move classes {sorted(unknown)}")
        w = [self.weights.get(k, 0.0) for k in KINDS]
        if any(x < 0 for x in w) or not any(x > 0 for x in w):
            raise InvalidConfig("weights must be non-negative and not all zero")
        if self.max_steps < 0 or self.plateau_patience < 1:
            raise InvalidConfig("max_steps must be >= 0 and plateau_patience >= 1")
        lo, hi = self.burst
        if not 0 <= lo <= hi or self.burst_growth < 0:
            raise InvalidConfig(f"bad burst range {self.burst} or growth {self.burst_growth}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidConfig("seed must be a 64-bit unsigned integer")


def parse_weights(text: str) -> dict[str, float]:
    """``"B0=1,B1=2,...,EC=10"`` -> weights; unnamed classes keep their defaults."""
    out = dict(DEFAULT_WEIGHTS)
    for part in text.split(","):
        if not part.strip():
            continue
        key, _, val = part.partition("=")
        key = key.strip().upper()
        if key not in KINDS:
            raise InvalidConfig(f"unknown move class {key!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise InvalidConfig(f"bad weight {part!r}") from None
    return out


def _fmt_f(f) -> str:
    return ",".join(map(str, f))


@dataclass
class LogEntry:
    step: int
    move: Move
    f_vector: tuple[int, ...]
    phase: str = "walk"
    restart: int | None = None      # step whose complex this move starts from


@dataclass
class MoveLog:
    seed: int
    start: tuple[int, ...]
    entries: list[LogEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def to_text(self) -> str:
        lines = ["# simplecryst move log",
                 f"# rng PCG64 seed {self.seed}",
                 f"# start {_fmt_f(self.start)}"]
        phase = "walk"
        for e in self.entries:
            if e.restart is not None:
                lines.append(f"# restart {e.restart}")
            if e.phase != phase:
                lines.append(f"# {e.phase}")
                phase = e.phase
            lines.append(f"{e.step} {e.move.kind} {e.move.site} {_fmt_f(e.f_vector)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> MoveLog:
        seed, start, entries, phase, restart = 0, (), [], "walk", None
        for n, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                words = line[1:].split()
                if words[:2] == ["rng", "PCG64"]:
                    seed = int(words[3])
                elif words[:1] == ["start"]:
                    start = tuple(int(x) for x in words[1].split(","))
                elif words and words[0] in ("walk", "burst"):
                    phase = words[0]
                elif words[:1] == ["restart"]:
                    restart = int(words[1])
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(f"line {n}: expected 'step kind site f-vector'")
            step, kind, site, f = parts
            entries.append(LogEntry(int(step), Move.parse(kind, site),
                                    tuple(int(x) for x in f.split(",")), phase, restart))
            restart = None
        return cls(seed, start, entries)

    def save(self, path: str | Path):
        Path(path).write_text(self.to_text())

    def replay(self, C: CellComplex, budget: int = 100_000) -> CellComplex:
        """Re-apply every move to ``C``, checking each recorded f-vector."""
        if self.start and tuple(C.f_vector) != self.start:
            raise ReplayMismatch(f"start f-vector {C.f_vector} != {self.start}")
        wanted = {e.restart for e in self.entries if e.restart is not None}
        saved = {0: C}
        for e in self.entries:
            if e.restart is not None:
                C = saved[e.restart]
            C = apply(C, e.move, budget)
            if e.step in wanted:
                saved[e.step] = C
            if tuple(C.f_vector) != e.f_vector:
                raise ReplayMismatch(f"step {e.step}: f-vector {C.f_vector} != {e.f_vector}")
        return C


def random_legal_move(C: CellComplex, kind: str, rng: np.random.Generator,
                      budget: int = 100_000) -> tuple[Move, CellComplex] | None:
    """A uniformly random legal site of ``kind`` and its result; None if there is none."""
    fs, ms = screened_sites(C, kind)
    D = C.dim + 1
    if kind != CONTRACTION:
        if not len(fs):
            return None
        j = int(rng.integers(len(fs)))
        return site_move(kind, fs[j], ms[j], D), _bistellar(C, int(kind[1]), int(fs[j]), int(ms[j]))
    for j in rng.permutation(len(fs)):
        m = site_move(kind, fs[j], ms[j], D)
        try:
            return m, apply(C, m, budget)
        except IllegalMove:
            continue
    return None


def random_move(C: CellComplex, weights: dict[str, float], rng: np.random.Generator,
                budget: int = 100_000) -> tuple[Move, CellComplex]:
    """Weighted draw of a move class with a legal site, then a random such site."""
    live = [k for k in KINDS if weights.get(k, 0) > 0]
    w = [weights[k] for k in live]
    while live:
        r = rng.random() * sum(w)
        j, acc = 0, w[0]
        while acc <= r and j < len(live) - 1:
            j += 1
            acc += w[j]
        found = random_legal_move(C, live[j], rng, budget)
        if found is not None:
            return found
        del live[j], w[j]
    raise IllegalMove("no legal move of any weighted class")


def inflate(C: CellComplex, n_moves: int, seed: int = 0,
            kinds=("B0", "B1", "B2")) -> tuple[CellComplex, MoveLog]:
    """Apply ``n_moves`` random moves drawn evenly from ``kinds``."""
    rng = np.random.Generator(np.random.PCG64(seed))
    log = MoveLog(seed, tuple(C.f_vector))
    weights = {k: 1.0 for k in kinds}
    for step in range(1, n_moves + 1):
        m, C = random_move(C, weights, rng)
        log.entries.append(LogEntry(step, m, tuple(C.f_vector)))
    return C, log


@dataclass
class Result:
    complex: CellComplex
    log: MoveLog
    outcome: str

    def __iter__(self):
        return iter((self.complex, self.log, self.outcome))


def simplify(C: CellComplex, cfg: AnnealConfig | None = None) -> Result:
    """Random walk toward ``cfg.target``; unpacks as (complex, log, outcome).

    The outcome is TargetReached when the target holds after at least one
    permitted step (``max_steps`` > 0), StepsExhausted otherwise.
    """
    cfg = cfg or AnnealConfig()
    cfg.validate()
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    log = MoveLog(cfg.seed, tuple(C.f_vector))
    if cfg.max_steps == 0:
        return Result(C, log, STEPS_EXHAUSTED)
    best, best_step = C, 0
    since = 0
    stale = 0
    step = 0
    restart = None

    def record(m, phase):
        nonlocal restart
        log.entries.append(LogEntry(step, m, tuple(C.f_vector), phase, restart))
        restart = None

    while step < cfg.max_steps:
        if cfg.target(C):
            return Result(C, log, TARGET_REACHED)
        if since >= cfg.plateau_patience:
            since = 0
            if C is not best:
                C, restart = best, best_step
            lo, hi = cfg.burst
            length = int(rng.integers(lo, hi + 1)) * (1 + min(stale, cfg.burst_growth))
            stale += 1
            for _ in range(length):
                if step >= cfg.max_steps:
                    break
                found = random_legal_move(C, "B2", rng, cfg.budget)
                if found is None:
                    found = random_legal_move(C, "B0", rng, cfg.budget)
                m, C = found
                step += 1
                record(m, "burst")
            continue
        try:
            m, C = random_move(C, cfg.weights, rng, cfg.budget)
        except IllegalMove:
            since = cfg.plateau_patience   # stuck: go straight to a burst
            continue
        step += 1
        record(m, "walk")
        if C.num_facets < best.num_facets:
            best, best_step = C, step
            since = stale = 0
        else:
            since += 1
    return Result(C, log, TARGET_REACHED if cfg.target(C) else STEPS_EXHAUSTED)


def run_chains(C: CellComplex, cfg: AnnealConfig, seeds, workers: int = 1) -> Result | None:
    """First chain (in seed order) to reach the target, or None.

    With ``workers`` > 1 the chains run in a process pool and unfinished
    ones are cancelled once a winner is known; the seed-order tie-break
    keeps the answer independent of scheduling.
    """
    from dataclasses import replace

    seeds = list(seeds)
    if workers <= 1:
        for s in seeds:
            res = simplify(C, replace(cfg, seed=s))
            if res.outcome == TARGET_REACHED:
                return res
        return None
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(workers) as pool:
        futures = [pool.submit(simplify, C, replace(cfg, seed=s)) for s in seeds]
        for fut in futures:
            res = fut.result()
            if res.outcome == TARGET_REACHED:
                for other in futures:
                    other.cancel()
                return res
    return None
