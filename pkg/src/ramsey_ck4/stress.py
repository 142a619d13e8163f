"""Randomized stress harness for the extraction."""
from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .extract import Certificate, TheoremViolation, extract, verify_certificate
from .kernels import SearchBudgetExceeded
from .rng import derive_seed, random_coloring, red_threshold


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class StressConfig:
    n: int
    trials: int
    seed: int
    red_densities: tuple[float, ...] = (0.5,)
    parallelism: int = 1
    constructive: bool = False

    def check(self) -> None:
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.n < 2:
            raise ConfigError("n must be at least 2")
        if not self.red_densities:
            raise ConfigError("need at least one red density")
        for p in self.red_densities:
            red_threshold(p)
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class TrialResult:
    density_index: int
    trial: int
    seed: int
    ok: bool
    case: str
    seconds: float
    error: str = ""


def trial_seed(seed: int, density_index: int, trial: int) -> int:
    return derive_seed(derive_seed(seed, density_index), trial)


def run_trial(n: int, p_red: float, density_index: int, trial: int, seed: int, constructive: bool) -> TrialResult:
    t0 = time.perf_counter()
    s = trial_seed(seed, density_index, trial)
    c = random_coloring(13 * n - 3, p_red, s)
    try:
        res = extract(c, n, constructive=constructive)
    except TheoremViolation as exc:
        return TrialResult(density_index, trial, s, False, "violation", time.perf_counter() - t0, str(exc))
    except SearchBudgetExceeded as exc:
        return TrialResult(density_index, trial, s, False, "budget", time.perf_counter() - t0, str(exc))
    if not isinstance(res, Certificate):
        return TrialResult(density_index, trial, s, False, "unresolved", time.perf_counter() - t0, res.reason)
    verdict = verify_certificate(c, res, n)
    elapsed = time.perf_counter() - t0
    return TrialResult(density_index, trial, s, bool(verdict), res.case, elapsed, verdict.reason)


def _run_star(args: tuple) -> TrialResult:
    return run_trial(*args)


@dataclass
class StressSummary:
    config: StressConfig
    results: list[TrialResult] = field(default_factory=list)

    @property
    def failures(self) -> list[TrialResult]:
        return [r for r in self.results if not r.ok]

    @property
    def passed(self) -> bool:
        return not self.failures

    def case_histogram(self) -> dict[str, int]:
        return dict(sorted(Counter(r.case for r in self.results).items()))

    def latency(self) -> dict[str, float]:
        times = sorted(r.seconds for r in self.results)
        if not times:
            return {}

        def pct(q: float) -> float:
            return times[min(len(times) - 1, int(q * len(times)))]

        return {"p50": pct(0.50), "p90": pct(0.90), "p99": pct(0.99), "max": times[-1]}

    def report(self) -> str:
        """Deterministic text report (timings excluded)."""
        cfg = self.config
        lines = [
            f"n={cfg.n} order={13 * cfg.n - 3} seed={cfg.seed} trials_per_density={cfg.trials}"
            f" mode={'constructive' if cfg.constructive else 'exact'}",
        ]
        for j, p in enumerate(cfg.red_densities):
            rs = [r for r in self.results if r.density_index == j]
            ok = sum(r.ok for r in rs)
            hist = Counter(r.case for r in rs)
            cases = " ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
            lines.append(f"p_red={p:g} verified={ok}/{len(rs)} cases {cases}")
        for r in self.failures:
            lines.append(f"FAIL p_red={cfg.red_densities[r.density_index]:g} trial={r.trial} seed={r.seed} {r.case}: {r.error}")
        total_ok = sum(r.ok for r in self.results)
        lines.append(f"total verified={total_ok}/{len(self.results)} {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_json(self, with_timing: bool = False) -> str:
        cfg = self.config
        doc = {
            "n": cfg.n,
            "seed": cfg.seed,
            "trials": cfg.trials,
            "red_densities": list(cfg.red_densities),
            "constructive": cfg.constructive,
            "verified": sum(r.ok for r in self.results),
            "total": len(self.results),
            "cases": self.case_histogram(),
            "failures": [
                {"p_red": cfg.red_densities[r.density_index], "trial": r.trial, "seed": r.seed, "case": r.case, "error": r.error}
                for r in self.failures
            ],
        }
        if with_timing:
            doc["latency_seconds"] = self.latency()
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def run_stress(cfg: StressConfig) -> StressSummary:
    cfg.check()
    work = [
        (cfg.n, p, j, i, cfg.seed, cfg.constructive)
        for j, p in enumerate(cfg.red_densities)
        for i in range(cfg.trials)
    ]
    if cfg.parallelism == 1:
        results = [_run_star(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            results = list(pool.map(_run_star, work, chunksize=16))
    results.sort(key=lambda r: (r.density_index, r.trial))
    return StressSummary(cfg, results)
