"""Deterministic storage-failure repair simulator.

Compares the consultation cost of local peeling repair against whole-word
reconstruction, which by convention reads all n - eps surviving symbols.
Erasure positions come from SplitMix64 streams: round r uses a fresh
generator seeded with (seed + r), one draw per decision, rounds outermost
and positions innermost, so transcripts are byte-reproducible and rounds
could be generated independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exceptions import InvalidParameterError
from .lrc import CodeBundle
from .recovery import ERASED, peel_repair

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Standard SplitMix64 sequence over a 64-bit state."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next_u64() % n


@dataclass(frozen=True)
class SimConfig:
    rounds: int
    seed: int
    policy: str = "local-peeling"          # or "global"
    epsilon: int | None = None             # fixed erasure count per round
    rate: float | None = None              # independent per-symbol rate

    def __post_init__(self):
        if self.rounds < 1:
            raise InvalidParameterError("rounds must be >= 1", token="bad-rounds")
        if self.policy not in ("local-peeling", "global"):
            raise InvalidParameterError(f"unknown policy {self.policy!r}",
                                        token="bad-policy")
        if (self.epsilon is None) == (self.rate is None):
            raise InvalidParameterError(
                "exactly one of epsilon / rate must be set", token="bad-model")
        if self.epsilon is not None and self.epsilon < 0:
            raise InvalidParameterError("epsilon must be >= 0", token="bad-model")
        if self.rate is not None and not 0.0 <= self.rate <= 1.0:
            raise InvalidParameterError("rate must be in [0, 1]", token="bad-model")
        if not 0 <= self.seed <= _MASK64:
            raise InvalidParameterError("seed must fit in 64 bits", token="bad-seed")

    @property
    def model(self) -> str:
        return "fixed" if self.epsilon is not None else "rate"


@dataclass(frozen=True)
class RoundResult:
    pattern_size: int
    repaired: bool
    consultations: int


@dataclass
class SimReport:
    config: SimConfig
    n: int
    r_max: int
    rounds: list[RoundResult] = dc_field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(1 for r in self.rounds if not r.repaired)

    @property
    def total_consultations(self) -> int:
        return sum(r.consultations for r in self.rounds)

    @property
    def mean_consultations(self) -> float:
        return self.total_consultations / len(self.rounds)

    def empirical_max(self) -> dict[int, int]:
        """Max consultations per observed pattern size, repaired rounds only."""
        out: dict[int, int] = {}
        for r in self.rounds:
            if r.repaired:
                out[r.pattern_size] = max(out.get(r.pattern_size, 0),
                                          r.consultations)
        return out

    def to_lines(self) -> list[str]:
        cfg = self.config
        lines = [
            "format=SIM1",
            f"policy={cfg.policy}",
            f"model={cfg.model}",
            f"rounds={cfg.rounds}",
            f"seed={cfg.seed}",
        ]
        if cfg.epsilon is not None:
            lines.append(f"epsilon={cfg.epsilon}")
        else:
            lines.append(f"rate={cfg.rate!r}")
        lines.append(f"n={self.n}")
        lines.append(f"r_max={self.r_max}")
        for i, r in enumerate(self.rounds):
            lines.append(f"round.{i}=eps:{r.pattern_size} "
                         f"repaired:{int(r.repaired)} consultations:{r.consultations}")
        lines.append(f"failures={self.failures}")
        lines.append(f"total_consultations={self.total_consultations}")
        lines.append(f"mean_consultations={self.mean_consultations!r}")
        for eps in sorted(self.empirical_max()):
            lines.append(f"empirical_m.{eps}={self.empirical_max()[eps]}")
        return lines

    def to_text(self) -> str:
        return "\n".join(self.to_lines()) + "\n"


def _round_pattern(config: SimConfig, round_index: int, n: int) -> list[int]:
    rng = SplitMix64((config.seed + round_index) & _MASK64)
    if config.epsilon is not None:
        if config.epsilon > n:
            raise InvalidParameterError("epsilon exceeds n", token="bad-model")
        chosen: list[int] = []
        seen = set()
        while len(chosen) < config.epsilon:
            v = rng.below(n)
            if v not in seen:
                seen.add(v)
                chosen.append(v)
        return chosen
    threshold = int(config.rate * float(1 << 64))
    return [i for i in range(n) if rng.next_u64() < threshold]


def run_simulation(config: SimConfig, bundle: CodeBundle) -> SimReport:
    """Deterministic given (config, bundle).

    The local policy peels a zero codeword with the drawn pattern erased
    (scheduling and consultation counts do not depend on symbol values);
    the global policy charges n - eps and always reconstructs.
    """
    code = bundle.descriptor
    n = code.n
    report = SimReport(config=config, n=n, r_max=max(code.locality))
    zero = np.zeros(n, dtype=np.int32)
    for r in range(config.rounds):
        pattern = _round_pattern(config, r, n)
        eps = len(pattern)
        if config.policy == "global":
            report.rounds.append(RoundResult(eps, True, n - eps))
            continue
        word = zero.copy()
        word[pattern] = ERASED
        _, repair = peel_repair(word, bundle)
        report.rounds.append(
            RoundResult(eps, repair.repaired, repair.consultations))
    return report
