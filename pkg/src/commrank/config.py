"""Run configuration with a lossless JSON form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path


def _grid(start: int, stop: int, scale: int = 10) -> tuple[float, ...]:
    return tuple(round(i / scale, 10) for i in range(start, stop + 1))


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    resolution: float = 1.0
    threshold: float = 0.0
    n_ref: int = 20
    # perturbation sweeps (fractions of the GT edge count)
    remove_grid: tuple[float, ...] = _grid(1, 9)
    add_grid: tuple[float, ...] = _grid(1, 20)
    skeleton_keep: float = 0.1
    skeleton_add_grid: tuple[float, ...] = (0.1, 0.25, 0.5)
    hybrid_grid: tuple[tuple[float, float], ...] = ((0.25, 0.25), (0.25, 0.5), (0.5, 0.25), (0.5, 0.5))
    weight_rule: str = "gt_median"
    # random references
    ws_p: float = 0.1
    # synthetic ground truth
    planted_n: int = 90
    planted_blocks: int = 6
    planted_p_in: float = 0.25
    planted_p_out: float = 0.02
    out_dir: str = "out"

    def to_dict(self, with_out_dir: bool = True) -> dict:
        d = asdict(self)
        if not with_out_dir:
            # where results go is not part of what produced them
            del d["out_dir"]
        return d

    def to_json(self, with_out_dir: bool = True) -> str:
        return json.dumps(self.to_dict(with_out_dir), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name: f for f in fields(cls)}
        unknown = set(data) - set(known)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = {}
        for name, value in data.items():
            default = getattr(cls, name, None) if name in known else None
            if isinstance(default, tuple):
                value = tuple(tuple(v) if isinstance(v, list) else v for v in value)
            kwargs[name] = value
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> "RunConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json())
