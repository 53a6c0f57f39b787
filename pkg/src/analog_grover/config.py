import math
from typing import Optional

import numpy as np

from .analog_search import SearchParams
from .figures import get_figure
from .qmath import LOG_BASES
from .sweep import default_t_max

MAX_QUBITS = 12
FORMATS = ("csv", "json")


class RunConfig:
    """Settings of one command line run.

    Usage:
        cfg = RunConfig(n_qubits=5, steps=500)
        cfg.search_params()

    Args:
        n_qubits (int, optional): register size in [1, 12]. Defaults to 2
            unless dim is given.
        dim (int, optional): N = 2**n, an alternative to n_qubits.
        energy (float): energy scale E. Defaults to 1.
        overlap (float, optional): x in (0, 1]. Defaults to 1/sqrt(N).
        marked (int): marked index w. Defaults to 0.
        t_max (float, optional): end of the time grid. Defaults to two
            peak times.
        steps (int): grid points, at least 2. Defaults to 1000.
        format (str): "csv" or "json". Defaults to "csv".
        out (str): output path, "-" for stdout. Defaults to "-".
        log_base (str): "2" or "e". Defaults to "2".
        seed (int): seed of the random state checks. Defaults to 0.
    """

    def __init__(
        self,
        n_qubits: Optional[int] = None,
        dim: Optional[int] = None,
        energy: float = 1.0,
        overlap: Optional[float] = None,
        marked: int = 0,
        t_max: Optional[float] = None,
        steps: int = 1000,
        format: str = "csv",
        out: str = "-",
        log_base: str = "2",
        seed: int = 0,
    ):
        if dim is not None:
            from_dim = SearchParams.from_dim(dim).n_qubits
            if n_qubits is not None and n_qubits != from_dim:
                raise ValueError(f"n_qubits={n_qubits} contradicts dim={dim}")
            n_qubits = from_dim
        self.n_qubits = 2 if n_qubits is None else n_qubits
        self.energy = energy
        self.overlap = overlap
        self.marked = marked
        self.t_max = t_max
        self.steps = steps
        self.format = format
        self.out = out
        self.log_base = log_base
        self.seed = seed

        # cross-field checks live in SearchParams
        self.search_params()

    @classmethod
    def from_figure(cls, figure_id: str, **overrides):
        """The figure's default parameters, updated with the given overrides."""
        settings = dict(get_figure(figure_id).defaults)
        if overrides.get("dim") is not None:
            settings.pop("n_qubits", None)
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)

    @property
    def n_qubits(self):
        return self._n_qubits

    @n_qubits.setter
    def n_qubits(self, value):
        if (
            isinstance(value, (int, np.integer))
            and not isinstance(value, bool)
            and 1 <= value <= MAX_QUBITS
        ):
            self._n_qubits = int(value)
        else:
            raise ValueError(f"n_qubits must be an integer in [1, {MAX_QUBITS}]")

    @property
    def t_max(self):
        return self._t_max

    @t_max.setter
    def t_max(self, value):
        if value is None:
            self._t_max = None
        elif isinstance(value, (int, float)) and math.isfinite(value) and value > 0:
            self._t_max = float(value)
        else:
            raise ValueError("t_max must be a finite number strictly greater than 0")

    @property
    def steps(self):
        return self._steps

    @steps.setter
    def steps(self, value):
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool) and value >= 2:
            self._steps = int(value)
        else:
            raise ValueError("steps must be an integer greater or equal to 2")

    @property
    def format(self):
        return self._format

    @format.setter
    def format(self, value):
        if value not in FORMATS:
            raise ValueError(f"format must be one of {list(FORMATS)}")
        self._format = value

    @property
    def log_base(self):
        return self._log_base

    @log_base.setter
    def log_base(self, value):
        if value not in LOG_BASES:
            raise ValueError(f"log_base must be one of {list(LOG_BASES)}")
        self._log_base = value

    @property
    def seed(self):
        return self._seed

    @seed.setter
    def seed(self, value):
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool) and value >= 0:
            self._seed = int(value)
        else:
            raise ValueError("seed must be a non-negative integer")

    def search_params(self) -> SearchParams:
        return SearchParams(
            n_qubits=self.n_qubits, energy=self.energy, overlap=self.overlap, marked=self.marked
        )

    def resolved_t_max(self) -> float:
        if self.t_max is not None:
            return self.t_max
        return default_t_max(self.search_params())

    def to_dict(self):
        """Resolved settings, as written into JSON output."""
        p = self.search_params()
        return {
            "n_qubits": self.n_qubits,
            "dim": p.dim,
            "energy": self.energy,
            "overlap": p.x,
            "marked": self.marked,
            "t_max": self.resolved_t_max(),
            "steps": self.steps,
            "log_base": self.log_base,
            "seed": self.seed,
        }
