"""
Parameter containers for the recurrent cells and the dense head.
Each container flattens to an ordered name -> Matrix mapping used by Adam and checkpoints.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from ..errors import ShapeError
from ..numkit import Matrix

LSTM_GATES: Tuple[str, ...] = ("input", "forget", "output", "candidate")
GRU_GATES: Tuple[str, ...] = ("update", "reset", "candidate")


@dataclass(frozen=True)
class GateParams:
    """W (units x 1) input weight, U (units x units) recurrent weight, b (units x 1) bias."""

    W: Matrix
    U: Matrix
    b: Matrix

    @property
    def units(self) -> int:
        return self.U.rows

    def validate(self, name: str) -> None:
        n = self.units
        expected = {"W": (n, 1), "U": (n, n), "b": (n, 1)}
        for field, shape in expected.items():
            got = getattr(self, field).shape
            if got != shape:
                raise ShapeError(f"{name}.{field}: expected {shape[0]}x{shape[1]}, got {got[0]}x{got[1]}")


@dataclass(frozen=True)
class _GatedParams:
    gates: Dict[str, GateParams]
    gate_names = ()

    def __post_init__(self):
        if tuple(self.gates) != self.gate_names:
            raise ShapeError(f"expected gates {self.gate_names}, got {tuple(self.gates)}")
        units = {g.units for g in self.gates.values()}
        if len(units) != 1:
            raise ShapeError(f"gates disagree on units: {sorted(units)}")
        for name, g in self.gates.items():
            g.validate(name)

    @property
    def units(self) -> int:
        return next(iter(self.gates.values())).units

    def __getitem__(self, gate: str) -> GateParams:
        return self.gates[gate]

    def named(self, prefix: str = "cell") -> Dict[str, Matrix]:
        out: Dict[str, Matrix] = {}
        for gate, p in self.gates.items():
            out[f"{prefix}.{gate}.W"] = p.W
            out[f"{prefix}.{gate}.U"] = p.U
            out[f"{prefix}.{gate}.b"] = p.b
        return out

    @classmethod
    def from_named(cls, named: Dict[str, Matrix], prefix: str = "cell"):
        gates = {
            gate: GateParams(
                W=named[f"{prefix}.{gate}.W"],
                U=named[f"{prefix}.{gate}.U"],
                b=named[f"{prefix}.{gate}.b"],
            )
            for gate in cls.gate_names
        }
        return cls(gates)


@dataclass(frozen=True)
class LstmParams(_GatedParams):
    gate_names = LSTM_GATES


@dataclass(frozen=True)
class GruParams(_GatedParams):
    gate_names = GRU_GATES


@dataclass(frozen=True)
class DenseParams:
    """W (f x units), b (f x 1). Output dimension is the forecast horizon."""

    W: Matrix
    b: Matrix

    def __post_init__(self):
        if self.b.shape != (self.W.rows, 1):
            raise ShapeError(f"head bias must be {self.W.rows}x1, got {self.b.rows}x{self.b.cols}")

    @property
    def horizon(self) -> int:
        return self.W.rows

    @property
    def units(self) -> int:
        return self.W.cols

    def named(self, prefix: str = "head") -> Dict[str, Matrix]:
        return {f"{prefix}.W": self.W, f"{prefix}.b": self.b}

    @classmethod
    def from_named(cls, named: Dict[str, Matrix], prefix: str = "head") -> "DenseParams":
        return cls(W=named[f"{prefix}.W"], b=named[f"{prefix}.b"])
