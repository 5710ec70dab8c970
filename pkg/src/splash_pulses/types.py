from typing import Literal

PulseName = Literal["psi", "psi+", "psi-", "Psi", "Psi+", "Psi-", "u", "U", "f", "G"]
PULSE_NAMES = ("psi", "psi+", "psi-", "Psi", "Psi+", "Psi-", "u", "U", "f", "G")

RayKind = Literal["forward-z", "backward-z", "radial", "oblique", "diagonal", "retro-z"]
RAY_KINDS = ("forward-z", "backward-z", "radial", "oblique", "diagonal", "retro-z")
LIMIT_RAY_KINDS = ("forward-z", "backward-z", "radial", "diagonal", "retro-z")

Axis = Literal["x", "y", "z", "R", "ct"]
AXES = ("x", "y", "z", "R", "ct")

Classification = Literal["finite", "log-divergent", "power-divergent", "zero", "ambiguous"]
CLASSIFICATIONS = ("finite", "log-divergent", "power-divergent", "zero", "ambiguous")

Part = Literal["complex", "re", "im"]
PARTS = ("complex", "re", "im")

EMComponent = Literal["Ex", "Ey", "Ez", "Bx", "By", "Bz"]
EM_COMPONENTS = ("Ex", "Ey", "Ez", "Bx", "By", "Bz")

StencilOrder = Literal[4, 6]
STENCIL_ORDERS = (4, 6)

EnergyQuantity = Literal["w", "Sx", "Sy", "Sz"]
ENERGY_QUANTITIES = ("w", "Sx", "Sy", "Sz")
