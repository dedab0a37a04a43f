"""Named parameter presets for the 87Rb D1 line.

Both ground hyperfine levels (Fg = 1, 2) coupled to both excited levels
(Fe = 1, 2), in a pure-vapor cell (transit-limited, no collisions) and in
a buffer-gas cell (slow transit, strong excited-state decoherence).

Ground gyromagnetic factors are +1/2 for Fg = 2 and -1/2 for Fg = 1; the
excited-state factor is 1/6 for both Fe (the central resonances are
insensitive to it at these fields).  Branching ratios are computed exactly
from the hyperfine angular-momentum algebra (Je = Jg = 1/2, I = 3/2).
Scan signals are conventionally weighted by the thermal occupation of the
lower level: 5/8 for Fg = 2, 3/8 for Fg = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .angular import AngularState, branching_ratio
from .errors import ConfigError
from .liouvillian import SystemParams

_JG = 0.5
_JE = 0.5
_I_NUC = 1.5

# Modulation amplitude as a fraction of the transit rate; keeps the
# first-order treatment accurate to better than a percent.
B1_GAMMA_FRACTION = 0.1


@dataclass(frozen=True)
class Preset:
    """A named parameter bundle plus its thermal-occupation weight."""

    name: str
    params: SystemParams
    weight: float
    description: str


def _make(fg: int, fe: int, cell: str) -> Preset:
    gg = 0.5 if fg == 2 else -0.5
    state = AngularState(fg=fg, fe=fe, gg=gg, ge=1.0 / 6.0)
    if cell == "vacuum":
        gamma, gamma_coll, mod_freq = 1e-3, 0.0, 1e-2
    else:
        gamma, gamma_coll, mod_freq = 1e-5, 4.0, 1e-3
    params = SystemParams(
        state=state,
        rabi=0.01,
        gamma=gamma,
        gamma_coll=gamma_coll,
        branching=branching_ratio(_JE, _JG, _I_NUC, fe, fg),
        b0=0.0,
        b1=B1_GAMMA_FRACTION * gamma,
        mod_freq=mod_freq,
    )
    weight = 5.0 / 8.0 if fg == 2 else 3.0 / 8.0
    label = "pure vapor" if cell == "vacuum" else "30 torr Ne buffer gas"
    return Preset(
        name=f"rb87-d1-Fg{fg}-Fe{fe}-{cell}",
        params=params,
        weight=weight,
        description=f"87Rb D1 Fg={fg} -> Fe={fe}, {label}",
    )


PRESETS: dict[str, Preset] = {
    preset.name: preset
    for preset in (
        _make(fg, fe, cell)
        for cell in ("vacuum", "buffer")
        for (fg, fe) in ((2, 1), (2, 2), (1, 1), (1, 2))
    )
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"preset: unknown preset {name!r}; available: {known}") from None
