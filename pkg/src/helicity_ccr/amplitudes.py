"""Closed-form helicity amplitudes for six tree-level QED 2->2 processes.

Amplitudes are evaluated in the COM frame with incoming momenta along z and
outgoing momenta at polar angle theta.  Everything is expressed through two
dimensionless parameters:

    mu  = |p| / m_e          incoming momentum in electron masses
    lam = second mass/scale ratio, used only by the two muon processes
          (default: the muon/electron mass ratio)

The global coupling factor e^2 is dropped throughout: it cancels in every
normalized observable built here (state normalization, CCR terms, and the
relative weights of cross-section averages).

Each process is a table of 16 real amplitudes m(ab; rs) indexed by the
incoming (a, b) and outgoing (r, s) helicity pair, with basis order
RR, RL, LR, LL.  Half-angle functions are evaluated from theta/2 directly,
which keeps entries accurate near theta = pi.

theta = 0 and 2*pi are rejected for every process: forward kinematics sit on
the csc^2(theta/2) poles of the t-channel exchanges.  Moller scattering also
has the backward (u-channel) pole, so its entries grow without bound as
theta -> pi; they stay finite at any representable theta inside (0, 2*pi).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError

#: Default value of the second mass ratio: muon mass over electron mass.
MUON_ELECTRON_MASS_RATIO = 206.7683

#: Two-particle helicity basis order used for every 4-vector and 4x4 table.
BASIS_LABELS = ("RR", "RL", "LR", "LL")

_BASIS_INDEX = {label: i for i, label in enumerate(BASIS_LABELS)}

HELICITIES = ("R", "L")


class Process(Enum):
    """The six supported 2->2 processes."""

    BHABHA = "bhabha"
    MOLLER = "moller"
    EE_TO_MUMU = "ee-mumu"
    EMU_TO_EMU = "emu-emu"
    EE_TO_GAMMAGAMMA = "ee-gamgam"
    COMPTON = "compton"

    @classmethod
    def from_name(cls, name: str) -> "Process":
        key = name.strip().lower().replace("_", "-")
        for proc in cls:
            if key == proc.value:
                return proc
        aliases = {
            "ee->mumu": cls.EE_TO_MUMU,
            "mumu": cls.EE_TO_MUMU,
            "emu": cls.EMU_TO_EMU,
            "ee->gamgam": cls.EE_TO_GAMMAGAMMA,
            "gamgam": cls.EE_TO_GAMMAGAMMA,
            "annihilation": cls.EE_TO_GAMMAGAMMA,
        }
        if key in aliases:
            return aliases[key]
        raise DomainError(f"unknown process {name!r}; expected one of "
                          f"{[p.value for p in cls]}")


#: Processes whose in and out states are all massive spin-1/2 particles.
FERMIONIC_PROCESSES = (
    Process.BHABHA,
    Process.MOLLER,
    Process.EE_TO_MUMU,
    Process.EMU_TO_EMU,
)

#: Processes with photons among the external legs.
PHOTONIC_PROCESSES = (Process.EE_TO_GAMMAGAMMA, Process.COMPTON)


@dataclass(frozen=True)
class Kinematics:
    """COM-frame kinematic point (mu, theta) plus the muon-process scale lam.

    theta must lie strictly inside (0, 2*pi); mu and lam must be positive.
    """

    mu: float
    theta: float
    lam: float = MUON_ELECTRON_MASS_RATIO

    def __post_init__(self):
        if not (np.isfinite(self.mu) and self.mu > 0.0):
            raise DomainError(f"mu must be a positive finite number, got {self.mu}")
        if not (np.isfinite(self.lam) and self.lam > 0.0):
            raise DomainError(f"lam must be a positive finite number, got {self.lam}")
        if not (np.isfinite(self.theta) and 0.0 < self.theta < 2.0 * np.pi):
            raise DomainError(
                f"theta must lie strictly inside (0, 2*pi), got {self.theta}")


@dataclass(frozen=True)
class HelicityAmplitudeSet:
    """All 16 amplitudes of one process at one kinematic point."""

    process: Process
    kinematics: Kinematics
    m: dict = field(repr=False)

    def __getitem__(self, key) -> float:
        return self.m[key]

    @property
    def matrix(self) -> np.ndarray:
        """4x4 array m[in, out] in the RR, RL, LR, LL basis order."""
        out = np.empty((4, 4))
        for (a, b, r, s), value in self.m.items():
            out[_BASIS_INDEX[a + b], _BASIS_INDEX[r + s]] = value
        return out


def _stable_sqrt1p_mu2_minus_mu(mu):
    # sqrt(1+mu^2) - mu without cancellation at large mu
    return 1.0 / (np.hypot(1.0, mu) + mu)


def _bhabha(mu, theta, lam):
    th = theta
    t = 0.5 * th
    st, ct = np.sin(t), np.cos(t)
    cot = ct / st
    csc2 = 1.0 / (st * st)
    cos_th = np.cos(th)
    mu2 = mu * mu
    e_over_m = np.hypot(1.0, mu)  # sqrt(1 + mu^2)

    c1 = (2 + 11 * mu2 + 8 * mu2 * mu2 + 2 * cos_th + mu2 * np.cos(2 * th)) \
        * csc2 / (4 * mu2 * (1 + mu2))
    c2 = -(1 + mu2 * cos_th) * cot / (mu2 * e_over_m)
    c3 = (1 + mu2 * (1 + cos_th)) / (mu2 * (1 + mu2))
    c5 = (1 + mu2 * (1 + cos_th)) * cot * cot / mu2
    c6 = 1 - cos_th - 1 / mu2

    m = np.empty(np.shape(th) + (4, 4))
    m[..., 0, :] = np.stack([c1, c2, c2, c3], axis=-1)
    m[..., 1, :] = np.stack([-c2, c5, c6, c2], axis=-1)
    m[..., 2, :] = np.stack([-c2, c6, c5, c2], axis=-1)
    m[..., 3, :] = np.stack([c3, -c2, -c2, c1], axis=-1)
    return m


def _moller(mu, theta, lam):
    th = theta
    t = 0.5 * th
    st, ct = np.sin(t), np.cos(t)
    sin_th, cos_th = np.sin(th), np.cos(th)
    mu2 = mu * mu
    e_over_m = np.hypot(1.0, mu)

    d1 = -(3 + 8 * mu2 + np.cos(2 * th)) / (sin_th * sin_th * mu2)
    d2 = 2 * e_over_m * cos_th / (sin_th * mu2)
    d3 = 2 / mu2
    d5 = -(2 * (ct / st) ** 2 + cos_th / (st * st) / mu2)
    d6 = 2 * (st / ct) ** 2 - cos_th / (ct * ct) / mu2

    zero = np.zeros_like(d1)
    m = np.empty(np.shape(th) + (4, 4))
    m[..., 0, :] = np.stack([d1, -d2, d2, d3 + zero], axis=-1)
    m[..., 1, :] = np.stack([d2, d5, d6, d2], axis=-1)
    m[..., 2, :] = np.stack([-d2, d6, d5, -d2], axis=-1)
    m[..., 3, :] = np.stack([d3 + zero, -d2, d2, d1], axis=-1)
    return m


def _ee_to_mumu(mu, theta, lam):
    th = theta
    sin_th, cos_th = np.sin(th), np.cos(th)
    lm = np.hypot(lam, mu)  # sqrt(lam^2 + mu^2)

    e1 = lam * cos_th / (lm * lm)
    e2 = lam * sin_th / lm
    e3 = sin_th / lm
    e4 = 1 + cos_th
    e5 = 1 - cos_th

    m = np.empty(np.shape(th) + (4, 4))
    m[..., 0, :] = np.stack([-e1, e2, e2, e1], axis=-1)
    m[..., 1, :] = np.stack([-e3, -e4, e5, e3], axis=-1)
    m[..., 2, :] = np.stack([-e3, e5, -e4, e3], axis=-1)
    m[..., 3, :] = np.stack([e1, -e2, -e2, -e1], axis=-1)
    return m


def _emu_to_emu(mu, theta, lam):
    th = theta
    t = 0.5 * th
    st, ct = np.sin(t), np.cos(t)
    cot = ct / st
    cos_th = np.cos(th)
    mu2 = mu * mu
    root = np.hypot(1.0, mu) * np.hypot(lam, mu)  # sqrt((1+mu^2)(lam^2+mu^2))

    g1 = -(mu2 * (3 - cos_th) + root * (1 + cos_th)) / (mu2 * (cos_th - 1))
    g2 = np.hypot(lam, mu) * cot / mu2
    g3 = lam * np.hypot(1.0, mu) * cot / mu2
    g4 = lam / mu2
    g7 = (mu2 + root) * cot * cot / mu2
    g8 = lam / mu2

    zero = np.zeros_like(g1)
    m = np.empty(np.shape(th) + (4, 4))
    m[..., 0, :] = np.stack([g1, g2, -g3, -g4 + zero], axis=-1)
    m[..., 1, :] = np.stack([-g2, g7, g8 + zero, -g3], axis=-1)
    m[..., 2, :] = np.stack([g3, g8 + zero, g7, g2], axis=-1)
    m[..., 3, :] = np.stack([-g4 + zero, g3, -g2, g1], axis=-1)
    return m


def _ee_to_gammagamma(mu, theta, lam):
    th = theta
    sin_th, cos_th = np.sin(th), np.cos(th)
    mu_sin = mu * sin_th
    den = 2 * (1 + mu_sin * mu_sin)  # = mu^2 (1 - cos 2 theta) + 2
    root_p = mu + np.hypot(1.0, mu)
    root_m = _stable_sqrt1p_mu2_minus_mu(mu)

    h1 = 4 * root_p / den
    h2 = 4 * root_m / den
    h3 = 4 * mu * sin_th * sin_th / den
    den2 = 1 + mu_sin * mu_sin
    h4 = 2 * mu * np.hypot(1.0, mu) * (1 + cos_th) * sin_th / den2
    h5 = 2 * mu * np.hypot(1.0, mu) * (1 - cos_th) * sin_th / den2

    zero = np.zeros_like(h1)
    m = np.empty(np.shape(th) + (4, 4))
    m[..., 0, :] = np.stack([-h1, h3, h3, h2], axis=-1)
    m[..., 1, :] = np.stack([zero, -h4, h5, zero], axis=-1)
    m[..., 2, :] = np.stack([zero, h5, -h4, zero], axis=-1)
    m[..., 3, :] = np.stack([-h2, -h3, -h3, h1], axis=-1)
    return m


def _compton(mu, theta, lam):
    th = theta
    t = 0.5 * th
    st, ct = np.sin(t), np.cos(t)
    cos_th = np.cos(th)
    den = mu * cos_th + np.hypot(1.0, mu)  # > 0 for every mu, theta
    q = _stable_sqrt1p_mu2_minus_mu(mu)   # sqrt(1+mu^2) - mu

    k1 = (4 * mu * ct + 2 * q * ct**3) / den
    k2 = q * ct * (1 - cos_th) / den
    k3 = (1 + cos_th) * st / den
    k4 = 2 * q * q * st**3 / den
    k7 = 2 * (mu + np.hypot(1.0, mu)) * ct**3 / den
    k8 = 2 * st**3 / den

    m = np.empty(np.shape(th) + (4, 4))
    m[..., 0, :] = np.stack([-k1, -k2, k3, k4], axis=-1)
    m[..., 1, :] = np.stack([-k2, -k7, k8, k3], axis=-1)
    m[..., 2, :] = np.stack([-k3, -k8, -k7, -k2], axis=-1)
    m[..., 3, :] = np.stack([-k4, -k3, -k2, -k1], axis=-1)
    return m


_BUILDERS = {
    Process.BHABHA: _bhabha,
    Process.MOLLER: _moller,
    Process.EE_TO_MUMU: _ee_to_mumu,
    Process.EMU_TO_EMU: _emu_to_emu,
    Process.EE_TO_GAMMAGAMMA: _ee_to_gammagamma,
    Process.COMPTON: _compton,
}


def amplitude_matrix(process: Process, mu: float, theta,
                     lam: float = MUON_ELECTRON_MASS_RATIO) -> np.ndarray:
    """Amplitude table m[in, out] at one or many angles.

    ``theta`` may be a scalar or an array; the result has shape
    ``theta.shape + (4, 4)`` in the RR, RL, LR, LL basis order.
    Raises DomainError for mu <= 0 or any theta outside (0, 2*pi).
    """
    if not (np.isfinite(mu) and mu > 0.0):
        raise DomainError(f"mu must be a positive finite number, got {mu}")
    if not (np.isfinite(lam) and lam > 0.0):
        raise DomainError(f"lam must be a positive finite number, got {lam}")
    th = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(th) & (th > 0.0) & (th < 2.0 * np.pi)):
        raise DomainError("theta must lie strictly inside (0, 2*pi)")
    m = _BUILDERS[process](mu, th, lam)
    if not np.all(np.isfinite(m)):
        raise DomainError(
            f"{process.value} amplitudes are singular at the requested angle")
    return m


def amplitude(process: Process, kin: Kinematics,
              a: str, b: str, r: str, s: str) -> float:
    """Single amplitude m(ab; rs) with helicity labels in {"R", "L"}."""
    for h in (a, b, r, s):
        if h not in HELICITIES:
            raise DomainError(f"helicity labels must be 'R' or 'L', got {h!r}")
    m = amplitude_matrix(process, kin.mu, kin.theta, kin.lam)
    return float(m[_BASIS_INDEX[a + b], _BASIS_INDEX[r + s]])


def amplitude_set(process: Process, kin: Kinematics) -> HelicityAmplitudeSet:
    """All 16 amplitudes of ``process`` at ``kin`` as an explicit mapping."""
    m = amplitude_matrix(process, kin.mu, kin.theta, kin.lam)
    table = {}
    for ab, i in _BASIS_INDEX.items():
        for rs, j in _BASIS_INDEX.items():
            table[(ab[0], ab[1], rs[0], rs[1])] = float(m[i, j])
    return HelicityAmplitudeSet(process=process, kinematics=kin, m=table)
