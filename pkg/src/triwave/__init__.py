from ._logging import set_logger
from .catalog import GroupData, PointElement, get_group, list_groups
from .group_core import WaveletElement, invert, multiply, section_gamma
from .induced import FinSuppVector, sigma_apply
from .notation import format_element, parse_element
from .orbits import CrossSection, build_cross_section, canonicalize
from .packets import GaussianPacket, PacketSum
from .scalar import LatticeVector, TriadicHalf
from .settings import TriwaveSettings
from .verify import run_verify
from .wavelet_rep import IntertwiningVerifier, apply_V, apply_Vhat, rho_eval

__all__ = [
    "CrossSection",
    "FinSuppVector",
    "GaussianPacket",
    "GroupData",
    "IntertwiningVerifier",
    "LatticeVector",
    "PacketSum",
    "PointElement",
    "TriadicHalf",
    "TriwaveSettings",
    "WaveletElement",
    "apply_V",
    "apply_Vhat",
    "build_cross_section",
    "canonicalize",
    "format_element",
    "get_group",
    "invert",
    "list_groups",
    "multiply",
    "parse_element",
    "rho_eval",
    "run_verify",
    "section_gamma",
    "sigma_apply",
    "set_logger",
]
