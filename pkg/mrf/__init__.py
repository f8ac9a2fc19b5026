"""
Structured binary MRF layers: fields, Potts energies, ICM
"""

from mrf.brute_force import brute_force_minimum
from mrf.energy import icm_potential, site_energy, single_site_improvements, total_energy
from mrf.fields import DataField, LabelField, MrfParams, initial_field, normalize_gray
from mrf.icm import IcmTrace, icm, icm_sweep, icm_trace

__all__ = [
    "DataField",
    "IcmTrace",
    "LabelField",
    "MrfParams",
    "brute_force_minimum",
    "icm",
    "icm_potential",
    "icm_sweep",
    "icm_trace",
    "initial_field",
    "normalize_gray",
    "single_site_improvements",
    "site_energy",
    "total_energy",
]
