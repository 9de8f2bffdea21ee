"""Success-probability analysis and Jacobi-symbol benchmarks for Shor's algorithm."""

__version__ = "0.1.0"

from .asymptotics import expansion, p_asym, p_inf, scaled_deviation, sinc, sine_integral
from .numthy import SemiprimeSpec, jacobi, order
from .period_prob import PeriodSpec, RegisterSpec, p_tot_exact, p_tot_oracle, register_for

__all__ = [
    "PeriodSpec", "RegisterSpec", "SemiprimeSpec", "expansion", "jacobi", "order",
    "p_asym", "p_inf", "p_tot_exact", "p_tot_oracle", "register_for",
    "scaled_deviation", "sinc", "sine_integral",
]
