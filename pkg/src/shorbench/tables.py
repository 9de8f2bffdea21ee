"""Reference tables and figure data, as lists of row dicts.

Each builder also returns the number of decimals to print per cell in CSV,
chosen to match the precision of the reference values.
"""

from .asymptotics import deviation_limit, fig1_series, fig3_series, p_asym, p_inf, scaled_deviation

QC2_R_O = range(3, 16, 2)
QC2_Q = (0, 1, 2)
QC3_R_O = range(3, 32, 2)

# printed decimals per (r_o, q); None stands for the limit row
_QC2_DECIMALS = {
    0: {r: 4 for r in [*QC2_R_O, None]},
    1: {3: 5, 5: 5, 7: 6, 9: 6, 11: 6, 13: 7, 15: 7, None: 7},
    2: {3: 6, 5: 6, 7: 7, 9: 7, 11: 7, 13: 8, 15: 8, None: 8},
}
_QC3_DECIMALS = {17: 4, 23: 4, 25: 4, 31: 4}
_QC3_LIMIT_DECIMALS = {1: 4, 3: 3, 5: 3, 7: 4}
DEFAULT_DECIMALS = 8


def qc2(r_o_values=QC2_R_O):
    """p_asym(r_o, q) for q = 0, 1, 2, then the p_inf row (r_o = None)."""
    rows, decimals = [], []
    for r_o in [*r_o_values, None]:
        row = {"r_o": "inf" if r_o is None else r_o}
        dec = {}
        for q in QC2_Q:
            key = f"q={q}"
            row[key] = p_inf(q) if r_o is None else p_asym(r_o, q)
            dec[key] = _QC2_DECIMALS[q].get(r_o, DEFAULT_DECIMALS)
        rows.append(row)
        decimals.append(dec)
    return rows, decimals


def qc3(r_o_values=QC3_R_O, q: int = -2):
    """Scaled deviation r_o (p_asym - p_inf), then its limit for each class of r_o mod 2^(|q|+1)."""
    rows, decimals = [], []
    for r_o in r_o_values:
        rows.append({"r_o": r_o, "nu": r_o % 2 ** (1 - q), "D": scaled_deviation(r_o, q)})
        decimals.append({"D": _QC3_DECIMALS.get(r_o, 3) if q == -2 else DEFAULT_DECIMALS})
    for nu in range(1, 2 ** (1 - q), 2):
        rows.append({"r_o": "inf", "nu": nu, "D": deviation_limit(nu, q)})
        decimals.append({"D": _QC3_LIMIT_DECIMALS.get(nu, 4) if q == -2 else DEFAULT_DECIMALS})
    return rows, decimals


def fig1(q_lo: float = -4.0, q_hi: float = 4.0, step: float = 0.05):
    """The interpolating curve, followed by the integer-q markers."""
    curve, markers = fig1_series(q_lo, q_hi, step)
    rows = [{"q": round(q, 10), "p_inf": v, "marker": False} for q, v in curve]
    rows += [{"q": q, "p_inf": v, "marker": True} for q, v in markers]
    return rows, [{"p_inf": DEFAULT_DECIMALS} for _ in rows]


def fig3():
    rows = [{"q": q, "r_o": r_o, "p_asym": pa, "p_inf": pi} for q, r_o, pa, pi in fig3_series()]
    return rows, [{"p_asym": DEFAULT_DECIMALS, "p_inf": DEFAULT_DECIMALS} for _ in rows]


BUILDERS = {"qc2": qc2, "qc3": qc3, "fig1": fig1, "fig3": fig3}
