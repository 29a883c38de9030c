"""Published numerical values used as comparison targets."""

import math

GERVER_TABLE = {
    "phi": 0.039177364790083641,
    "theta": 0.681301509382724894,
    "kappa11": -0.210322422072688751, "kappa12": 0.25,
    "a1": 1.210322422072688751, "a2": -0.25,
    "kappa21": -0.919179292771593322, "kappa22": 0.472406619750805465,
    "b1": -0.527624598026784624, "b2": 0.920258385160637622,
    "kappa31": -0.613763229430251668, "kappa32": 0.889626479003221860,
    "c1": 0.626045522848465867, "c2": -0.944750803946430751,
    "kappa41": -0.308347166088910014, "kappa42": 0.472406619750805465,
    "d1": 1.313022761424232933, "d2": -0.525382670414554437,
    "kappa51": -1.017204036787814585, "kappa52": 0.25,
    "e1": 1.210322422072688751, "e2": 0.25,
}
GERVER_AREA = 2.21953166

AMBI_TABLE = {
    "beta": 0.289653820817320941,
    "kappa11": 0.124712637587267758, "kappa12": 0.5,
    "a1": 0.875287362412732241, "a2": 0.0,
    "kappa61": -0.167049816550309655, "kappa62": 0.5,
    "f1": 1.202938908156911389, "f2": -0.498273610464875672,
    "kappa51": -0.458812270687887068, "kappa52": 0.5,
    "e1": 0.875287362412732241, "e2": 0.0,
}
AMBI_AREA = 1.644955218425440
AMBI_LENGTH = 2.334099633100619

HAMMERSLEY_R_STAR = 2.0 / math.pi
HAMMERSLEY_AREA_STAR = 0.5 * math.pi + 2.0 / math.pi


def relative_error(value: float, ref: float) -> float:
    """Relative error, falling back to absolute error at a zero reference."""
    return abs(value - ref) / abs(ref) if ref else abs(value)
