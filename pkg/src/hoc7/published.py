"""Values printed in the source tables, kept verbatim for comparison.

Table rows are ``(x, T, columns)`` where ``columns`` maps a column name to
its printed value.  ``"present"`` is the printed numerical solution of the
scheme and ``"exact"`` the printed reference solution; other keys are
competitor methods.
"""

from dataclasses import dataclass, field
from fractions import Fraction as F


@dataclass(frozen=True)
class PublishedTable:
    id: int
    problem: str
    param_index: int
    columns: tuple
    rows: tuple
    # {T: {"linf": ..., "l2": ...}} for the scheme, with optional competitor norms
    norms: dict = field(default_factory=dict)
    norm_scale: float = 1.0

    @property
    def times(self):
        return tuple(sorted({r[1] for r in self.rows}))


def _wide(xs, times, present, exact):
    rows = []
    for x, p_row, e_row in zip(xs, present, exact):
        for T, p, e in zip(times, p_row, e_row):
            rows.append((x, T, {"present": p, "exact": e}))
    return tuple(sorted(rows, key=lambda r: (r[1], r[0])))


def _long(xs, times, columns, values):
    rows = []
    it = iter(values)
    for x in xs:
        for T in times:
            rows.append((x, T, dict(zip(columns, next(it)))))
    return tuple(rows)


_X9 = tuple(round(0.1 * i, 1) for i in range(1, 10))

TABLE_1 = PublishedTable(
    1, "ex1", 0, ("present", "exact"),
    _wide(_X9, (0.001, 0.01, 0.1),
          [(0.304976, 0.273145, 0.109509), (0.580361, 0.521393, 0.209737),
           (0.799363, 0.721630, 0.291820), (0.940545, 0.854348, 0.347834),
           (0.989926, 0.905483, 0.371482), (0.942407, 0.868137, 0.358954),
           (0.802375, 0.743949, 0.309827), (0.583373, 0.543723, 0.227760),
           (0.306837, 0.286951, 0.120656)],
          [(0.305088, 0.273239, 0.109538), (0.580565, 0.521564, 0.209792),
           (0.799621, 0.721852, 0.291896), (0.940817, 0.854590, 0.347924),
           (0.990174, 0.905713, 0.371577), (0.942609, 0.868334, 0.359046),
           (0.802522, 0.744098, 0.309905), (0.583466, 0.543821, 0.227817),
           (0.306881, 0.286999, 0.120687)]),
    {0.001: {"linf": 2.71275e-4, "l2": 6.41526e-05},
     0.01: {"linf": 2.413e-04, "l2": 5.82562e-05},
     0.1: {"linf": 9.54852e-05, "l2": 2.27535e-05}},
)

_X3 = (0.25, 0.5, 0.75)
_T5 = (0.4, 0.6, 0.8, 1.0, 3.0)
_T4 = (5.0, 10.0, 15.0, 20.0)

TABLE_2 = PublishedTable(
    2, "ex1", 1, ("fem", "asai", "present", "exact"),
    _long(_X3, _T5, ("fem", "asai", "present", "exact"), [
        (0.31215, 0.30891, 0.3087531, 0.30889), (0.24360, 0.24076, 0.2406489, 0.24074),
        (0.19815, 0.19570, 0.1956120, 0.19568), (0.16473, 0.16259, 0.1625168, 0.16256),
        (0.02771, 0.02722, 0.0271953, 0.02720),
        (0.57293, 0.56970, 0.5694998, 0.56963), (0.45088, 0.44728, 0.4470928, 0.44721),
        (0.36286, 0.35932, 0.3591441, 0.35924), (0.29532, 0.29200, 0.2918410, 0.29192),
        (0.04097, 0.04023, 0.0401946, 0.04021),
        (0.63038, 0.62567, 0.6254715, 0.62544), (0.49268, 0.48747, 0.4871652, 0.48721),
        (0.37912, 0.37415, 0.3738557, 0.37392), (0.29204, 0.28766, 0.2874128, 0.28747),
        (0.03038, 0.02979, 0.0297645, 0.02977),
    ]),
)

TABLE_3 = PublishedTable(
    3, "ex1", 2, ("present", "exact"),
    _long(_X3, _T4, ("present", "exact"), [
        (0.046922, 0.046963), (0.024202, 0.024217), (0.016300, 0.016308), (0.012236, 0.012240),
        (0.093998, 0.093920), (0.048414, 0.048421), (0.032431, 0.032439), (0.023883, 0.023889),
        (0.141354, 0.140832), (0.071175, 0.071134), (0.044135, 0.044133), (0.029155, 0.029159),
    ]),
)

TABLE_4 = PublishedTable(
    4, "ex2", 0, ("present", "exact"),
    _wide(_X9, (0.001, 0.01, 0.1),
          [(0.350702990, 0.294821969, 0.112863), (0.630240123, 0.552873368, 0.216195),
           (0.830425346, 0.749515568, 0.300887), (0.951009637, 0.873232122, 0.358770),
           (0.991793845, 0.919517990, 0.383324), (0.952578533, 0.886057211, 0.370563),
           (0.833164134, 0.771302597, 0.319985), (0.633350801, 0.576137870, 0.235312),
           (0.352988009, 0.310053369, 0.124687)],
          [(0.350947, 0.294953, 0.112892), (0.630504, 0.553085, 0.216252),
           (0.830681, 0.749751, 0.300966), (0.951242, 0.873459, 0.358863),
           (0.991996, 0.919723, 0.383422), (0.952752, 0.886239, 0.370658),
           (0.833318, 0.771464, 0.320066), (0.633500, 0.576273, 0.235371),
           (0.353149, 0.310136, 0.124718)]),
    {0.001: {"linf": 2.64275e-04, "l2": 6.55334e-05},
     0.01: {"linf": 2.35909e-04, "l2": 6.07706e-05},
     0.1: {"linf": 9.85169e-05, "l2": 2.46429e-05}},
)

TABLE_5 = PublishedTable(
    5, "ex2", 1, ("fem", "asai", "present", "exact"),
    _long(_X3, _T5, ("fem", "asai", "present", "exact"), [
        (0.32091, 0.31754, 0.317374, 0.31752), (0.24910, 0.24616, 0.246045, 0.24614),
        (0.20211, 0.19958, 0.199490, 0.19956), (0.16782, 0.16562, 0.165549, 0.16560),
        (0.02828, 0.02777, 0.027752, 0.02776),
        (0.58788, 0.58460, 0.584404, 0.58458), (0.46174, 0.45805, 0.457862, 0.45798),
        (0.37111, 0.36748, 0.367304, 0.36740), (0.30183, 0.29843, 0.298267, 0.29834),
        # the competitor's 0.41090 is printed as is (a shifted decimal point)
        (0.04185, 0.41090, 0.041054, 0.04107),
        (0.65054, 0.64586, 0.645660, 0.64562), (0.50825, 0.50294, 0.502629, 0.50268),
        (0.39068, 0.38557, 0.385269, 0.38534), (0.30057, 0.29605, 0.295794, 0.29586),
        (0.03106, 0.03046, 0.030432, 0.03044),
    ]),
)

TABLE_6 = PublishedTable(
    6, "ex2", 2, ("present", "exact"),
    _long(_X3, _T4, ("present", "exact"), [
        (0.047372, 0.047415), (0.024321, 0.024336), (0.016355, 0.016362), (0.012268, 0.012272),
        (0.094895, 0.094814), (0.048653, 0.048660), (0.032542, 0.032550), (0.023951, 0.023957),
        (0.142693, 0.142154), (0.071560, 0.071517), (0.044330, 0.044328), (0.029271, 0.029275),
    ]),
)

TABLE_7 = PublishedTable(
    7, "ex3", 0, ("exact", "present", "xie"),
    tuple(sorted(_long((0.2, 0.4, 0.6, 0.8, 1.0), (1.7, 3.0, 3.5), ("exact", "present", "xie"), [
        (0.117647, 0.117660, 0.11745), (0.066667, 0.066669, 0.06648), (0.057143, 0.057144, 0.05697),
        (0.235294, 0.235420, 0.23456), (0.133333, 0.133355, 0.13295), (0.114286, 0.114299, 0.11394),
        (0.352909, 0.353346, 0.34936), (0.200000, 0.200079, 0.19922), (0.171429, 0.171478, 0.17082),
        (0.000000, 0.000000, 0.00000), (0.266618, 0.266808, 0.26478), (0.228571, 0.228690, 0.22737),
        (0.000000, 0.000000, 0.00000), (0.000000, 0.000000, 0.00000), (0.000020, 2.03e-05, 0.000028),
    ]), key=lambda r: (r[1], r[0]))),
    # printed as 10^3 times the norm
    {1.7: {"linf": 0.50201, "l2": 0.16675, "xie_linf": 29.70447, "xie_l2": 3.59366},
     3.0: {"linf": 0.21289, "l2": 0.08135, "xie_linf": 19.00976, "xie_l2": 2.63510},
     3.5: {"linf": 0.16870, "l2": 0.06695, "xie_linf": 16.78871, "xie_l2": 2.41729}},
    norm_scale=1e3,
)

TABLES = {t.id: t for t in (TABLE_1, TABLE_2, TABLE_3, TABLE_4, TABLE_5, TABLE_6, TABLE_7)}


# -- printed scheme coefficients --------------------------------------------

# Stability function, ascending powers of s.  The two printed forms disagree
# with each other in places, so both are kept.
PRINTED_PSI_NUM = tuple(540 * c for c in (840, -414, 82, -7))
PRINTED_PSI_DEN = (453600, 230040, 48600, 5480, 540, 135, 27)
# Matrix form of the heat propagator: 540 (840 I - 414 rD + 84 (rD)^2 - 7 (rD)^3)
# on the right and a first-order denominator term of 2300.
PRINTED_MATRIX_NUM = tuple(540 * c for c in (840, -414, 84, -7))
PRINTED_MATRIX_DEN = (453600, 2300, 48600, 5480, 540, 135, 27)

# Hermite stencils as (denominator, numerators of u_n, u_{n+1}, hu'_n, hu'_{n+1}, h^2u''_n, h^2u''_{n+1}).
PRINTED_HERMITE = {
    1: (15552, (1500, 552, 2250, -210, 125, 25)),
    2: (243, (192, 51, 48, -18, 4, 2)),
    3: (64, (32, 32, 10, -10, 1, 1)),
    4: (243, (51, 192, 18, -48, 2, 4)),
    5: (15552, (552, 15000, 210, -2250, 25, 125)),
}

# Taylor-substituted stages: (denominator, numerators of u_n, u_{n+1}, hu'_n,
# h^2u''_n, hu'_{n+1}, h^2u''_{n+1}, tail multiplier).
PRINTED_STAGES = {
    1: (46656, (44875, 1781, 6750, 375, -755, F(275, 2), 125)),
    2: (729, (568, 161, 144, 12, -62, 10, 8)),
    3: (64, (31, 33, 10, 1, -11, F(3, 2), 1)),
    4: (729, (145, 584, 54, 6, -152, 20, 8)),
    5: (46656, (1531, 45125, 630, 75, -6875, F(875, 2), 125)),
}
# Coefficients of h^3 u''', h^4 u'''', h^5 u^(5) at t_{n+1} inside the tail.
PRINTED_TAIL = (F(-1, 6), F(-1, 6), F(-1, 6))

# Error constants: Hermite h^6 and h^7 terms, stage h^7 terms after the
# Taylor substitution, and the Newton-Cotes h^9 term.
PRINTED_HERMITE_H6 = {1: F(-25, 6718464), 2: F(-1, 65610), 3: F(-1, 46080),
                      4: F(-1, 65610), 5: F(-25, 6718464)}
PRINTED_HERMITE_H7 = {1: F(-475, 282175488), 2: F(-1, 137781), 3: F(-1, 92160),
                      4: F(-11, 1377810), 5: F(-575, 282175488)}
PRINTED_STAGE_H7 = {1: F(425, 282175488), 2: F(4, 688905), 3: F(1, 129024),
                    4: F(1, 196830), 5: F(325, 282175488)}
PRINTED_NEWTON_COTES_H9 = F(-1, 1567641600)
