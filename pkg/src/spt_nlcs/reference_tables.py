"""Published polynomial tables, kept verbatim for comparison.

Coefficients are ``{power: coefficient}``.  Some entries are known to be
misprinted; :mod:`spt_nlcs.verify` reports those as warnings together with
the exact values computed here.
"""

from fractions import Fraction as F

P_TABLE = [
    {0: 1},
    {1: 1},
    {2: 1, 0: -1},
    {3: 1, 1: -4},
    {4: 1, 2: F(-32, 3), 0: F(20, 3)},
    {5: 1, 3: F(-108, 5), 1: F(252, 5)},
    {6: 1, 4: F(-1593, 41), 2: F(9612, 41), 0: F(-4716, 41)},
]

Q_TABLE = [
    {0: 1},
    {1: 1},
    {2: 1, 0: -4},
    {3: 1, 1: -9},
    {4: 1, 2: F(-108, 5), 0: F(252, 5)},
    {5: 1, 3: F(-256, 7), 1: F(1296, 7)},
    {6: 1, 4: F(-8208, 131), 2: F(37429, 50), 0: F(-21035, 16)},
]

XI_TABLE = {2: F(3), 4: F(656, 3), 6: F(3681936, 41)}

# V_n = sqrt(radicand) * poly
V_TABLE = [
    (F(1, 3), {1: 1, 0: -1}),
    (F(3, 41), {2: F(1, 4), 1: F(-8, 3), 0: F(5, 3)}),
    (F(41, 2841), {3: F(1, 36), 2: F(-177, 164), 1: F(267, 41), 0: F(-131, 41)}),
]

# gamma = 0 shift family as printed; inconsistent with its own recurrence
PHI_TABLE = [
    {0: 1},
    {1: 2},
    {2: 2, 0: -1},
    {3: 4, 1: F(-8, 3)},
    {4: 2, 2: F(-10, 3), 0: 1},
    {5: F(4, 5), 3: F(-16, 5), 1: F(46, 15)},
    {6: F(4, 15), 4: F(-56, 15), 2: F(196, 45), 0: -1},
]

# claimed limit of A_n / n for the (n!)^2 system
A_RATIO_CLAIM = "pi/16"
