"""Stored reference matrices for the built-in families.

These are the published tables the generators must reproduce bit-exactly;
:mod:`asmcopula.reproduce` compares every generator output against them.
All values are plain ints (L-scale for grid tables).
"""

F_4_1 = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
]

F_4_2 = [
    [0, 1, 0, 0],
    [1, -1, 1, 0],
    [0, 1, -1, 1],
    [0, 0, 1, 0],
]

F_4_4 = [
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [1, 0, 0, 0],
]

F_5_2 = [
    [0, 1, 0, 0, 0],
    [1, -1, 1, 0, 0],
    [0, 1, -1, 1, 0],
    [0, 0, 1, -1, 1],
    [0, 0, 0, 1, 0],
]

F_5_3 = [
    [0, 0, 1, 0, 0],
    [0, 1, -1, 1, 0],
    [1, -1, 1, -1, 1],
    [0, 1, -1, 1, 0],
    [0, 0, 1, 0, 0],
]

Q_F_4_1 = [
    [1, 1, 1, 1],
    [1, 2, 2, 2],
    [1, 2, 3, 3],
    [1, 2, 3, 4],
]

Q_F_4_2 = [
    [0, 1, 1, 1],
    [1, 1, 2, 2],
    [1, 2, 2, 3],
    [1, 2, 3, 4],
]

Q_F_4_4 = [
    [0, 0, 0, 1],
    [0, 0, 1, 2],
    [0, 1, 2, 3],
    [1, 2, 3, 4],
]

Q_F_5_2 = [
    [0, 1, 1, 1, 1],
    [1, 1, 2, 2, 2],
    [1, 2, 2, 3, 3],
    [1, 2, 3, 3, 4],
    [1, 2, 3, 4, 5],
]

Q_F_5_3 = [
    [0, 0, 1, 1, 1],
    [0, 1, 1, 2, 2],
    [1, 1, 2, 2, 3],
    [1, 2, 2, 3, 4],
    [1, 2, 3, 4, 5],
]

F_5_3_POSITIVE = [
    [0, 0, 1, 0, 0],
    [0, 1, 0, 1, 0],
    [1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0],
    [0, 0, 1, 0, 0],
]

F_5_3_NEGATIVE = [
    [0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0],
    [0, -1, 0, -1, 0],
    [0, 0, -1, 0, 0],
    [0, 0, 0, 0, 0],
]

SUM_F_6_4_F_6_5 = [
    [0, 0, 0, 1, 1, 0],
    [0, 0, 1, 0, 0, 1],
    [0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 1, 0],
    [1, 0, 0, 1, 0, 0],
    [0, 1, 1, 0, 0, 0],
]

SPLIT_F_6_A = [
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
]

SPLIT_F_6_B = [
    [0, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0],
]

PARITY_5_ODD = [
    [1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1],
]

PARITY_5_EVEN = [
    [0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0],
]

NONDENSE_LOWER_7 = [
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, -1, 1],
    [0, 0, 1, 0, -1, 1, 0],
    [0, 1, 0, -1, 1, 0, 0],
    [1, 0, -1, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
]

NONDENSE_UPPER_7 = [
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, -1, 1, 0],
    [0, 1, 0, -1, 1, 0, 0],
    [1, 0, -1, 1, 0, -1, 1],
    [0, 0, 1, 0, -1, 1, 0],
    [0, 0, 0, 0, 1, 0, 0],
]

Q_NONDENSE_LOWER_7 = [
    [0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1, 2, 2],
    [0, 0, 0, 1, 2, 2, 3],
    [0, 0, 1, 2, 2, 3, 4],
    [0, 1, 2, 2, 3, 4, 5],
    [1, 2, 2, 3, 4, 5, 6],
    [1, 2, 3, 4, 5, 6, 7],
]

Q_NONDENSE_UPPER_7 = [
    [0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 1, 2, 2, 2],
    [0, 0, 1, 2, 2, 3, 3],
    [0, 1, 2, 2, 3, 4, 4],
    [1, 2, 2, 3, 4, 4, 5],
    [1, 2, 3, 4, 4, 5, 6],
    [1, 2, 3, 4, 5, 6, 7],
]

NONDENSE_DEFECT_7 = [
    [0, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, -1, -1, 0, 0],
    [0, 0, -1, -1, 0, -1, 0],
    [0, -1, -1, 0, -1, -1, 0],
    [-1, -1, 0, -1, -1, 0, 0],
    [0, 0, -1, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
]

WITNESS_7_1 = [
    [0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 1, 2, 2, 2],
    [0, 0, 0, 1, 2, 2, 3],
    [0, 1, 1, 2, 3, 3, 4],
    [1, 2, 2, 3, 4, 4, 5],
    [1, 2, 2, 3, 4, 5, 6],
    [1, 2, 3, 4, 5, 6, 7],
]

WITNESS_7_2 = [
    [0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 2, 2],
    [0, 0, 1, 1, 2, 3, 3],
    [0, 1, 2, 2, 3, 4, 4],
    [0, 1, 2, 2, 3, 4, 5],
    [1, 2, 3, 3, 4, 5, 6],
    [1, 2, 3, 4, 5, 6, 7],
]

WITNESS_7_3 = [
    [0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 2, 2],
    [0, 0, 1, 2, 2, 3, 3],
    [0, 0, 1, 2, 2, 3, 4],
    [1, 1, 2, 3, 3, 4, 5],
    [1, 2, 3, 4, 4, 5, 6],
    [1, 2, 3, 4, 5, 6, 7],
]

WITNESS_MASS_7_1 = [
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 0],
]

WITNESS_MASS_7_2 = [
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0],
]

WITNESS_MASS_7_3 = [
    [0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
]

PATTERN_7_1 = [
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0],
    [1, 1, 0, 1, 1, 0],
    [0, 0, 0, 0, 0, 0],
]

PATTERN_7_2 = [
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1],
    [0, 1, 1, 0, 1, 1],
    [0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
]

PATTERN_7_3 = [
    [0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 1, 1, 0, 1],
    [0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0],
    [0, 0, 1, 1, 0, 0],
]

SMALLEST_PROPER_QUASI_3 = [
    [0, 1, 1],
    [1, 1, 2],
    [1, 2, 3],
]

SMALLEST_PROPER_MASS_3 = [
    [0, 1, 0],
    [1, -1, 1],
    [0, 1, 0],
]
