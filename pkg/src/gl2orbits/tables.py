"""Compiled-in reference data.

Orbit multisets list the sizes of the orbits of a closed class on the
cosets of B0(n) (``x0``) or B1(n) (``x1``) at the class level.
"""

from fractions import Fraction as F

# Rational CM j-invariants.
CM_J = frozenset(
    F(j)
    for j in (
        0, 1728, -3375, 8000, -32768, 54000, 287496, -884736, -12288000,
        16581375, -884736000, -147197952000, -262537412640768000,
    )
)

# Degrees d at level m occurring for infinitely many rational-j points.
D0_INFINITE = {
    1: {1}, 2: {1, 2}, 3: {1, 2, 3}, 4: {1, 3}, 5: {1, 2, 4, 5}, 6: {1, 2},
    7: {1, 2, 6, 7}, 8: {1}, 9: {1, 2}, 10: {1, 2, 5, 10}, 12: {1, 3},
    13: {1, 13}, 16: {1}, 18: {1, 2, 4}, 25: {1, 4},
}
D1_INFINITE = {
    1: {1}, 2: {1, 2}, 3: {1, 2, 3}, 4: {1, 3}, 5: {1, 2, 4, 5, 8, 10},
    6: {1, 2}, 7: {1, 3, 6, 7, 18, 21}, 8: {1, 2}, 9: {1, 3, 6},
    10: {1, 2, 4, 5, 10, 20}, 12: {1, 2, 3, 6}, 13: {2, 3, 6, 26, 39, 78},
    16: {2}, 18: {6, 12}, 25: {5, 10, 20, 40},
}

# All degrees, conditional on Zywina's classification; unlisted levels
# coincide with the infinite sets.
D0_ALL = {
    7: D0_INFINITE[7] | {3},
    11: {1, 11},
    12: D0_INFINITE[12] | {9},
    13: D0_INFINITE[13] | {6, 8},
    15: {1, 2, 3, 5, 10, 15},
    17: {1, 17},
    21: {1, 3, 7, 21},
    28: {3, 21},
    37: {1, 37},
}
D1_ALL = {
    7: D1_INFINITE[7] | {9},
    11: {5, 55},
    12: D1_INFINITE[12] | {9, 18},
    13: D1_INFINITE[13] | {36, 48},
    15: {2, 4, 6, 10, 12, 20, 30, 60},
    17: {4, 8, 68, 136},
    21: {3, 6, 9, 18, 21, 42, 63, 126},
    28: {9, 18, 63, 126},
    37: {6, 18, 222, 666},
}

# B0-closed classes with infinitely many rational points: (level, label, x0 orbits).
INFINITE_B0 = [
    (1, "1.1.0.a.1", (1,)),
    (2, "2.6.0.a.1", (1, 1, 1)),
    (2, "2.3.0.a.1", (1, 2)),
    (3, "3.12.0.a.1", (1, 1, 2)),
    (3, "3.4.0.a.1", (1, 3)),
    (3, "3.6.0.b.1", (2, 2)),
    (4, "4.24.0.b.1", (1, 1, 1, 1, 2)),
    (4, "4.12.0.b.1", (1, 1, 2, 2)),
    (4, "4.24.0.c.1", (1, 1, 2, 2)),
    (4, "4.6.0.c.1", (1, 1, 4)),
    (4, "4.12.0.f.1", (2, 2, 2)),
    (4, "4.8.0.b.1", (3, 3)),
    (5, "5.30.0.a.1", (1, 1, 4)),
    (5, "5.6.0.a.1", (1, 5)),
    (5, "5.15.0.a.1", (2, 4)),
    (6, "6.24.0.a.1", (1, 1, 1, 3, 3, 3)),
    (6, "6.36.0.a.1", (1, 1, 2, 2, 2, 4)),
    (6, "6.12.0.a.1", (1, 2, 3, 6)),
    (6, "6.36.0.b.1", (2, 2, 2, 2, 4)),
    (6, "6.18.0.b.1", (2, 2, 4, 4)),
    (6, "6.24.0.c.1", (3, 3, 6)),
    (6, "6.18.0.c.1", (4, 4, 4)),
    (7, "7.8.0.a.1", (1, 7)),
    (7, "7.28.0.a.1", (2, 6)),
    (8, "8.24.0.q.1", (1, 1, 1, 1, 8)),
    (8, "8.24.0.i.1", (1, 1, 2, 4, 4)),
    (8, "8.12.0.n.1", (1, 1, 2, 8)),
    (8, "8.24.0.bf.1", (2, 2, 4, 4)),
    (8, "8.24.0.g.1", (2, 2, 4, 4)),
    (8, "8.12.0.r.1", (2, 2, 8)),
    (9, "9.12.0.a.1", (1, 2, 9)),
    (10, "10.18.0.a.1", (1, 2, 5, 10)),
    (10, "10.30.0.a.1", (6, 12)),
    (12, "12.24.0.g.1", (1, 1, 3, 3, 4, 12)),
    (12, "12.36.0.b.1", (2, 2, 4, 8, 8)),
    (12, "12.36.0.n.1", (4, 4, 8, 8)),
    (12, "12.18.0.c.1", (4, 4, 16)),
    (12, "12.24.0.o.1", (12, 12)),
    (13, "13.14.0.a.1", (1, 13)),
    (16, "16.24.0.g.1", (1, 1, 2, 4, 16)),
    (16, "16.24.0.i.1", (2, 2, 4, 16)),
    (18, "18.36.0.a.1", (1, 2, 2, 4, 9, 18)),
    (18, "18.24.0.c.1", (3, 6, 27)),
    (25, "25.30.0.a.1", (1, 4, 25)),
]

_J13 = (F(-143 * 1040**3, 3**13), F(130 * 442**3, 3**13), F(12077 * 1957713745728**3, 305**13))

# Finitely occurring B0(n)-closures: (level, label, j-invariants, x0 orbits).
FINITE_B0 = [
    (7, "7.56.1.b.1", (F(2268945, 128),), (2, 3, 3)),
    (11, "11.12.1.a.1", (F(-121), F(-24729001)), (1, 11)),
    (12, "12.32.1.b.1", (F(-35937, 4), F(109503, 64)), (3, 3, 9, 9)),
    (12, "12.48.1.q.1", (F(3375, 64),), (6, 6, 12)),
    (13, "13.91.3.a.1", _J13, (6, 8)),
    (15, "15.24.1.a.1", (F(-25, 2), F(-121945, 32), F(46969655, 32768), F(-349938025, 8)), (1, 3, 5, 15)),
    (15, "15.36.1.b.1", (F(1331, 8), F(-1680914269, 32768)), (2, 2, 10, 10)),
    (17, "17.18.1.a.1", (F(-297756989, 2), F(-882216989, 131072)), (1, 17)),
    (21, "21.32.1.a.1", (F(3375, 2), F(-140625, 8), F(-(5745**3), 2**7), F(-9 * 505**3, 2**21)), (1, 3, 7, 21)),
    (28, "28.64.3.b.1", (F(351, 4), F(-13 * 1437**3, 2**14)), (3, 3, 21, 21)),
    (37, "37.38.2.a.1", (F(-9317), F(-7 * 285371**3)), (1, 37)),
]

# Finitely occurring B1(n)-closures: (level, label, j-invariants, x1 orbits).
FINITE_B1 = [
    (7, "7.56.1.b.1", (F(2268945, 128),), (6, 9, 9)),
    (11, "11.12.1.a.1", (F(-121), F(-24729001)), (5, 55)),
    (12, "12.48.1.q.1", (F(3375, 64),), (12, 12, 24)),
    (12, "12.64.1.b.1", (F(109503, 64),), (3, 3, 6, 18, 18)),
    (12, "12.64.1.b.2", (F(-35937, 4),), (6, 6, 9, 9, 18)),
    (13, "13.91.3.a.1", _J13, (36, 48)),
    (15, "15.48.1.a.1", (F(-121945, 32), F(46969655, 32768)), (2, 2, 6, 6, 20, 60)),
    (15, "15.48.1.a.2", (F(-25, 2), F(-349938025, 8)), (4, 10, 10, 12, 30, 30)),
    (15, "15.72.1.a.1", (F(-1680914269, 32768),), (8, 8, 20, 20, 40)),
    (15, "15.72.1.a.2", (F(1331, 8),), (4, 4, 8, 40, 40)),
    (16, "16.96.3.fa.1", (F(4097**3, 2**4),), (16, 16, 16, 16, 32)),
    (16, "16.96.3.fa.2", (F(16974593, 256),), (8, 8, 8, 8, 64)),
    (17, "17.36.1.a.1", (F(-297756989, 2),), (8, 68, 68)),
    (17, "17.36.1.a.2", (F(-882216989, 131072),), (4, 4, 136)),
    (18, "18.72.2.c.1", (F(406749952),), (27, 27, 27, 27)),
    (18, "18.72.2.c.2", (F(1792),), (9, 9, 9, 81)),
    (20, "20.48.1.a.1", (F(1026895, 1024),), (12, 12, 120)),
    (20, "20.48.1.a.2", (F(-1723025, 4),), (24, 60, 60)),
    (21, "21.64.1.a.1", (F(-9 * 505**3, 2**21),), (6, 18, 21, 21, 126)),
    (21, "21.64.1.a.2", (F(3375, 2),), (6, 9, 9, 42, 126)),
    (21, "21.64.1.a.3", (F(-140625, 8),), (3, 3, 18, 42, 126)),
    (21, "21.64.1.a.4", (F(-(5745**3), 2**7),), (6, 18, 42, 63, 63)),
    (24, "24.72.2.hl.1", (F(4913),), (32, 32, 128)),
    (24, "24.72.2.hl.2", (F(16974593),), (64, 64, 64)),
    (28, "28.128.5.b.1", (F(-13 * 1437**3, 2**14),), (18, 18, 63, 63, 126)),
    (28, "28.128.5.b.2", (F(351, 4),), (9, 9, 18, 126, 126)),
    (37, "37.114.4.b.1", (F(-9317),), (6, 6, 6, 666)),
    (37, "37.114.4.b.2", (F(-7 * 285371**3),), (18, 222, 222, 222)),
]

# Explicit images of Galois for exceptional j: (curve label, j, modulus n,
# index i, genus g, SL-level m, generators as row-major [a, b, c, d]).
EXCEPTIONAL_IMAGES = [
    ("7.56.1.b.1", F(2268945, 128), 56, 112, 5, 14,
     [[1, 28, 41, 55], [49, 22, 41, 27], [20, 21, 1, 1], [0, 19, 23, 16]]),
    ("12.32.1.b.1", F(-35937, 4), 12, 64, 1, 12,
     [[9, 5, 8, 3], [10, 1, 5, 3], [1, 0, 9, 7]]),
    ("12.32.1.b.1", F(109503, 64), 12, 64, 1, 12,
     [[6, 5, 5, 3], [9, 8, 5, 3], [11, 8, 3, 1]]),
    ("15.36.1.b.1", F(1331, 8), 1560, 288, 17, 30,
     [[439, 117, 15, 4], [71, 27, -405, -154], [18, 31, 5, 9], [-57, -62, 25, 27],
      [27, 158, 25, 147], [-131, -150, 15, 17], [176, 15, 45, 4]]),
    ("15.36.1.b.1", F(-1680914269, 32768), 1560, 288, 17, 30,
     [[11, 261, 15, 356], [49, -567, 15, 304], [-6, -1, 25, 3], [117, 17, 20, 3],
      [27, 7, -130, -33], [82, 15, 75, 14], [29, 0, 15, 1]]),
    ("16.96.3.fa.1", F(4097**3, 2**4), 656, 192, 9, 16,
     [[44, 133, 201, 442], [40, 91, 187, 550], [347, 64, 180, 655], [135, 546, 552, 37]]),
    ("16.96.3.fa.2", F(16974593, 256), 656, 192, 9, 16,
     [[235, 164, 552, 55], [393, 392, 202, 167], [395, 612, 400, 63], [578, 395, 577, 382]]),
    ("18.72.2.c.1", F(406749952), 252, 432, 28, 36,
     [[163, 90, 216, 155], [221, 96, 122, 235], [121, 99, 183, 122], [20, 135, 69, 173]]),
    ("18.72.2.c.2", F(1792), 252, 432, 28, 36,
     [[164, 129, 79, 199], [116, 57, 1, 1], [203, 141, 173, 196], [133, 18, 156, 107]]),
    ("24.72.2.hl.1", F(4913), 3120, 576, 41, 48,
     [[117, 188, 28, 45], [13, 12, 300, 277], [9, 10, 170, 189], [27, 50, 34, 63],
      [19, 32, -154, -259], [-2, 43, -1, 16], [160, 27, 189, 32], [262, 35, 239, 32],
      [10, 3, 99, 32]]),
    ("24.72.2.hl.2", F(16974593), 3120, 576, 41, 48,
     [[41, 42, -534, -547], [25, 18, 18, 13], [9, -152, 8, -135], [11, 42, 138, 527],
      [-469, -434, 40, 37], [34, -101, 23, -68], [32, 165, 3, 16], [-14, -13, 23, 20],
      [-752, 45, -435, 26]]),
]
