"""Hand-derived regime truth table shared by the regime and acceptance tests."""

from fractions import Fraction

from gmhd2d.regime import Source

# (alpha, beta) -> expected source, derived by hand from the region
# predicates in precedence order.  Dyadic values are exact in binary so
# boundary cases are really on the boundary.
TRUTH = [
    # the five documented examples
    ((0.4, 1.0), Source.Theorem1_1),
    ((0.2, 1.3), Source.Theorem1_2),
    ((1 / 3, 1.0), Source.Uncovered),
    ((0.0, 1.2), Source.Remark_alpha0),
    ((0.6, 1.0), Source.Wu22_case1),
    # hand-derived additions
    ((0.45, 1.0), Source.Theorem1_1),
    ((0.375, 1.0), Source.Theorem1_1),
    ((0.5, 1.0), Source.Wu22_case1),  # alpha = 1/2 leaves the strict Theorem1_1 band
    ((0.75, 1.5), Source.Wu22_case1),
    ((0.4, 0.99), Source.Uncovered),  # beta just below 1
    ((0.3125, 1.0), Source.Uncovered),  # alpha below 1/3 at beta = 1
    ((0.4, 1.25), Source.Wu22_case3),  # 2a + b = 2.05
    ((0.25, 1.25), Source.Theorem1_2),  # 2.5 + 2/3 > 3
    ((0.25, 1.5), Source.Theorem1_2),  # beta = 3/2 closed end
    ((0.25, 1.0), Source.Uncovered),  # beta = 1 fails beta > 1
    ((0.25, 1.625), Source.Wu22_case3),  # beta > 3/2, 2a + b = 2.125
    ((0.125, 1.375), Source.Theorem1_2),  # 2.75 + 2/7 > 3
    ((0.125, 1.3125), Source.Uncovered),  # 2.625 + 2/7 < 3; a + 2b = 2.75
    ((0.125, 1.125), Source.Uncovered),
    ((0.0, 1.75), Source.Ref31_case1),
    ((0.0, 1.5), Source.Remark_alpha0),  # beta = 3/2 fails the strict Ref31 bound
    ((0.0, 2.5), Source.Wu22_case3),
    ((0.0, 1.0), Source.Uncovered),
    ((2.0, 0.0), Source.Wu22_case2),
    ((1.75, 0.0), Source.Uncovered),
    ((0.5, 0.75), Source.Uncovered),
]


def spreadsheet(a, b):
    """Region membership written out as plain inequalities, first match wins."""
    a, b = Fraction(a), Fraction(b)
    third, half = Fraction(1, 3), Fraction(1, 2)
    rows = [
        (Source.Theorem1_1, third < a < half and b == 1),
        (Source.Theorem1_2, 0 < a <= third and 1 < b <= Fraction(3, 2) and 2 * b + 2 * a / (1 - a) > 3),
        (Source.Wu22_case1, a >= half and b >= 1),
        (Source.Wu22_case2, a >= 2 and b == 0),
        (Source.Wu22_case3, 0 <= a < half and 2 * a + b > 2),
        (Source.Ref31_case1, a == 0 and b > Fraction(3, 2)),
        (Source.Ref31_case2, 0 < a < half and Fraction(5, 4) < b <= Fraction(3, 2) and a + 2 * b > 3),
        (Source.Remark_alpha0, a == 0 and b > 1),
    ]
    return next((s for s, ok in rows if ok), Source.Uncovered)
