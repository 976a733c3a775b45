"""Reference tables for n = 4, with the n = 7 sign pattern and tau_* coefficients."""

from derangement.algebra.poly import parse
from derangement.partitions import parse_partition

PSI_4 = [
    ("(4)", ["1", "1", "1", "1", "1"]),
    ("(3,1)", ["0", "1", "1+q", "1+q+q^2", "q+q^2+q^3"]),
    ("(2^2)", ["0", "0", "1", "q+q^2", "q^2+q^4"]),
    ("(2,1^2)", ["0", "0", "q", "q+q^2+q^3", "q^3+q^4+q^5"]),
    ("(1^4)", ["0", "0", "0", "q^3", "q^6"]),
    ("(3)", ["0", "1", "1+q", "1+q+q^2", "1+q+q^2+q^3"]),
    ("(2,1)", ["0", "0", "1+q", "1+2q+2q^2+q^3", "q+2q^2+2q^3+2q^4+q^5"]),
    ("(1^3)", ["0", "0", "0", "q+q^2+q^3", "q^3+q^4+q^5+q^6"]),
    ("(2)", ["0", "0", "1", "1+q+q^2", "1+q+2q^2+q^3+q^4"]),
    ("(1^2)", ["0", "0", "0", "1+q+q^2", "q+q^2+2q^3+q^4+q^5"]),
    ("(1)", ["0", "0", "0", "1", "1+q+q^2+q^3"]),
    ("()", ["0", "0", "0", "0", "1"]),
]

TAU_4 = [
    ("(4)", ["1", "0", "0", "0", "0"]),
    ("(3,1)", ["0", "1", "0", "0", "0"]),
    ("(2^2)", ["0", "0", "1", "0", "0"]),
    ("(2,1^2)", ["0", "0", "q", "q", "0"]),
    ("(1^4)", ["0", "0", "0", "q^3", "0"]),
    ("(3)", ["0", "1", "0", "0", "1"]),
    ("(2,1)", ["0", "0", "1+q", "1+q", "q+q^2"]),
    ("(1^3)", ["0", "0", "0", "q+q^2+q^3", "q^3"]),
    ("(2)", ["0", "0", "1", "1", "1+q+q^2"]),
    ("(1^2)", ["0", "0", "0", "1+q+q^2", "q+q^2+q^3"]),
    ("(1)", ["0", "0", "0", "1", "1+q+q^2"]),
    ("()", ["0", "0", "0", "0", "1"]),
]

# psi_k = sum_j RELATIONS_4[k][j] tau_j, as listed
RELATIONS_4 = [
    ["1", "0", "0", "0", "0"],
    ["1", "1", "0", "0", "0"],
    ["1", "q+1", "1", "0", "0"],
    ["1", "q^2+q+1", "q^2+q", "1", "0"],
    ["1", "q^3+q^2+q+1", "q^4+q^2", "q^3", "1"],
]

# the one reference relation entry that contradicts both reference tables
RELATION_TYPO = (4, 1)
RELATION_TYPO_CONSISTENT = "q^3+q^2+q"

# n = 7 sign pattern on full-degree rows and the empty row:
# columns tau_0..tau_7 then tau_*
SIGNS_7 = [
    ("(7)", "+0000000", "0"),
    ("(6,1)", "0+000000", "0"),
    ("(5,2)", "00+00000", "0"),
    ("(5,1^2)", "00+000+0", "+"),
    ("(4,3)", "000+0000", "0"),
    ("(4,2,1)", "000+0++0", "+"),
    ("(4,1^3)", "000+0++0", "+"),
    ("(3^2,1)", "0000+000", "+"),
    ("(3,2^2)", "0000++00", "0"),
    ("(3,2,1^2)", "0000+++0", "+"),
    ("(3,1^4)", "0000+++0", "+"),
    ("(2^3,1)", "00000++0", "0"),
    ("(2^2,1^3)", "00000++0", "+"),
    ("(2,1^5)", "00000++0", "+"),
    ("(1^7)", "000000+0", "+"),
    ("()", "0000000+", "0"),
]

# tau_* coefficients as (numerator factors, denominator)
A1_FACTORS = (["1+q", "1+q^2"], "1+q+q^2")
A2_FACTORS = (["1+q", "1+q^2", "1+q^2", "1+q+q^2+q^3+q^4"], "q^2+q^4+q^5+q^6+q^7+q^8+q^10")


def factored(factors):
    from derangement.algebra.ratfunc import RatFunc

    num = parse("1")
    for f in factors[0]:
        num = num * parse(f)
    return RatFunc(num, parse(factors[1]))


def parsed(table):
    return [(parse_partition(lam), [parse(c) for c in cs]) for lam, cs in table]
