"""Reference values of F_m(z) computed independently with mpmath's 1F1 at
40 digits and frozen here as 32-digit strings: (m, z, re, im)."""

from incgamma import xprec
from incgamma.xprec import XComplex

FROZEN = (
    (0, 2 + 0j, "0.59814400666130410146571188523717", "0"),
    (1, 2 + 0j, "0.11570218085617285239292809756617", "0"),
    (2, 10 - 7j, "0.000055779024303818523081824273815268", "0.001273543368486499110881365254097"),
    (0, -20 + 5j, "433090.79890387265795166075156935", "12056810.265831977221059125414448"),
    (3, -20 + 0j, "10723779.257785635361725433241056", "0"),
    (2, -20 + 0j, "11242805.019672972700017900179861", "0"),
    (5, 30 + 30j, "-0.000000011185800817796052437078475818596", "0.000000027004908973588114184815820358451"),
    (1, -12 + 3j, "-5871.3842534232449521298795725493", "-2313.5441025137891745602400402096"),
    (0, 0.5 + 0.25j, "0.8512379687875637298465399801212", "-0.06202073585464629770874707650816"),
    (4, -33 + 36j, "-1646916605294.1641421498680382914", "1292352998307.4321106327582929858"),
    (0, 40 + 0j, "0.14012478040994821743031797846723", "0"),
)

E = "2.718281828459045235360287471352662497757"


def frozen_value(re: str, im: str) -> XComplex:
    return XComplex(xprec.from_decimal_string(re), xprec.from_decimal_string(im))
