"""Printed reference constants used by the regression tables.

Values are kept digit for digit as printed (decimal strings, exponent in
e-notation).  ``verify_*`` regenerate each table and report the worst
agreement in significant digits.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction

from . import xprec

SQUARE_COEFFICIENTS = (  # n, m = 0 coefficient, m = 2 coefficient
    (0, "1", "0.400000000000000000000000000e-1"),
    (1, "0.666666666666666666666666667e0", "0.571428571428571428571428571e-1"),
    (2, "0.311111111111111111111111111e0", "0.426303854875283446712018141e-1"),
    (3, "0.114285714285714285714285714e0", "0.219336219336219336219336219e-1"),
    (4, "0.351322751322751322751322751e-1", "0.869747536414203080869747536e-2"),
    (5, "0.936347603014269680936347603e-2", "0.282147482147482147482147482e-2"),
    (6, "0.221154506868792583078297364e-2", "0.777103664804199563557852328e-3"),
    (7, "0.469653802987136320469653803e-3", "0.186373272028586786068726213e-3"),
    (8, "0.906122039019642505481285438e-4", "0.396416295893495680292990310e-4"),
    (9, "0.160102863921233374277749923e-4", "0.758266184345082723656120978e-5"),
    (10, "0.260776050517784531964366578e-5", "0.131867061458730315441573553e-5"),
    (11, "0.393758873504700134360389004e-6", "0.210339899099545682138376814e-6"),
    (12, "0.553887157733648509739501203e-7", "0.309979643679842498383620914e-7"),
    (13, "0.729011502968230897699716049e-8", "0.424639365523994831986834166e-8"),
    (14, "0.901287164837490715098084399e-9", "0.543551622746159408655512790e-9"),
    (15, "0.105033953753128822744305164e-9", "0.653045539725446173673461647e-10"),
    (16, "0.115746252845873781753063617e-10", "0.739312795811477673516467214e-11"),
    (17, "0.120958823002785231021337856e-11", "0.791392423639157016726023806e-12"),
    (18, "0.120184907818966373634131002e-12", "0.803457906212657330149072255e-13"),
    (19, "0.113807780888498702265902507e-13", "0.775764222941899253617165684e-14"),
    (20, "0.102930216582138497901039695e-14", "0.714102105093626044089405580e-15"),
)

GAUSS_JACOBI_K2 = (  # i, x_i, w_i for n = 20, weight x^2
    (1, "0.142042111593581533199768686e-1", "0.374922099333713477252413688e-5"),
    (2, "0.378512878495018102908391936e-1", "0.410391020873202055490740417e-4"),
    (3, "0.713009850812494546549021628e-1", "0.193888309617511810769838525e-3"),
    (4, "0.113858697085452856312717070e0", "0.607045704267258254152723740e-3"),
    (5, "0.164621085368438274828481605e0", "0.147744444197148580628385764e-2"),
    (6, "0.222507407964513246448874054e0", "0.302248917090737937491848598e-2"),
    (7, "0.286284388984712319257916565e0", "0.543209080612302745001201114e-2"),
    (8, "0.354592954222632433382679165e0", "0.881355607824335532892527317e-2"),
    (9, "0.425977341817173128272487803e0", "0.131409192566616517421081337e-1"),
    (10, "0.498916184517151448629375346e0", "0.182205034182686915518433153e-1"),
    (11, "0.571854959066743315384574965e0", "0.236822904142460539808664503e-1"),
    (12, "0.643239129897546894352944933e0", "0.290024047455892851699163573e-1"),
    (13, "0.711547287818727615228059293e0", "0.335564314534754934790027148e-1"),
    (14, "0.775323580615694961590618035e0", "0.366974204720181327132542496e-1"),
    (15, "0.833208746518990569987019299e0", "0.378473903769223407153546955e-1"),
    (16, "0.883969092344513195053302568e0", "0.365879165532270649866092989e-1"),
    (17, "0.926522808214714716942433455e0", "0.327346443175731480474796486e-1"),
    (18, "0.959963099538093219003679850e0", "0.263825644291255847945133897e-1"),
    (19, "0.983577911866012167097458386e0", "0.179137523257385591017739577e-1"),
    (20, "0.996869316259256410437849858e0", "0.797579273627665168522730903e-2"),
)

GAUSS_JACOBI_K4 = (  # i, x_i, w_i for n = 20, weight x^4
    (1, "0.282367221829331583898934765e-1", "0.171489567015906667815599902e-7"),
    (2, "0.593938154817751780322522762e-1", "0.440025639291105578951828823e-6"),
    (3, "0.988250831150225262212347131e-1", "0.413900724119088670178719260e-5"),
    (4, "0.145920471227084452769312100e0", "0.229635979881845930197982398e-4"),
    (5, "0.199802098226471397014274440e0", "0.907451461904243162330099036e-4"),
    (6, "0.259435172924709248624323270e0", "0.281471532039879029772225287e-3"),
    (7, "0.323665170861772757077832399e0", "0.725623616625890380039636288e-3"),
    (8, "0.391245042279918490749256395e0", "0.161256588461398806395269959e-2"),
    (9, "0.460861152278328674231868983e0", "0.316609787398703111701922567e-2"),
    (10, "0.531159535851314543423232530e0", "0.558643304722474380678643136e-2"),
    (11, "0.600772567899009318145452939e0", "0.896463278996732447462962435e-2"),
    (12, "0.668345741812982731345227612e0", "0.131908899308882527725861737e-1"),
    (13, "0.732564119517517701223330384e0", "0.178894967456314163407787983e-1"),
    (14, "0.792177975000657568549518999e0", "0.224144100215713193139298020e-1"),
    (15, "0.846027150209447611698432065e0", "0.259267829451372333710263530e-1"),
    (16, "0.893063660260154227964505363e0", "0.275517085612976959329639376e-1"),
    (17, "0.932372120985837169465290479e0", "0.265830703497369168587923015e-1"),
    (18, "0.963187641689199087742433404e0", "0.226831804240368255515804992e-1"),
    (19, "0.984911082762489563304922913e0", "0.160175399312516574642090900e-1"),
    (20, "0.997124584524283684936496169e0", "0.728779141997403302973286681e-2"),
)

# maximum deviation of the Fourier reconstruction of u^(m-1/2) on [0,1]
FOURIER_DEVIATION = {  # (m, N) -> printed value
    (1, 512): 3.6e-2, (1, 256): 5.1e-2, (1, 128): 7.4e-2,
    (2, 512): 4.6e-5, (2, 256): 1.3e-4, (2, 128): 3.7e-4,
    (3, 512): 8.2e-6, (3, 256): 3.5e-5, (3, 128): 1.4e-4,
}

# maximum Taylor terms over the grid domain; None where the stored indexes run out
TAYLOR_TERMS_DIGITS = (12, 14, 15, 16, 17)
TAYLOR_TERMS_STRIDE3 = {
    0: (21, 23, 24, 25, 26),
    1: (21, 23, 24, 25, 26),
    3: (21, 23, 24, 25, 26),
    5: (21, 23, 24, 25, None),
}
TAYLOR_TERMS_STRIDE1 = {
    0: (14, 16, 17, 17, 18),
    1: (14, 16, 16, 17, 18),
    5: (14, 15, 16, 17, 18),
}


def printed_digits(s: str) -> int:
    """Significant digits carried by a printed mantissa."""
    man = s.split("e")[0].lstrip("-").replace(".", "").lstrip("0")
    return max(len(man), 1)


def agreement(printed: str, value) -> float:
    """Significant digits to which ``value`` (Fraction or double-double)
    reproduces ``printed``; 40 when identical."""
    with localcontext() as ctx:
        ctx.prec = 60
        p = Decimal(printed)
        if isinstance(value, Fraction):
            v = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            v = Decimal(value.hi) + Decimal(value.lo)
        if v == p:
            return 40.0
        return float(-(abs(v - p) / abs(v)).log10())


def matches_printed(printed: str, exact: Fraction) -> bool:
    """True when ``printed`` is ``exact`` correctly rounded (last digit +-1)."""
    mant, _, exp = printed.partition("e")
    places = len(mant.split(".")[1]) if "." in mant else 0
    scale = Fraction(10) ** (int(exp or 0) - places)
    return abs(Fraction(Decimal(printed)) - exact) <= scale


def verify_square_coefficients():
    """[(m, n, ok)] for every printed square-series coefficient."""
    from .series import square_coefficient
    out = []
    for n, c0, c2 in SQUARE_COEFFICIENTS:
        out.append((0, n, matches_printed(c0, square_coefficient(0, n))))
        out.append((2, n, matches_printed(c2, square_coefficient(2, n))))
    return out


def verify_gauss_jacobi():
    """Worst agreement in significant digits over the printed n = 20 rules."""
    from .quadmethods import gauss_jacobi_rule
    worst = math.inf
    for k, table in ((2, GAUSS_JACOBI_K2), (4, GAUSS_JACOBI_K4)):
        rule = gauss_jacobi_rule(20, k)
        for i, x, w in table:
            worst = min(worst, agreement(x, rule.x_x[i - 1]), agreement(w, rule.w_x[i - 1]))
    return worst


def verify_fourier():
    """[(m, N, regenerated, printed, ratio)] with ratio >= 1."""
    from .quadmethods import fourier_table
    out = []
    for (m, N), printed in sorted(FOURIER_DEVIATION.items()):
        got = fourier_table(m, N).max_deviation
        out.append((m, N, got, printed, max(got / printed, printed / got)))
    return out


def verify_salzer():
    """(pairing defect, worst relative defect of sum A_i p_i^-k = 1/Gamma(k), k = 1..16)."""
    from .salzer import salzer_rule
    rule = salzer_rule()
    worst = 0.0
    for k in range(1, 17):
        want = 1.0 / math.gamma(k)
        worst = max(worst, abs(rule.moment(k) - want) / want)
    return rule.pairing_defect(), worst


def square_exact(m: int, n: int) -> Fraction:
    """The coefficient regenerated from its definition, for display."""
    from .series import square_coefficient
    return square_coefficient(m, n)


def as_decimal(x, digits: int = 28) -> str:
    return xprec.to_decimal_string(x, digits)
