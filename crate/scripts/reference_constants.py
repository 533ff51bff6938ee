"""High-precision reference values used as fixtures by the verification suite.

Each value is an integral of f(sin x) over [0, pi/2] or a classical constant,
computed independently of the Rust code with mpmath at 40 digits.

    python3 scripts/reference_constants.py
"""

from mpmath import mp, mpf, besselj, besseli, struveh, struvel, catalan, pi, quad, atan, log, asinh, sin, tan, sec, sech, sinh

mp.dps = 40


def integral(f):
    return quad(lambda x: f(sin(x)), [0, pi / 2])


VALUES = {
    "half_pi_j0_1": pi / 2 * besselj(0, 1),
    "half_pi_i0_1": pi / 2 * besseli(0, 1),
    "half_pi_struve_h0_1": pi / 2 * struveh(0, 1),
    "half_pi_struve_l0_1": pi / 2 * struvel(0, 1),
    "pi_squared_over_8": pi**2 / 8,
    "pi_squared_over_6": pi**2 / 6,
    "catalan": +catalan,
    "twice_catalan": 2 * catalan,
    "x_cot_x": integral(lambda u: u / tan(u) if u else mpf(1)),
    "arctan": integral(atan),
    "tan": integral(tan),
    "x_over_sin_x": integral(lambda u: u / sin(u) if u else mpf(1)),
    "x_over_sinh_x": integral(lambda u: u / sinh(u) if u else mpf(1)),
    "sec": integral(sec),
    "sech": integral(sech),
    # 1 - sin x = 2 sin^2(pi/4 - x/2) avoids the cancellation at pi/2
    "artanh": quad(lambda x: (log(1 + sin(x)) - log(2 * sin(pi / 4 - x / 2) ** 2)) / 2, [0, pi / 2]),
    "arsinh": integral(asinh),
}

if __name__ == "__main__":
    for name, value in VALUES.items():
        print(f"{name:22} {mp.nstr(value, 30)}")
