"""Reference values for the alpha = 0 Rayleigh basis on U = 1 - e^{-Y}.

J(Y) = int_1^Y (U - c)^{-2}, phi_- = (U - c)(J - M^2 Y), A = 1 - M^2 (U - c)^2,
I2(Y) = int_Y^inf (U - c) A^{-2} U', I1(Y) = int_0^Y phi_- A^{-2} U'.
Everything by direct adaptive quadrature at 30 digits.
"""
import mpmath as mp

mp.mp.dps = 30

U = lambda y: 1 - mp.exp(-y)
U1 = lambda y: mp.exp(-y)


def J(y, c):
    return mp.quad(lambda t: (U(t) - c) ** -2, [1, y])


def phi_minus(y, c, M):
    return (U(y) - c) * (J(y, c) - M * M * y)


def A(y, c, M):
    return 1 - M * M * (U(y) - c) ** 2


def I2(y, c, M):
    return mp.quad(lambda t: (U(t) - c) * A(t, c, M) ** -2 * U1(t), [y, y + 5, y + 20, mp.inf])


def I1(y, c, M):
    return mp.quad(lambda t: phi_minus(t, c, M) * A(t, c, M) ** -2 * U1(t), mp.linspace(0, y, 9))


CASES = [(mp.mpc(0, 0.05), 0.3), (mp.mpc(0.3, 0.05), 0.3), (mp.mpc(0.1, 0.02), 0.5)]

if __name__ == "__main__":
    for c, M in CASES:
        flat = [c.real, c.imag, M]
        for v in (J(3, c), phi_minus(0, c, M), I2(0.5, c, M), I1(2, c, M)):
            flat += [mp.re(v), mp.im(v)]
        print("{" + ", ".join(mp.nstr(v, 17) for v in flat) + "},")
