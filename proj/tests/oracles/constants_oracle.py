"""Independent high-precision oracle for the frozen constants used in the C++ tests.

Run with: python3 tests/oracles/constants_oracle.py
Uses mpmath (zeta functions, Euler gamma) and sympy (primes, totient); it shares
no code with the C++ implementation.
"""
from fractions import Fraction
import mpmath as mp
from sympy import primerange, totient, factorint

mp.mp.prec = 200


def dcut_logpow(n, eps):
    return max(1, int(mp.floor(mp.log(n) ** eps)))


def squarefree_phi_sum(cut):
    total = mp.mpf(0)
    for l in range(1, cut + 1):
        f = factorint(l)
        if any(e > 1 for e in f.values()):
            continue
        phi = 1
        for p in f:
            phi *= p - 1
        total += mp.mpf(1) / phi
    return total


def main():
    print("zeta(2)zeta(3)/zeta(6) =", mp.nstr(mp.zeta(2) * mp.zeta(3) / mp.zeta(6), 20))
    prod = mp.mpf(1)
    for p in primerange(2, 10**6 + 1):
        prod *= 1 + mp.mpf(1) / (p * (p - 1))
    print("zeta_ratio_partial(1e6) =", mp.nstr(prod, 20))
    mert = mp.mpf(1)
    for p in primerange(2, 10**6 + 1):
        mert *= 1 - mp.mpf(1) / p
    print("mertens(1e6)*ln(1e6) =", mp.nstr(mert * mp.log(10**6), 20),
          " e^-gamma =", mp.nstr(mp.exp(-mp.euler), 20))
    for D in (10**2, 10**3, 10**4, 10**5):
        print("sqfree_phi_sum(%d) - ln D =" % D, mp.nstr(squarefree_phi_sum(D) - mp.log(D), 15))
    print("dcut(1/2, 10000) =", dcut_logpow(10000, mp.mpf(1) / 2),
          " dcut(1/2, 100) =", dcut_logpow(100, mp.mpf(1) / 2))
    block = sum(mp.mpf(1) / 2 / mp.log(n) for n in range(5, 17))
    print("block k=1 sum (1/2)/ln n, n=5..16 =", mp.nstr(block, 20))
    print("20/ln 20 =", mp.nstr(20 / mp.log(20), 20))
    # min phi(n)/n over [1e3, 1e5]
    best = min((Fraction(int(totient(n)), n), n) for n in range(1000, 100001))
    print("min phi(n)/n on [1e3,1e5] =", float(best[0]), "at n =", best[1])
    print("phi(510510)/510510 =", float(Fraction(int(totient(510510)), 510510)))


if __name__ == "__main__":
    main()
