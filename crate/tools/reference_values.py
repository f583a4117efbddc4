"""Brute-force reference values frozen into the Rust unit tests.

Every quantity is evaluated directly from its defining product or series at
40 significant digits with mpmath, summing until the terms drop below 1e-45.
Run with `python3 tools/reference_values.py`.
"""
import mpmath as mp

mp.mp.dps = 40
EPS = mp.mpf(10) ** -45


def ln_gamma_q(x, q):
    x, q = mp.mpf(x), mp.mpf(q)
    s = (1 - x) * mp.log(1 - q)
    n = 0
    while True:
        t = mp.log(1 - q ** (n + 1)) - mp.log(1 - q ** (n + x))
        s += t
        if abs(t) < EPS and n > 10:
            return s
        n += 1


def psi_q_m(m, x, q):
    x, q = mp.mpf(x), mp.mpf(q)
    s, n = mp.mpf(0), 1
    while True:
        t = mp.mpf(n) ** m * q ** (n * x) / (1 - q ** n)
        s += t
        if t < EPS and n > 10:
            break
        n += 1
    if m == 0:
        return -mp.log(1 - q) + mp.log(q) * s
    return mp.log(q) ** (m + 1) * s


def psi_q(x, q):
    return psi_q_m(0, x, q)


def root(q):
    q = mp.mpf(q)
    lo, hi = mp.mpf(1), mp.mpf(2)
    while psi_q(lo, q) >= 0:
        lo /= 2
    while psi_q(hi, q) <= 0:
        hi *= 2
    for _ in range(120):
        mid = (lo + hi) / 2
        if psi_q(mid, q) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def dq(x, q):
    x, q = mp.mpf(x), mp.mpf(q)
    return -mp.log(q) * q ** x / (1 - q)


def thm_main(x, y, q):
    x, y, q = mp.mpf(x), mp.mpf(y), mp.mpf(q)
    shift = (q ** x - q ** y) / (1 - q)
    lo = y * (dq(y, q) + psi_q(y, q)) * mp.log(x / y) + shift
    up = x * (dq(x, q) + psi_q(x, q)) * mp.log(x / y) + shift
    return lo, ln_gamma_q(x, q) - ln_gamma_q(y, q), up


def thm_alpha(x, y, a, q):
    x, y, a, q = map(mp.mpf, (x, y, a, q))
    base = (y - x) + mp.log((x + a) / (y + a))
    lo = base + y * ((y + a - 1) / (y + a) + psi_q(y + a, q)) * mp.log(x / y)
    up = base + x * ((x + a - 1) / (x + a) + psi_q(x + a, q)) * mp.log(x / y)
    return lo, ln_gamma_q(x + a, q) - ln_gamma_q(y + a, q), up


def thm_mvt(x, y, q):
    x, y = mp.mpf(x), mp.mpf(y)
    return (x - y) * psi_q(y, q), ln_gamma_q(x, q) - ln_gamma_q(y, q), (x - y) * psi_q(x, q)


def keckic(x, y):
    x, y = mp.mpf(x), mp.mpf(y)
    r = mp.loggamma(x) - mp.loggamma(y)
    lo = (x - 1) * mp.log(x) - (y - 1) * mp.log(y) + y - x
    up = (x - 0.5) * mp.log(x) - (y - 0.5) * mp.log(y) + y - x
    return lo, r, up


def zhang(x, y):
    x, y = mp.mpf(x), mp.mpf(y)
    r = mp.loggamma(x) - mp.loggamma(y)
    base = x * mp.log(x) - y * mp.log(y) + y - x
    lo = base + y * (mp.digamma(y) - mp.log(y)) * mp.log(x / y)
    up = base + x * (mp.digamma(x) - mp.log(x)) * mp.log(x / y)
    return lo, r, up


def show(name, v):
    if isinstance(v, tuple):
        print(f"{name}: ln lower={mp.nstr(v[0], 20)} ln ratio={mp.nstr(v[1], 20)} ln upper={mp.nstr(v[2], 20)}")
    else:
        print(f"{name}: {mp.nstr(v, 20)}")


if __name__ == "__main__":
    show("sum q^n/(1-q^n) q=0.5", sum(mp.mpf(0.5) ** n / (1 - mp.mpf(0.5) ** n) for n in range(1, 200)))
    show("gamma_q(0.5, 0.5)", mp.exp(ln_gamma_q(0.5, 0.5)))
    show("gamma_q(1.5, 0.5)", mp.exp(ln_gamma_q(1.5, 0.5)))
    show("psi_q(1, 0.5)", psi_q(1, 0.5))
    show("psi_q(2, 0.5)", psi_q(2, 0.5))
    show("psi_q_m(1, 2, 0.5)", psi_q_m(1, 2, 0.5))
    show("psi_q_m(2, 2, 0.5)", psi_q_m(2, 2, 0.5))
    show("gamma_q euler q=0.999", -psi_q(1, 0.999))
    for q in (0.05, 0.1, 0.5, 0.9, 0.95):
        show(f"root q={q}", root(q))
    show("ln sqrt(pi)", mp.log(mp.sqrt(mp.pi)))
    show("digamma(0.5)", mp.digamma(0.5))
    show("euler gamma", mp.euler)
    show("ratio_gamma_q(2.5, 1.25, 0.4)", mp.exp(ln_gamma_q(2.5, 0.4) - ln_gamma_q(1.25, 0.4)))
    show("thm_main(2, 1, 0.5)", thm_main(2, 1, 0.5))
    show("thm_main(3, 1.5, 0.3)", thm_main(3, 1.5, 0.3))
    show("cor_half_shift(1, 0.5)", thm_main(2, 1.5, 0.5))
    show("cor_half_shift(0.5, 0.25)", thm_main(1.5, 1.0, 0.25))
    r = root(0.5)
    show("thm_alpha(2, 1, 2, 0.5)", thm_alpha(2, 1, 2, 0.5))
    show("thm_mvt(2, 1, 0.5)", thm_mvt(2, 1, 0.5))
    show("thm_mvt(5, 0.5, 0.8)", thm_mvt(5, 0.5, 0.8))
    show("cor_mu_lambda(2, 1.5, 0.25, 0.6)", thm_mvt(3.5, 2.25, 0.6))
    show("cor_one_half(1, 0.5)", thm_mvt(2, 1.5, 0.5))
    lo, ra, up = thm_mvt(3, 2.5, 0.3)
    b = mp.log((1 - mp.mpf(0.3) ** 2) / (1 - mp.mpf(0.3)))
    show("remark(2, 0.3)", (lo - b, ra - b, up - b))
    show("keckic(3, 2)", keckic(3, 2))
    show("keckic(5, 1.5)", keckic(5, 1.5))
    show("zhang(2, 1)", zhang(2, 1))
    show("zhang(0.5, 1.5)", zhang(0.5, 1.5))
