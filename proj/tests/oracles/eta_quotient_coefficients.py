"""Independent integer power-series oracle for the eta quotients used by the tests.

Works in the variable x = q^(1/3) with plain integer lists, so it shares no
code with the C++ series arithmetic.

    h = eta(3t)^3 eta(t)^-9          = sum h_k q^k
    g = eta(t/3)^3 eta(t)^-9         = q^(-1/3) sum g_k x^k
"""
N = 40  # terms in x


def euler_product(step, n=N):
    """prod_{m>=1} (1 - x^(step*m)) truncated to n terms."""
    p = [0] * n
    p[0] = 1
    m = 1
    while step * m < n:
        d = step * m
        for i in range(n - 1, d - 1, -1):
            p[i] -= p[i - d]
        m += 1
    return p


def mul(a, b):
    out = [0] * N
    for i, x in enumerate(a):
        if x:
            for j in range(N - i):
                out[i + j] += x * b[j]
    return out


def inv(a):
    assert a[0] == 1
    out = [0] * N
    out[0] = 1
    for k in range(1, N):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1))
    return out


def power(a, k):
    out = [1] + [0] * (N - 1)
    for _ in range(abs(k)):
        out = mul(out, a)
    return inv(out) if k < 0 else out


P1 = euler_product(3)   # prod (1 - q^m) in x = q^(1/3)
P3 = euler_product(9)   # prod (1 - q^(3m))
Pthird = euler_product(1)  # prod (1 - q^(m/3))
h = mul(power(P3, 3), power(P1, -9))
g = mul(power(Pthird, 3), power(P1, -9))
print("h (q^0, q^1, ...):", [h[3 * k] for k in range(8)])
print("g (x^0 = q^-1/3, x^1, ...):", g[:16])
f2 = [g[k] + (3 * h[k - 1] if k >= 1 and (k - 1) % 3 == 0 else 0) for k in range(16)]
print("f2 (x^0 = q^-1/3, ...):", f2)
print("restrict(g,0) at q^0, q^1, q^2:", [g[1 + 3 * k] for k in range(4)])
