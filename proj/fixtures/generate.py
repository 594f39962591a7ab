"""Regenerates the tabulated fixtures (x,f CSV with header, 17 significant digits)."""
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def write(name, f, lo, hi, n):
    with open(os.path.join(HERE, name), "w") as out:
        out.write("x,f\n")
        for i in range(n):
            x = lo * (hi / lo) ** (i / (n - 1))
            out.write(f"{x:.17g},{f(x):.17g}\n")


write("x15.csv", lambda x: 4.0 * x**1.5, 1e-3, 1e2, 601)
write("x2.csv", lambda x: x**2, 1e-2, 10.0, 301)
write("perturbed.csv", lambda x: x * (1.0 + 0.1 * math.sin(math.log(x))), 1e-3, 1e2, 601)
