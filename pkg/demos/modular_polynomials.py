"""Build a few modular polynomials and look at their diagonals.

Run with ``python demos/modular_polynomials.py``.
"""

from hauptraces import build_modular_polynomial, diagonal, diagonal_quotient, square_root_if_perfect


def show(n, N):
    P = build_modular_polynomial(n, N)
    print(f"Phi_{n} for Gamma_0({N}): X-degree {P.x_degree}, Y-degree {P.y_degree}")
    if P.x_degree <= 4:
        for i, row in enumerate(P.coeffs):
            print(f"  X^{i}: {list(row)}")
    if square_root_if_perfect(n) is None:
        d = diagonal(P)
        print(f"  Phi(X, X) has degree {len(d) - 1} and leading coefficient {d[-1]}")
    else:
        d = diagonal_quotient(P)
        print(f"  (Phi/(X - Y))(X, X) has degree {len(d) - 1} and leading coefficient {d[-1]}")


if __name__ == "__main__":
    for n, N in [(1, 2), (2, 3), (3, 2), (4, 3), (6, 5), (9, 2)]:
        show(n, N)
