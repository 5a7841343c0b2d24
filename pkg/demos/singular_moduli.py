"""Walk through class numbers and traces of singular moduli at a few levels.

Run with ``python demos/singular_moduli.py``.
"""

from hauptraces import class_factor_data, class_number_H, enumerate_classes, omega, trace_t


def show(D, N):
    classes = sorted(enumerate_classes(D, N))
    print(f"D = {D}, N = {N}: {len(classes)} class(es) with N | a")
    for Q, value, err, w in class_factor_data(D, N).entries:
        print(f"  {Q}  omega = {w}  j_N(tau_Q) = {complex(value):.10g}  (err {float(err):.1e})")
    t, err = trace_t(D, N)
    print(f"  H = {class_number_H(D, N)}, t = {t}  (pre-rounding err {float(err):.1e})")


if __name__ == "__main__":
    for D, N in [(-4, 2), (-3, 3), (-4, 5), (-3, 2), (-4, 4), (-12, 2), (-23, 13)]:
        show(D, N)
    # an elliptic class has omega > 1 and contributes with weight 1/omega
    print("omega of 5x^2 + 4xy + y^2 at level 5:", omega(next(iter(enumerate_classes(-4, 5))), 5))
