"""Export the fundamental region of Gamma_0(13) and list its elliptic points.

Run with ``python demos/fundamental_domain.py [outdir]``; writes gamma0_13.svg/.json.
"""

import os
import sys

from hauptraces import build_domain, elliptic_points, export_domain

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "."
    p = 13
    dom = build_domain(p)
    print(f"S_{p} = {list(dom.S_p)}")
    print(f"E2 = {sorted(dom.E2)}, E3 = {sorted(dom.E3)}")
    for order, pts in elliptic_points(p).items():
        for t in pts:
            print(f"  {order}: {t}")
    for fmt in ("svg", "json"):
        path = os.path.join(out, f"gamma0_{p}.{fmt}")
        with open(path, "w") as fh:
            fh.write(export_domain(p, fmt))
        print("wrote", path)
