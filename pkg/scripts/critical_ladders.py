#!/usr/bin/env python3
"""Energy ladders: gradient-found critical values against the reflection
enumeration, with Hessian indices and basin populations."""

import argparse

import numpy as np

from rspacelab import atlas, orbit as ob

ORBITS = [("grassmann_real", (1, 1)),
          ("grassmann_complex_hermitian", (1, 1)),
          ("sphere", (2,)),
          ("sphere", (3,)),
          ("grassmann_real", (1, 2))]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--restarts", type=int, default=50)
    args = ap.parse_args()

    for rid, params in ORBITS:
        s = atlas.instantiate(atlas.descriptor(rid, *params))
        st = ob.structure(s)
        clusters = ob.find_critical_points(s, restarts=args.restarts,
                                           seed=args.seed)
        rpt = ob.critical_gap_report(s, clusters=clusters)
        predicted = ob.weyl_critical_values(s)
        print(f"{s.descriptor.label}  (rank {st.rank_nc})")
        print(f"  predicted ladder: "
              f"{', '.join(f'{v / np.pi:+.3f}*pi' for v in predicted)}")
        for c in sorted(clusters, key=lambda c: c.value):
            print(f"  value {c.value / np.pi:+.3f}*pi  index {c.hessian_index}"
                  f"  basin {c.population}/{args.restarts}")
        print(f"  max gap {rpt['max_gap'] / np.pi:.3f}*pi"
              f"  ({rpt['max_gap'] / (4 * np.pi):.3f} of 4*pi),"
              f"  lowest step {rpt['smin_gap'] / np.pi:.3f}*pi")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
