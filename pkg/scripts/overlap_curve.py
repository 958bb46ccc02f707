"""Overlap of two momentum eigenstates against eta - eta'.

Writes CSV data (no plotting backend).  Columns: delta, the literal sinc
kernel, the quadrature overlap (real and imaginary parts) and the exact
closed form derived from the same integral.  Plot ``overlap_closed`` and
``overlap_quadrature`` against ``delta`` to compare the two curves.

    python3 scripts/overlap_curve.py --tau 1 --out overlap.csv
"""

import argparse
import sys

import numpy as np

from maxlenqm import DeformationParams, ThetaChart, build_grid, overlap_closed_form, overlap_exact
from maxlenqm.states import eigenstate_amplitude


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tau", type=float, default=1.0)
    ap.add_argument("--hbar", type=float, default=1.0)
    ap.add_argument("--spacings", type=float, default=7.0, help="half-width in units of tau hbar sqrt3 / 2")
    ap.add_argument("--samples", type=int, default=561)
    ap.add_argument("--out")
    args = ap.parse_args()

    params = DeformationParams(args.tau, args.hbar)
    grid = build_grid(ThetaChart(params))
    unit = params.tau * params.hbar * np.sqrt(3) / 2
    deltas = np.linspace(-args.spacings * unit, args.spacings * unit, args.samples)
    quad = eigenstate_amplitude(params) ** 2 * grid.hbar * (np.exp(1j * np.outer(deltas, grid.nodes)) @ grid.weights)
    exact = overlap_exact(deltas, 0.0, params)
    closed = overlap_closed_form(deltas, 0.0, params)

    lines = ["delta,overlap_closed,overlap_quadrature,overlap_quadrature_imag,overlap_exact,overlap_exact_imag"]
    for row in zip(deltas, closed, quad.real, quad.imag, exact.real, exact.imag):
        lines.append(",".join("%.17g" % v for v in row))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"max |quadrature - exact| = {np.max(np.abs(quad - exact)):.2e}", file=sys.stderr)
    print(f"max |quadrature - literal kernel| = {np.max(np.abs(quad - closed)):.2e}", file=sys.stderr)


if __name__ == "__main__":
    main()
