"""Round-trip error of the quasi-momentum transform versus the eta cutoff.

Prints one row per (state, tau, cutoff multiple); this is the study behind the
default cutoff of 80 tau hbar.

    python3 scripts/roundtrip_convergence.py
"""

import argparse

from maxlenqm import DeformationParams, EtaGrid, ThetaChart, build_grid, normalize, parse_state_spec
from maxlenqm.transforms import parseval_factor, parseval_limit, roundtrip_error

STATES = (
    "hermite:k=0,sigma=0.5",
    "hermite:k=1,sigma=0.6,center=0.3",
    "hermite:k=0,sigma=0.4,kick=0.5",
    "hermite:k=2,sigma=0.7,kick=1",
    "hermite:k=3,sigma=0.8",
    "theta:k=0,sigma=0.05",
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--taus", type=float, nargs="+", default=[0.1, 1.0])
    ap.add_argument("--mults", type=float, nargs="+", default=[10, 20, 40, 80, 160])
    ap.add_argument("--step-div", type=float, default=4.0)
    args = ap.parse_args()

    print(f"{'state':<36} {'tau':>5} {'mult':>6} {'error':>10} {'parseval':>10}")
    for tau in args.taus:
        params = DeformationParams(tau=tau)
        grid = build_grid(ThetaChart(params))
        for spec in STATES:
            psi = normalize(parse_state_spec(spec, params), grid)
            for mult in args.mults:
                eg = EtaGrid.default(params, mult, args.step_div)
                err = roundtrip_error(psi, eg, params, grid)
                pf = parseval_factor(psi, eg, params, grid) / parseval_limit(params) - 1
                print(f"{spec:<36} {tau:>5g} {mult:>6g} {err:>10.2e} {pf:>10.1e}")


if __name__ == "__main__":
    main()
