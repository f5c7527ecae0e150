#!/usr/bin/env python3
"""Solve an LP file written by `sukp export-lp` with HiGHS and print the optimum.

Usage: python3 scripts/solve_lp.py model.lp

Prints the integer objective value on stdout. Exits 1 if the model is not
solved to optimality.
"""
import sys

import highspy


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    if h.readModel(sys.argv[1]) != highspy.HighsStatus.kOk:
        print(f"cannot read {sys.argv[1]}", file=sys.stderr)
        return 1
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        print(f"solver status: {h.modelStatusToString(h.getModelStatus())}", file=sys.stderr)
        return 1
    print(round(h.getInfo().objective_function_value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
