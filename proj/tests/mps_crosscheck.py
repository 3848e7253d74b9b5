#!/usr/bin/env python3
"""Solve an exported MPS file with HiGHS and compare against an expected result.

Usage: mps_crosscheck.py MODEL.mps STATUS [OBJECTIVE]

STATUS is "optimal" or "infeasible". Exit codes: 0 agreement, 1 mismatch,
77 when highspy is not installed.
"""

import sys

REL_TOL = 1e-5


def main(argv):
    if len(argv) < 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    path, expected_status = argv[1], argv[2]
    try:
        import highspy
    except ImportError:
        print("highspy not available")
        return 77

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 1e-9)
    h.setOptionValue("mip_abs_gap", 1e-9)
    if h.readModel(path) != highspy.HighsStatus.kOk:
        print(f"HiGHS could not read {path}")
        return 1
    h.run()
    status = h.getModelStatus()
    if status == highspy.HighsModelStatus.kOptimal:
        found = "optimal"
    elif status in (highspy.HighsModelStatus.kInfeasible,
                    highspy.HighsModelStatus.kUnboundedOrInfeasible):
        found = "infeasible"
    else:
        found = h.modelStatusToString(status)

    if found != expected_status:
        print(f"status mismatch: HiGHS {found}, expected {expected_status}")
        return 1
    if found != "optimal":
        print(f"HiGHS {found}")
        return 0
    objective = h.getInfo().objective_function_value
    expected = float(argv[3])
    rel = abs(objective - expected) / max(1.0, abs(expected))
    print(f"HiGHS objective {objective:.9g}, expected {expected:.9g}, rel diff {rel:.3e}")
    return 0 if rel <= REL_TOL else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv))
