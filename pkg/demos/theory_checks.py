"""Run the Monte-Carlo verification battery at demo scale.

The same battery backs the `covest theory_checks` command; every check
reports its estimate and the tolerance it was held to, and scaling the rep
count only tightens or loosens those tolerances.
"""

from covest.experiments import make_config, run_theory_checks

config = make_config("theory_checks", {"reps": 5000, "master_seed": 11})
report = run_theory_checks(config)

width = max(len(c["name"]) for c in report["checks"])
for check in report["checks"]:
    details = {
        k: v for k, v in check.items() if k not in ("name", "passed", "seed")
    }
    shown = ", ".join(
        f"{k}={v:.5g}" if isinstance(v, float) else f"{k}={v}" for k, v in details.items()
    )
    verdict = "pass" if check["passed"] else "FAIL"
    print(f"{check['name']:<{width}}  {verdict}  {shown}")

print(f"\nall passed: {report['all_passed']} (reps={config.reps})")
